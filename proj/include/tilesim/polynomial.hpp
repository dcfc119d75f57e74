#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tilesim {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Dense univariate polynomial with exact rational coefficients, indexed by
// power. Exactness matters: root isolation for the analytical predictor must
// not misclassify signs near the root.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Rational constant) : c_{std::move(constant)} { trim(); }
  explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly constant(long v) { return Poly(Rational(v)); }
  // 1 - f and f: the two tile-type draw probabilities.
  static Poly one_minus_f() { return Poly(std::vector<Rational>{1, -1}); }
  static Poly f() { return Poly(std::vector<Rational>{0, 1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coefficient(std::size_t power) const {
    return power < c_.size() ? c_[power] : Rational(0);
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return Poly(std::move(out));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
  Poly operator-() const {
    Poly out = *this;
    for (auto& v : out.c_) v = -v;
    return out;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(out));
  }
  friend Poly operator*(const Poly& a, const Rational& s) {
    Poly out = a;
    for (auto& v : out.c_) v *= s;
    out.trim();
    return out;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rational> c_;
};

inline Poly derivative(const Poly& p) {
  const auto& c = p.coefficients();
  if (c.size() < 2) return {};
  std::vector<Rational> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) out[i - 1] = c[i] * Rational(i);
  return Poly(std::move(out));
}

// Euclidean division: returns (quotient, remainder).
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("polynomial division by zero");
  std::vector<Rational> rem = a.coefficients();
  std::vector<Rational> quot(rem.size() > b.coefficients().size()
                                 ? rem.size() - b.coefficients().size() + 1
                                 : 1,
                             Rational(0));
  const auto& d = b.coefficients();
  while (rem.size() >= d.size() && !rem.empty()) {
    const Rational factor = rem.back() / d.back();
    const std::size_t shift = rem.size() - d.size();
    quot[shift] = factor;
    for (std::size_t i = 0; i < d.size(); ++i) rem[shift + i] -= factor * d[i];
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
  }
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

// Monic polynomial gcd over the rationals.
inline Poly poly_gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a * (Rational(1) / a.coefficients().back());
}

// Number of sign changes of the Sturm chain at x.
namespace detail {
inline int sturm_variations(const std::vector<Poly>& chain, const Rational& x) {
  int variations = 0, last = 0;
  for (const Poly& p : chain) {
    const Rational v = p(x);
    const int s = v > 0 ? 1 : v < 0 ? -1 : 0;
    if (s != 0) {
      if (last != 0 && s != last) ++variations;
      last = s;
    }
  }
  return variations;
}
}  // namespace detail

// Exact count of distinct real roots of p in the open interval (0, 1).
inline int count_roots_open01(const Poly& p) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  // Square-free part, so the Sturm count gives distinct roots.
  const Poly g = poly_gcd(p, derivative(p));
  const Poly q = g.degree() > 0 ? divmod(p, g).first : p;
  if (q.degree() == 0) return 0;
  std::vector<Poly> chain{q, derivative(q)};
  while (!chain.back().is_zero()) chain.push_back(-divmod(chain[chain.size() - 2], chain.back()).second);
  chain.pop_back();
  int count = detail::sturm_variations(chain, 0) - detail::sturm_variations(chain, 1);
  if (q(Rational(1)) == 0) --count;  // V(0) - V(1) counts roots in (0, 1]
  return count;
}

// Bisect the unique sign change of p in (0, 1) down to `width`, with exact
// sign evaluation at rational midpoints. Requires p(0) and p(1) nonzero and
// of opposite sign.
inline double bisect_root01(const Poly& p, double width = 1e-6) {
  Rational lo = 0, hi = 1;
  const Rational p0 = p(lo), p1 = p(hi);
  if (p0 == 0 || p1 == 0) throw std::invalid_argument("root at interval boundary");
  if ((p0 > 0) == (p1 > 0)) throw std::invalid_argument("no sign change over (0,1)");
  const bool lo_negative = p0 < 0;
  for (int iter = 0; iter < 64; ++iter) {
    const Rational mid = (lo + hi) / 2;
    const Rational v = p(mid);
    if (v == 0) return static_cast<double>(mid);
    if ((v < 0) == lo_negative)
      lo = mid;
    else
      hi = mid;
    if (static_cast<double>(hi - lo) < width) break;
  }
  return static_cast<double>((lo + hi) / 2);
}

// Scale a rational-coefficient polynomial to primitive integer coefficients
// (common denominator cleared, content divided out); the sign is preserved.
inline std::vector<BigInt> primitive_integer_coefficients(const Poly& p) {
  if (p.is_zero()) return {};
  BigInt common_den = 1;
  for (const Rational& c : p.coefficients())
    common_den = boost::multiprecision::lcm(common_den, boost::multiprecision::denominator(c));
  std::vector<BigInt> out;
  BigInt content = 0;
  for (const Rational& c : p.coefficients()) {
    const Rational scaled = c * Rational(common_den);
    out.push_back(boost::multiprecision::numerator(scaled));
    content = boost::multiprecision::gcd(content, out.back());
  }
  if (content > 1)
    for (auto& v : out) v /= content;
  return out;
}

// Ratio of polynomials, kept reduced. Denominators produced by the predictor
// are strictly positive on (0, 1); reduce() normalizes the sign so the
// denominator is positive at f = 1/2.
struct RationalFn {
  Poly num;
  Poly den = Poly::constant(1);

  static RationalFn constant(long v) { return {Poly::constant(v), Poly::constant(1)}; }

  void reduce() {
    if (num.is_zero()) {
      den = Poly::constant(1);
      return;
    }
    const Poly g = poly_gcd(num, den);
    if (g.degree() > 0) {
      num = divmod(num, g).first;
      den = divmod(den, g).first;
    }
    // scale so den is monic, then fix the sign at the interval midpoint
    const Rational lead = den.coefficients().back();
    num = num * (Rational(1) / lead);
    den = den * (Rational(1) / lead);
    if (den(Rational(1, 2)) < 0) {
      num = -num;
      den = -den;
    }
  }

  Rational operator()(const Rational& x) const {
    const Rational d = den(x);
    if (d == 0) throw std::domain_error("rational function pole");
    return num(x) / d;
  }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    RationalFn out{a.num * b.den + b.num * a.den, a.den * b.den};
    out.reduce();
    return out;
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    RationalFn out{a.num * b.num, a.den * b.den};
    out.reduce();
    return out;
  }
};

}  // namespace tilesim
