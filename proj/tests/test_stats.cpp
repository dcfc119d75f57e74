#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "tilesim/rng.hpp"
#include "tilesim/stats.hpp"

using namespace tilesim;

TEST_CASE("mean and standard deviation", "[stats]") {
  const std::vector<double> xs = {2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0};
  const MeanStd ms = mean_std(xs);
  CHECK(ms.mean == Catch::Approx(5.0));
  CHECK(ms.std == Catch::Approx(2.13809).margin(1e-4));
  CHECK(mean_std(std::vector<double>{3.0}).std == 0.0);
}

TEST_CASE("ordinary least squares", "[stats]") {
  // y = 3 - 2x exactly
  std::vector<double> xs, ys;
  for (int i = 0; i < 10; ++i) {
    xs.push_back(i);
    ys.push_back(3.0 - 2.0 * i);
  }
  const LinearFit fit = ols_fit(xs, ys);
  CHECK(fit.slope == Catch::Approx(-2.0));
  CHECK(fit.intercept == Catch::Approx(3.0));
  CHECK(fit.stderr_slope == Catch::Approx(0.0).margin(1e-12));
  CHECK(fit.r_squared == Catch::Approx(1.0));

  // Known small example with noise.
  const std::vector<double> nx = {1, 2, 3, 4, 5};
  const std::vector<double> ny = {2.1, 3.9, 6.2, 7.8, 10.1};
  const LinearFit noisy = ols_fit(nx, ny);
  CHECK(noisy.slope == Catch::Approx(1.99).margin(0.005));
  CHECK(noisy.r_squared > 0.995);
  CHECK(noisy.stderr_slope > 0.0);

  CHECK_THROWS_AS(ols_fit(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ols_fit(std::vector<double>{1, 1, 1}, std::vector<double>{1, 2, 3}),
                  std::invalid_argument);
}

TEST_CASE("pearson correlation", "[stats]") {
  const std::vector<double> xs = {1, 2, 3, 4, 5, 6};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(10.0 - 3.0 * x);
  CHECK(pearson(xs, ys) == Catch::Approx(-1.0));
  const std::vector<double> zs = {2.0, 1.0, 4.0, 3.0, 6.0, 5.0};
  CHECK(pearson(xs, zs) == Catch::Approx(0.828571).margin(1e-4));
}

TEST_CASE("mann-kendall trend", "[stats]") {
  std::vector<double> rising, flat;
  Rng rng(7);
  for (int i = 0; i < 11; ++i) {
    rising.push_back(0.1 * i + 0.01 * rng.uniform());
    flat.push_back(0.5 + 0.01 * rng.uniform());
  }
  CHECK(mann_kendall_z(rising) > 2.576);
  CHECK(std::abs(mann_kendall_z(flat)) < 2.576);
  std::vector<double> falling(rising.rbegin(), rising.rend());
  CHECK(mann_kendall_z(falling) < -2.576);
}

TEST_CASE("two-sample chi-square", "[stats]") {
  // Identical samples give statistic 0.
  const std::vector<std::uint64_t> a = {100, 200, 300};
  const auto same = chi_square_two_sample(a, a);
  CHECK(same.statistic == Catch::Approx(0.0));
  CHECK(same.dof == 2);

  // Clearly different distributions give a large statistic.
  const std::vector<std::uint64_t> b = {300, 200, 100};
  CHECK(chi_square_two_sample(a, b).statistic > 100.0);

  // Sparse categories merge.
  const std::vector<std::uint64_t> c = {1000, 2, 1};
  const std::vector<std::uint64_t> d = {1000, 1, 3};
  CHECK(chi_square_two_sample(c, d).dof == 1);
}

TEST_CASE("chi-square tail probabilities", "[stats]") {
  // Reference values from standard tables.
  CHECK(chi_square_upper_tail(3.841, 1) == Catch::Approx(0.05).margin(5e-4));
  CHECK(chi_square_upper_tail(21.666, 9) == Catch::Approx(0.01).margin(5e-4));
  CHECK(chi_square_upper_tail(0.0, 4) == Catch::Approx(1.0));
  CHECK(chi_square_upper_tail(100.0, 4) < 1e-10);

  SECTION("calibration: chi-square of same-law samples is uniform-ish") {
    // Two samples from one categorical law should rarely reject.
    Rng rng(123);
    const std::vector<double> probs = {0.42, 0.3, 0.2, 0.08};
    int rejections = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<std::uint64_t> x(probs.size(), 0), y(probs.size(), 0);
      for (int i = 0; i < 2000; ++i) {
        auto draw = [&] {
          double u = rng.uniform();
          for (std::size_t k = 0; k < probs.size(); ++k) {
            if (u < probs[k]) return k;
            u -= probs[k];
          }
          return probs.size() - 1;
        };
        ++x[draw()];
        ++y[draw()];
      }
      const auto cs = chi_square_two_sample(x, y);
      rejections += chi_square_upper_tail(cs.statistic, cs.dof) < 0.01 ? 1 : 0;
    }
    CHECK(rejections <= 8);  // expect about 2 of 200
  }
}
