#pragma once

// Umbrella header.

#include "tilesim/assembly.hpp"
#include "tilesim/behaviour.hpp"
#include "tilesim/io.hpp"
#include "tilesim/metrics.hpp"
#include "tilesim/parallel.hpp"
#include "tilesim/polynomial.hpp"
#include "tilesim/predictor.hpp"
#include "tilesim/rng.hpp"
#include "tilesim/stats.hpp"
#include "tilesim/svg.hpp"
#include "tilesim/tiles.hpp"
