#pragma once

// Umbrella header for the polync library.

#include "polync/core.hpp"
#include "polync/exact.hpp"
#include "polync/complex.hpp"
#include "polync/coloring.hpp"
#include "polync/geometry.hpp"
#include "polync/slabs.hpp"
#include "polync/lattice.hpp"
#include "polync/resolution.hpp"
#include "polync/monodromy.hpp"
#include "polync/generators.hpp"
#include "polync/json_io.hpp"
#include "polync/report.hpp"
