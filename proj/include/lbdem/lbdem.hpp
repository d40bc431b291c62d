#pragma once

// Umbrella header for the coupled lattice-Boltzmann / discrete-element
// particulate flow engine.

#include "lbdem/benchmarks.hpp"
#include "lbdem/config.hpp"
#include "lbdem/core.hpp"
#include "lbdem/dem.hpp"
#include "lbdem/driver.hpp"
#include "lbdem/forces.hpp"
#include "lbdem/grid.hpp"
#include "lbdem/kernel.hpp"
#include "lbdem/lattice.hpp"
#include "lbdem/lbm.hpp"
#include "lbdem/lubrication.hpp"
#include "lbdem/neighbor.hpp"
#include "lbdem/operators.hpp"
#include "lbdem/output.hpp"
#include "lbdem/packing.hpp"
#include "lbdem/scenarios.hpp"
#include "lbdem/units.hpp"
#include "lbdem/viscosity.hpp"
