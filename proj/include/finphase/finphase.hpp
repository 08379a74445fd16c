#pragma once

// Umbrella header for the library modules.

#include "finphase/coherent_states.hpp"
#include "finphase/dynamics.hpp"
#include "finphase/errors.hpp"
#include "finphase/finite_algebra.hpp"
#include "finphase/mapping_kernel.hpp"
#include "finphase/theta.hpp"
#include "finphase/uncertainty.hpp"
