#pragma once
// Umbrella header: self-adjoint Schroedinger and Dirac Hamiltonians in the
// magnetic-solenoid and Aharonov-Bohm fields.

#include "core.hpp"
#include "specfun.hpp"
#include "roots.hpp"
#include "ab_radial.hpp"
#include "ms_radial.hpp"
#include "dirac_radial.hpp"
#include "verify.hpp"
#include "assembly.hpp"
#include "suites.hpp"
