#pragma once

// Umbrella header for the full laboratory.

#include "singell/assembly.hpp"
#include "singell/checks.hpp"
#include "singell/config.hpp"
#include "singell/constants.hpp"
#include "singell/experiment.hpp"
#include "singell/exponents.hpp"
#include "singell/manufactured.hpp"
#include "singell/mesh.hpp"
#include "singell/norms.hpp"
#include "singell/picard.hpp"
#include "singell/problem.hpp"
#include "singell/report_io.hpp"
#include "singell/trace.hpp"
#include "singell/tridiagonal.hpp"
