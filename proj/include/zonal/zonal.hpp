#pragma once

// Umbrella header.

#include "zonal/abel_poisson.hpp"
#include "zonal/cli.hpp"
#include "zonal/localization.hpp"
#include "zonal/qrational.hpp"
#include "zonal/qseries.hpp"
#include "zonal/quadrature.hpp"
#include "zonal/special_functions.hpp"
#include "zonal/verify.hpp"
