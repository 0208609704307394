#pragma once

// Umbrella header: pulls in the whole library.

#include "rho/version.hpp"
#include "rho/rational.hpp"
#include "rho/rng.hpp"
#include "rho/matrix.hpp"
#include "rho/poly.hpp"
#include "rho/ensemble.hpp"
#include "rho/samplers.hpp"
#include "rho/exact.hpp"
#include "rho/laguerre.hpp"
#include "rho/quadrature.hpp"
#include "rho/asymptotics.hpp"
#include "rho/montecarlo.hpp"
#include "rho/verify.hpp"
#include "rho/io.hpp"
