#pragma once

// Orthogonal space-time block codes as Euclidean codes: code-matrix
// construction, equivalent-code extraction and distance spectra, analytic
// error-rate bounds and exact formulas, spherical-code certificates, and a
// Rayleigh-fading Monte Carlo simulator.

#include "ostbc/catalog.hpp"
#include "ostbc/constellation.hpp"
#include "ostbc/design.hpp"
#include "ostbc/errors.hpp"
#include "ostbc/euclidean.hpp"
#include "ostbc/exact.hpp"
#include "ostbc/io.hpp"
#include "ostbc/linalg.hpp"
#include "ostbc/pep.hpp"
#include "ostbc/quadrature.hpp"
#include "ostbc/rankin.hpp"
#include "ostbc/rng.hpp"
#include "ostbc/simulate.hpp"
#include "ostbc/version.hpp"

namespace ostbc {}
