#pragma once

// Umbrella header for the delayed mixed-oligopoly library.

#include "cournot/bifurcation.hpp"
#include "cournot/dynamics.hpp"
#include "cournot/equilibria.hpp"
#include "cournot/errors.hpp"
#include "cournot/history.hpp"
#include "cournot/model.hpp"
#include "cournot/params.hpp"
#include "cournot/polynomial.hpp"
#include "cournot/spectral.hpp"
