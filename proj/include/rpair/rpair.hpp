#pragma once

#include "rpair/catalog.hpp"
#include "rpair/config.hpp"
#include "rpair/error.hpp"
#include "rpair/expr.hpp"
#include "rpair/geometry.hpp"
#include "rpair/jet.hpp"
#include "rpair/ode.hpp"
#include "rpair/optimize.hpp"
#include "rpair/quadrature.hpp"
#include "rpair/riccati.hpp"
#include "rpair/specfun.hpp"
#include "rpair/spectral.hpp"
#include "rpair/verifier.hpp"
