#pragma once

#include "bandfit/approximator.hpp"
#include "bandfit/error.hpp"
#include "bandfit/gram.hpp"
#include "bandfit/quadrature.hpp"
#include "bandfit/random.hpp"
#include "bandfit/serialization.hpp"
#include "bandfit/signal.hpp"
#include "bandfit/sinc_basis.hpp"
#include "bandfit/solver.hpp"
#include "bandfit/special.hpp"
#include "bandfit/stream.hpp"
