#pragma once

#include "classic/errors.hpp"
#include "classic/scalar.hpp"
#include "classic/linear.hpp"
#include "classic/projective.hpp"
#include "classic/tangent.hpp"
#include "classic/geodesic.hpp"
#include "classic/connection.hpp"
#include "classic/transport.hpp"
#include "classic/complex_hyperbolic.hpp"
