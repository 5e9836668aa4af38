#pragma once

#include "wiretwist/doe.hpp"
#include "wiretwist/errors.hpp"
#include "wiretwist/geometry.hpp"
#include "wiretwist/oracle.hpp"
#include "wiretwist/quadrature.hpp"
#include "wiretwist/stiffness.hpp"
#include "wiretwist/torque.hpp"

namespace wiretwist {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace wiretwist
