#pragma once

#include "revolve/types.hpp"

namespace revolve {

/// Nonnegative least squares  min |A x - b|  with x >= 0, by the
/// Lawson-Hanson active-set method.
Vector nnls(const Matrix& A, const Vector& b, int max_iter = 0);

}  // namespace revolve
