#pragma once

#include <doctest.h>

#include "fastsda/fastsda.hpp"

namespace fastsda::test {

inline Matrix random_matrix(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
  return m;
}

inline Matrix random_spd(Index n, Rng& rng) {
  const Matrix g = random_matrix(n, n, rng);
  return g * g.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
}

inline double rel_diff(const Matrix& a, const Matrix& b) {
  const double s = std::max(a.norm(), b.norm());
  return s > 0.0 ? (a - b).norm() / s : 0.0;
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidArgument;
}

}  // namespace fastsda::test
