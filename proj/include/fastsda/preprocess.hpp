#pragma once

#include "fastsda/linalg.hpp"

namespace fastsda {

struct Standardized {
  Matrix x;
  Vector mean;
  Vector scale;  // population standard deviation, 1 for constant features
};

Standardized standardize(const Matrix& x);
Matrix apply_standardization(const Matrix& x, const Vector& mean, const Vector& scale);
Matrix destandardize(const Matrix& x, const Vector& mean, const Vector& scale);

struct PcaResult {
  Matrix projection;   // D x D', orthonormal columns
  Matrix transformed;  // D' x N
  Vector mean;         // removed before projecting
  Vector eigenvalues;  // all retained-candidate eigenvalues, descending
};

/// Principal components of x (columns as samples) keeping the fewest leading
/// components whose variance reaches `energy` of the total. Components with
/// variance below 1e-10 of the largest are never kept.
PcaResult pca_reduce(const Matrix& x, double energy);

/// Standardisation followed by PCA, fitted once and applied to new data.
struct Preprocessor {
  Vector mean;
  Vector scale;
  Vector pca_mean;
  Matrix pca;  // empty when PCA is disabled

  static Preprocessor fit(const Matrix& x, double pca_energy);  // energy <= 0 disables PCA
  Matrix apply(const Matrix& x) const;
  Index input_dim() const { return mean.size(); }
  Index output_dim() const { return pca.size() == 0 ? mean.size() : pca.cols(); }
};

}  // namespace fastsda
