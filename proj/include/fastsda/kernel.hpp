#pragma once

#include "fastsda/linalg.hpp"
#include "fastsda/rng.hpp"

namespace fastsda {

enum class KernelMode { Exact, Approximate };
enum class PrototypeStrategy { RandomTrain, KMeansAll };

/// How the r x N prototype kernel is centred in approximate mode.
///   None: used as computed. The RBF kernel depends on differences only, so
///         centring the inputs beforehand changes nothing.
///   PrototypeMean: feature-space centring with statistics of the prototype
///         kernel; with prototypes equal to the training set this is exactly
///         the double centring of the exact pipeline.
enum class ApproxCentering { None, PrototypeMean };

struct KernelConfig {
  double sigma = 0.0;  // <= 0 means "mean pairwise training distance" in model builders
  KernelMode mode = KernelMode::Exact;
  Index prototype_count = 0;
  PrototypeStrategy prototype_strategy = PrototypeStrategy::RandomTrain;
  ApproxCentering approx_centering = ApproxCentering::None;
};

/// Row means and grand mean of the (uncentred) reference kernel.
struct CenteringStats {
  Vector row_means;
  double grand_mean = 0.0;
};

struct CenteredKernel {
  Matrix k;
  CenteringStats stats;
};

/// exp(-|a_i - b_j|^2 / (2 sigma^2)) for columns a_i, b_j.
Matrix rbf_kernel(const Matrix& a, const Matrix& b, double sigma);

/// Mean Euclidean distance over all unordered column pairs.
double mean_distance_sigma(const Matrix& x);

CenteringStats centering_stats(const Matrix& k);

/// (I - E) K (I - E), E = 11'/N, and the statistics needed for new columns.
CenteredKernel center_kernel(const Matrix& k);

/// Column j becomes (I - E)(k_j - row_means).
Matrix center_test_columns(const Matrix& k_test, const CenteringStats& stats);

/// random-train: r distinct training columns; kmeans-all: r k-means centres.
Matrix select_prototypes(const Matrix& x, const KernelConfig& cfg, Rng& rng);

}  // namespace fastsda
