#include "fastsda/kernel.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "fastsda/clustering.hpp"
#include "fastsda/error.hpp"

namespace fastsda {

Matrix rbf_kernel(const Matrix& a, const Matrix& b, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::NonpositiveSigma, "sigma must be positive, got " + std::to_string(sigma));
  }
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "kernel inputs have " + std::to_string(a.rows()) +
                                              " and " + std::to_string(b.rows()) + " features");
  }
  const double scale = -1.0 / (2.0 * sigma * sigma);
  Matrix k(a.cols(), b.cols());
  for (Index j = 0; j < b.cols(); ++j)
    for (Index i = 0; i < a.cols(); ++i) k(i, j) = std::exp(scale * (a.col(i) - b.col(j)).squaredNorm());
  return k;
}

double mean_distance_sigma(const Matrix& x) {
  const Index n = x.cols();
  if (n < 2) throw Error(ErrorCode::TooFewSamples, "mean distance needs at least two samples");
  double total = 0.0;
  for (Index j = 1; j < n; ++j)
    for (Index i = 0; i < j; ++i) total += (x.col(i) - x.col(j)).norm();
  return total / (0.5 * static_cast<double>(n) * static_cast<double>(n - 1));
}

CenteringStats centering_stats(const Matrix& k) {
  CenteringStats s;
  s.row_means = k.rowwise().mean();
  s.grand_mean = s.row_means.mean();
  return s;
}

Matrix center_test_columns(const Matrix& k_test, const CenteringStats& stats) {
  if (k_test.rows() != stats.row_means.size()) {
    throw Error(ErrorCode::ShapeMismatch, "test kernel has " + std::to_string(k_test.rows()) +
                                              " rows, reference has " +
                                              std::to_string(stats.row_means.size()));
  }
  Matrix out = k_test.colwise() - stats.row_means;
  out.rowwise() -= out.colwise().mean();
  return out;
}

CenteredKernel center_kernel(const Matrix& k) {
  if (k.rows() != k.cols() || !is_symmetric(k)) {
    throw Error(ErrorCode::NotSymmetric, "center_kernel needs a symmetric matrix");
  }
  CenteredKernel out;
  out.stats = centering_stats(k);
  // Same arithmetic as for new columns, so training columns centre identically.
  out.k = center_test_columns(k, out.stats);
  return out;
}

Matrix select_prototypes(const Matrix& x, const KernelConfig& cfg, Rng& rng) {
  const Index r = cfg.prototype_count;
  if (r < 1 || r > x.cols()) {
    throw Error(ErrorCode::RTooLarge, "prototype count " + std::to_string(r) + " outside [1, " +
                                          std::to_string(x.cols()) + "]");
  }
  if (cfg.prototype_strategy == PrototypeStrategy::KMeansAll) {
    return kmeans(x, static_cast<int>(r), rng).centers;
  }
  std::vector<Index> idx(static_cast<std::size_t>(x.cols()));
  std::iota(idx.begin(), idx.end(), Index{0});
  rng.shuffle(idx);
  Matrix out(x.rows(), r);
  for (Index j = 0; j < r; ++j) out.col(j) = x.col(idx[static_cast<std::size_t>(j)]);
  return out;
}

}  // namespace fastsda
