#include "fastsda/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

Standardized standardize(const Matrix& x) {
  Standardized out;
  out.mean = x.rowwise().mean();
  const Matrix centered = x.colwise() - out.mean;
  out.scale = (centered.array().square().rowwise().sum() / static_cast<double>(x.cols())).sqrt();
  for (Index i = 0; i < out.scale.size(); ++i)
    if (!(out.scale[i] > 0.0)) out.scale[i] = 1.0;
  out.x = centered.array().colwise() / out.scale.array();
  return out;
}

Matrix apply_standardization(const Matrix& x, const Vector& mean, const Vector& scale) {
  if (x.rows() != mean.size()) {
    throw Error(ErrorCode::ShapeMismatch, "standardisation fitted on " +
                                              std::to_string(mean.size()) + " features, got " +
                                              std::to_string(x.rows()));
  }
  return (x.colwise() - mean).array().colwise() / scale.array();
}

Matrix destandardize(const Matrix& x, const Vector& mean, const Vector& scale) {
  return (x.array().colwise() * scale.array()).matrix().colwise() + mean;
}

PcaResult pca_reduce(const Matrix& x, double energy) {
  if (!(energy > 0.0 && energy <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "PCA energy must lie in (0, 1]");
  }
  PcaResult out;
  out.mean = x.rowwise().mean();
  const Matrix xc = x.colwise() - out.mean;
  const Index d = x.rows();
  const Index n = x.cols();

  // Eigenvectors of the smaller of the two Gram matrices.
  Matrix basis;
  Vector values;
  if (d <= n) {
    const EigenResult e = symmetric_eig(xc * xc.transpose());
    basis = e.vectors;
    values = e.values;
  } else {
    const EigenResult e = symmetric_eig(xc.transpose() * xc);
    values = e.values;
    basis = xc * e.vectors;
    for (Index j = 0; j < basis.cols(); ++j) {
      const double norm = basis.col(j).norm();
      if (norm > 0.0) basis.col(j) /= norm;
    }
  }
  const double top = values.size() > 0 ? values[0] : 0.0;
  if (!(top > 0.0)) throw Error(ErrorCode::DegenerateData, "data has zero variance");

  Index candidates = 0;
  while (candidates < values.size() && values[candidates] > kLinalg.rank_threshold * top)
    ++candidates;
  candidates = std::min(candidates, std::max<Index>(n - 1, 1));
  out.eigenvalues = values.head(candidates);
  const double total = out.eigenvalues.sum();

  Index keep = 0;
  double acc = 0.0;
  while (keep < candidates) {
    acc += out.eigenvalues[keep++];
    if (acc >= energy * total * (1.0 - 1e-12)) break;
  }
  out.projection = basis.leftCols(keep);
  out.transformed = out.projection.transpose() * xc;
  return out;
}

Preprocessor Preprocessor::fit(const Matrix& x, double pca_energy) {
  Preprocessor p;
  const Standardized s = standardize(x);
  p.mean = s.mean;
  p.scale = s.scale;
  if (pca_energy > 0.0) {
    const PcaResult pca = pca_reduce(s.x, pca_energy);
    p.pca_mean = pca.mean;
    p.pca = pca.projection;
  }
  return p;
}

Matrix Preprocessor::apply(const Matrix& x) const {
  Matrix z = apply_standardization(x, mean, scale);
  if (pca.size() == 0) return z;
  return pca.transpose() * (z.colwise() - pca_mean);
}

}  // namespace fastsda
