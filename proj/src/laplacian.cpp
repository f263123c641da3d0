#include "fastsda/laplacian.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

void require_oracle_size(Index n) {
  if (n > kOracleSizeCap) {
    throw Error(ErrorCode::OracleTooLarge, "Laplacian of size " + std::to_string(n) +
                                               " exceeds the oracle cap " +
                                               std::to_string(kOracleSizeCap));
  }
}

void require_same_samples(const Matrix& x, const LabelLayout& layout) {
  if (x.cols() != layout.n_samples()) {
    throw Error(ErrorCode::ShapeMismatch, "data has " + std::to_string(x.cols()) +
                                              " samples, layout has " +
                                              std::to_string(layout.n_samples()));
  }
}

int baseline_dim(const LabelLayout& layout, Index features) {
  return static_cast<int>(
      std::min<Index>(static_cast<Index>(layout.n_classes()) * layout.n_subclasses() - 1, features));
}

}  // namespace

LaplacianSpec build_lb_single(const LabelLayout& layout) {
  if (layout.n_views() != 1) {
    throw Error(ErrorCode::LayoutInvalid, "single-view Laplacian needs a one-view layout");
  }
  const Index n = layout.n_samples();
  require_oracle_size(n);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  LaplacianSpec out{Matrix(n, n), LaplacianKind::SingleView, layout};
  for (Index j = 0; j < n; ++j) {
    const int cj = layout.class_of(j);
    const int hj = layout.subclass_of(0, j);
    for (Index i = 0; i < n; ++i) {
      const int ci = layout.class_of(i);
      double v;
      if (ci != cj) {
        v = -1.0 / n2;
      } else if (layout.subclass_of(0, i) != hj) {
        v = 0.0;
      } else {
        v = static_cast<double>(n - layout.class_size(ci)) /
            (n2 * static_cast<double>(layout.subclass_size(0, ci, hj)));
      }
      out.lb(i, j) = v;
    }
  }
  return out;
}

LaplacianSpec build_lb_multiview(const LabelLayout& layout) {
  const Index n = layout.n_samples();
  const int views = layout.n_views();
  const Index total = layout.stacked_size();
  require_oracle_size(total);
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  LaplacianSpec out{Matrix::Zero(total, total), LaplacianKind::MultiView, layout};
  for (int vj = 0; vj < views; ++vj)
    for (int vi = 0; vi < views; ++vi)
      for (Index j = 0; j < n; ++j) {
        const int cj = layout.class_of(j);
        for (Index i = 0; i < n; ++i) {
          const int ci = layout.class_of(i);
          double v = 0.0;
          if (ci != cj) {
            v = -2.0 / n2;
          } else if (vi == vj && layout.subclass_of(vi, i) == layout.subclass_of(vj, j)) {
            v = 2.0 * views * static_cast<double>(n - layout.class_size(ci)) /
                (n2 * static_cast<double>(layout.subclass_size(vi, ci, layout.subclass_of(vi, i))));
          }
          out.lb(vi * n + i, vj * n + j) = v;
        }
      }
  return out;
}

Matrix between_scatter_from_means(const Matrix& x, const LabelLayout& layout) {
  require_same_samples(x, layout);
  const int C = layout.n_classes();
  const int Z = layout.n_subclasses();
  const double n = static_cast<double>(layout.n_samples());
  Matrix means = Matrix::Zero(x.rows(), static_cast<Index>(C) * Z);
  for (Index i = 0; i < x.cols(); ++i)
    means.col(static_cast<Index>(layout.block_index(0, layout.class_of(i), layout.subclass_of(0, i)))) +=
        x.col(i);
  std::vector<double> prior(static_cast<std::size_t>(C * Z));
  for (int c = 0; c < C; ++c)
    for (int h = 0; h < Z; ++h) {
      const auto b = layout.block_index(0, c, h);
      const double size = static_cast<double>(layout.subclass_size(0, c, h));
      means.col(static_cast<Index>(b)) /= size;
      prior[b] = size / n;
    }
  Matrix sb = Matrix::Zero(x.rows(), x.rows());
  for (int c = 0; c + 1 < C; ++c)
    for (int q = c + 1; q < C; ++q)
      for (int h = 0; h < Z; ++h)
        for (int l = 0; l < Z; ++l) {
          const auto a = layout.block_index(0, c, h);
          const auto b = layout.block_index(0, q, l);
          const Vector diff = means.col(static_cast<Index>(a)) - means.col(static_cast<Index>(b));
          sb.noalias() += prior[a] * prior[b] * diff * diff.transpose();
        }
  return sb;
}

ScatterMatrices scatter_matrices(const Matrix& x, const LabelLayout& layout) {
  require_same_samples(x, layout);
  require_finite(x, "scatter input");
  const LaplacianSpec spec = build_lb_single(layout);
  ScatterMatrices out;
  out.s_t = x * x.transpose();
  out.s_b = x * spec.lb * x.transpose();
  out.s_b = 0.5 * (out.s_b + out.s_b.transpose());
  out.s_b_means = between_scatter_from_means(x, layout);
  return out;
}

ProjectionModel sda_eig_baseline(const Matrix& x, const LabelLayout& layout,
                                 const EigBaselineOptions& opts) {
  require_same_samples(x, layout);
  LinearProjection body;
  body.mean = x.rowwise().mean();
  const Matrix xc = x.colwise() - body.mean;
  const ScatterMatrices s = scatter_matrices(xc, layout);
  const Index d_in = x.rows();
  const double ridge = opts.ridge.value_or(1e-6 * s.s_t.trace() / static_cast<double>(d_in));
  const EigBackend backend = opts.backend.value_or(
      d_in <= kLinalg.eig_size_cap ? EigBackend::Jacobi : EigBackend::TridiagonalQR);
  const EigenResult e = generalized_sym_eig(s.s_b, s.s_t, ridge, backend);
  const int d = baseline_dim(layout, d_in);
  if (d < 1) throw Error(ErrorCode::LayoutInvalid, "no discriminant directions for C = Z = 1");
  body.w = normalize_columns(e.vectors.leftCols(d), opts.normalization);
  ProjectionModel model;
  model.body = std::move(body);
  model.normalization = opts.normalization;
  return model;
}

TargetMatrix laplacian_eigen_targets(const LaplacianSpec& spec) {
  const EigenResult e = symmetric_eig(spec.lb);
  const double top = std::max(std::abs(e.values[0]), std::abs(e.values[e.values.size() - 1]));
  std::vector<Index> keep;
  for (Index i = 0; i < e.values.size(); ++i)
    if (std::abs(e.values[i]) > kLinalg.rank_threshold * top) keep.push_back(i);
  Matrix t(static_cast<Index>(keep.size()), spec.lb.rows());
  for (std::size_t r = 0; r < keep.size(); ++r)
    t.row(static_cast<Index>(r)) = e.vectors.col(keep[r]).transpose();
  return TargetMatrix{std::move(t)};
}

SortedVectorsResult sda_sorted_vectors_baseline(const Matrix& x, const LabelLayout& layout,
                                                double alpha, Normalization normalization) {
  require_same_samples(x, layout);
  const TargetMatrix t = laplacian_eigen_targets(build_lb_single(layout));
  ProjectionModel raw = fit_linear(x, t, alpha, Normalization::None);
  const auto& body = std::get<LinearProjection>(raw.body);
  const Matrix xc = x.colwise() - body.mean;
  const ScatterMatrices s = scatter_matrices(xc, layout);

  const Index m = body.w.cols();
  Vector crit(m);
  for (Index j = 0; j < m; ++j) {
    const Vector w = body.w.col(j);
    const double den = w.dot(s.s_t * w);
    crit[j] = den > 0.0 ? w.dot(s.s_b * w) / den : 0.0;
  }
  std::vector<Index> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return crit[a] > crit[b]; });
  const Index d = std::min<Index>(baseline_dim(layout, x.rows()), m);

  LinearProjection kept;
  kept.mean = body.mean;
  kept.w.resize(x.rows(), d);
  SortedVectorsResult out;
  out.criterion.resize(d);
  for (Index j = 0; j < d; ++j) {
    kept.w.col(j) = body.w.col(order[static_cast<std::size_t>(j)]);
    out.criterion[j] = crit[order[static_cast<std::size_t>(j)]];
  }
  kept.w = normalize_columns(kept.w, normalization);
  out.model.body = std::move(kept);
  out.model.normalization = normalization;
  return out;
}

}  // namespace fastsda
