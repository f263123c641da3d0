#include "fastsda/targets.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

int checked_cap(const LabelLayout& layout, int d_cap) {
  const int full = layout.n_views() * layout.n_classes() * layout.n_subclasses() - 1;
  if (full < 1) {
    throw Error(ErrorCode::LayoutInvalid,
                "a single class with a single subclass has no discriminant directions");
  }
  if (d_cap < 1 || d_cap > full) {
    throw Error(ErrorCode::InvalidArgument, "target count " + std::to_string(d_cap) +
                                                " outside [1, " + std::to_string(full) + "]");
  }
  return d_cap;
}

// One value per (view, class, subclass) block for each target column.
std::vector<Vector> draw_block_columns(const LabelLayout& layout, int d, Rng& rng) {
  const int V = layout.n_views();
  const int C = layout.n_classes();
  const int Z = layout.n_subclasses();
  const auto n_blocks = static_cast<Index>(layout.n_blocks());
  std::vector<Vector> cols;

  // Class level: one value per (view, class), repeated over its subclasses.
  const int n_class_level = std::min(d, C - 1);
  for (int j = 0; j < n_class_level; ++j) {
    Vector col = Vector::Zero(n_blocks);
    for (int v = 0; v < V; ++v)
      for (int c = 0; c < C; ++c) {
        const double r = rng.uniform01();
        for (int h = 0; h < Z; ++h) col[static_cast<Index>(layout.block_index(v, c, h))] = r;
      }
    cols.push_back(std::move(col));
  }

  // Subclass level: classes grouped by size, smallest first.
  std::map<Index, std::vector<int>> by_size;
  for (int c = 0; c < C; ++c) by_size[layout.class_size(c)].push_back(c);
  const int per_class = V * Z - 1;
  for (const auto& [size, group] : by_size) {
    if (static_cast<int>(cols.size()) >= d || per_class == 0) break;
    int budget = static_cast<int>(group.size()) * per_class;
    budget = std::min(budget, d - static_cast<int>(cols.size()));
    for (int j = 0; j < budget; ++j) {
      Vector col = Vector::Zero(n_blocks);
      for (int v = 0; v < V; ++v)
        for (int c : group)
          for (int h = 0; h < Z; ++h)
            col[static_cast<Index>(layout.block_index(v, c, h))] = rng.uniform01();
      cols.push_back(std::move(col));
    }
  }
  return cols;
}

Matrix expand(const LabelLayout& layout, const std::vector<Vector>& block_cols) {
  const Index n = layout.n_samples();
  Matrix out(layout.stacked_size(), static_cast<Index>(block_cols.size()));
  for (Index j = 0; j < out.cols(); ++j) {
    const Vector& col = block_cols[static_cast<std::size_t>(j)];
    for (int v = 0; v < layout.n_views(); ++v)
      for (Index i = 0; i < n; ++i)
        out(v * n + i, j) = col[static_cast<Index>(
            layout.block_index(v, layout.class_of(i), layout.subclass_of(v, i)))];
  }
  return out;
}

TargetMatrix build_targets(const LabelLayout& layout, int d_cap, Rng& rng) {
  const int d = checked_cap(layout, d_cap);
  for (int attempt = 0; attempt <= kTargetRetries; ++attempt) {
    const Matrix structured = expand(layout, draw_block_columns(layout, d, rng));
    Matrix with_ones(structured.rows(), structured.cols() + 1);
    with_ones.col(0).setOnes();
    with_ones.rightCols(structured.cols()) = structured;
    if (with_ones.cols() > with_ones.rows()) {
      throw Error(ErrorCode::LayoutInvalid, "more target columns than samples");
    }
    const Orthonormalized orth = orthonormalize(with_ones);
    if (orth.kept.size() == static_cast<std::size_t>(with_ones.cols())) {
      return TargetMatrix{orth.q.rightCols(structured.cols()).transpose()};
    }
  }
  throw Error(ErrorCode::RankDeficient,
              "target orthogonalisation lost a column after " +
                  std::to_string(kTargetRetries) + " redraws");
}

}  // namespace

int single_view_target_cap(const LabelLayout& layout, Index feature_dim) {
  const Index full = static_cast<Index>(layout.n_classes()) * layout.n_subclasses() - 1;
  return static_cast<int>(std::min({full, feature_dim, layout.n_samples()}));
}

int multiview_target_cap(const LabelLayout& layout, std::span<const Index> feature_dims) {
  if (feature_dims.size() != static_cast<std::size_t>(layout.n_views())) {
    throw Error(ErrorCode::ShapeMismatch, "one feature dimension per view expected");
  }
  const Index full = static_cast<Index>(layout.n_views()) * layout.n_classes() *
                         layout.n_subclasses() -
                     1;
  const Index min_dim = *std::min_element(feature_dims.begin(), feature_dims.end());
  return static_cast<int>(std::min({full, min_dim, layout.n_samples()}));
}

TargetMatrix make_targets_single(const LabelLayout& layout, int d_cap, Rng& rng) {
  if (layout.n_views() != 1) {
    throw Error(ErrorCode::LayoutInvalid, "single-view targets need a one-view layout");
  }
  return build_targets(layout, d_cap, rng);
}

TargetMatrix make_targets_multiview(const LabelLayout& layout, int d_cap, Rng& rng) {
  return build_targets(layout, d_cap, rng);
}

Matrix structured_target_columns(const LabelLayout& layout, int d_cap, Rng& rng) {
  return expand(layout, draw_block_columns(layout, checked_cap(layout, d_cap), rng));
}

}  // namespace fastsda
