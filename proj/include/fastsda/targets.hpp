#pragma once

// Target vectors that replace the eigendecomposition of the between-class
// Laplacian. The non-trivial eigenvectors of that Laplacian are constant on
// subclass blocks and orthogonal to the ones vector, so an orthonormal basis of
// the same subspace can be built directly: random block-structured vectors,
// orthogonalised against the ones vector and each other.

#include <span>

#include "fastsda/layout.hpp"
#include "fastsda/rng.hpp"

namespace fastsda {

struct TargetMatrix {
  Matrix t;  // d x (V * N), rows orthonormal and zero-sum

  Index dim() const { return t.rows(); }
};

/// Redraws allowed when orthogonalisation loses a column.
inline constexpr int kTargetRetries = 5;

/// min(C*Z - 1, D, N).
int single_view_target_cap(const LabelLayout& layout, Index feature_dim);

/// min(V*C*Z - 1, min_v D_v, N).
int multiview_target_cap(const LabelLayout& layout, std::span<const Index> feature_dims);

/// Single-view targets. Emits min(d_cap, C-1) class-level columns, then walks
/// class sizes in ascending order adding (Z-1) subclass-level columns per
/// class of that size until d_cap columns exist. Random values are drawn from
/// rng column by column, block by block (class-major, subclass-minor).
TargetMatrix make_targets_single(const LabelLayout& layout, int d_cap, Rng& rng);

/// Multi-view targets: values differ per view, and each class group receives
/// (V*Z - 1) subclass-level columns per class. With one view this is
/// make_targets_single.
TargetMatrix make_targets_multiview(const LabelLayout& layout, int d_cap, Rng& rng);

/// The block-structured random columns (V*N x d) that the target builders
/// orthogonalise, before the ones vector is prepended. Zero entries are exact.
Matrix structured_target_columns(const LabelLayout& layout, int d_cap, Rng& rng);

}  // namespace fastsda
