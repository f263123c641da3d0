#pragma once

// Exact between-class Laplacians and the eigendecomposition pipelines built on
// them. These exist to check and time the target-based fit, not to replace it.

#include <optional>

#include "fastsda/layout.hpp"
#include "fastsda/regression.hpp"

namespace fastsda {

enum class LaplacianKind { SingleView, MultiView };

struct LaplacianSpec {
  Matrix lb;  // N x N, or V N x V N in view-major order
  LaplacianKind kind = LaplacianKind::SingleView;
  LabelLayout layout;
};

/// Largest sample count (times views) accepted by the Laplacian builders.
inline constexpr Index kOracleSizeCap = 2000;

/// Same subclass: (N - N_c) / (N^2 N_ch); same class, other subclass: 0;
/// different classes: -1/N^2.
LaplacianSpec build_lb_single(const LabelLayout& layout);

/// Diagonal view blocks: 2 V (N - N_c) / (N^2 N_ch^v) on same-subclass pairs,
/// 0 within a class, -2/N^2 across classes. Off-diagonal view blocks: -2/N^2
/// across classes, 0 within a class. Rows sum to zero; one view gives twice
/// build_lb_single.
LaplacianSpec build_lb_multiview(const LabelLayout& layout);

struct ScatterMatrices {
  Matrix s_t;        // X X'
  Matrix s_b;        // X L_b X'
  Matrix s_b_means;  // pairwise subclass-mean sum over class pairs
};

/// Scatter matrices of mean-centred x (D x N).
ScatterMatrices scatter_matrices(const Matrix& x, const LabelLayout& layout);

/// Sum over class pairs and their subclasses of p_a p_b (mu_a - mu_b)(mu_a - mu_b)'.
Matrix between_scatter_from_means(const Matrix& x, const LabelLayout& layout);

struct EigBaselineOptions {
  std::optional<double> ridge;          // default 1e-6 tr(S_t) / D
  std::optional<EigBackend> backend;    // default Jacobi up to its size cap
  Normalization normalization = Normalization::L2;
};

/// S_b w = lambda (S_t + ridge I) w, keeping the top min(C Z - 1, D) vectors.
ProjectionModel sda_eig_baseline(const Matrix& x, const LabelLayout& layout,
                                 const EigBaselineOptions& opts = {});

/// Eigenvectors of L_b with nonzero eigenvalue, each regressed onto x, ranked
/// by tr(w' S_b w) / tr(w' S_t w) and truncated to min(C Z - 1, D).
struct SortedVectorsResult {
  ProjectionModel model;
  Vector criterion;  // per kept direction, descending
};
SortedVectorsResult sda_sorted_vectors_baseline(const Matrix& x, const LabelLayout& layout,
                                                double alpha,
                                                Normalization normalization = Normalization::L2);

/// Rows of the d x N matrix holding the eigenvectors of L_b with eigenvalue
/// above the rank threshold, as a target matrix.
TargetMatrix laplacian_eigen_targets(const LaplacianSpec& spec);

}  // namespace fastsda
