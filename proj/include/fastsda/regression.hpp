#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fastsda/kernel.hpp"
#include "fastsda/preprocess.hpp"
#include "fastsda/targets.hpp"

namespace fastsda {

/// l2: unit-norm projection columns. orthogonal: Gram-Schmidt, Euclidean for
/// W and kernel-weighted for A. none: raw regression output.
enum class Normalization { L2, Orthogonal, None };

/// direct: (K + aI)^-1 T'. full-gram: (KK' + aI)^-1 K T'.
enum class KernelSolver { Direct, FullGram };

struct LinearProjection {
  Matrix w;     // D x d
  Vector mean;  // D
};

struct KernelProjection {
  Matrix a;  // N x d
  Matrix train_x;
  KernelConfig cfg;  // sigma resolved
  CenteringStats stats;
};

struct ApproxKernelProjection {
  Matrix a;           // r x d
  Matrix prototypes;  // D x r
  KernelConfig cfg;
  CenteringStats stats;  // of the prototype kernel; used with PrototypeMean centring
};

struct ProjectionModel {
  std::variant<LinearProjection, KernelProjection, ApproxKernelProjection> body;
  Normalization normalization = Normalization::L2;
  std::optional<Preprocessor> preprocess;  // applied before the projection

  Index dim() const;
  Index input_dim() const;
  const char* variant_name() const;  // linear | kernel | approx-kernel
};

/// W = (XX' + aI)^-1 X T' when N > D, X (X'X + aI)^-1 T' otherwise, on the
/// mean-centred x. alpha = 0 is accepted and fails on a singular system.
ProjectionModel fit_linear(const Matrix& x, const TargetMatrix& t, double alpha,
                           Normalization normalization = Normalization::L2);

/// The two branches of fit_linear, unnormalised, on already-centred x.
Matrix linear_weights_primal(const Matrix& xc, const Matrix& t, double alpha);
Matrix linear_weights_dual(const Matrix& xc, const Matrix& t, double alpha);

/// Coefficients for a centred N x N kernel; alpha must be positive.
Matrix fit_kernel(const Matrix& k_centered, const TargetMatrix& t, double alpha,
                  KernelSolver solver = KernelSolver::Direct,
                  Normalization normalization = Normalization::L2);

/// (K^ K^' + aI)^-1 K^ T' for an r x N kernel; alpha must be positive.
Matrix fit_kernel_approx(const Matrix& k_hat, const TargetMatrix& t, double alpha,
                         Normalization normalization = Normalization::L2,
                         const Matrix* metric = nullptr);

/// Unit columns, or Gram-Schmidt in the metric g (identity when null).
Matrix normalize_columns(const Matrix& m, Normalization mode, const Matrix* g = nullptr);

/// Re-normalises a fitted model. Orthogonal mode on a kernel model uses the
/// centred training kernel, recomputed from the stored data when k is null.
ProjectionModel normalize_projection(ProjectionModel model, Normalization mode,
                                     const Matrix* k = nullptr);

/// Exact kernel model on x (columns as samples). cfg.sigma <= 0 selects the
/// mean pairwise distance of x.
ProjectionModel fit_kernel_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, Normalization normalization = Normalization::L2,
                                 KernelSolver solver = KernelSolver::Direct);

/// Approximate kernel model with prototypes chosen by cfg from x.
ProjectionModel fit_approx_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, Rng& rng,
                                 Normalization normalization = Normalization::L2);

/// Same with given prototypes.
ProjectionModel fit_approx_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, const Matrix& prototypes,
                                 Normalization normalization = Normalization::L2);

/// Kernel between the model's reference points and x, centred as at fit time.
Matrix model_kernel_columns(const ProjectionModel& model, const Matrix& x);

/// d x m embedding of the columns of x_new.
Matrix transform(const ProjectionModel& model, const Matrix& x_new);

/// How per-view embeddings combine into one representation.
enum class Fusion { Concat, Mean };

struct MultiViewModel {
  std::vector<ProjectionModel> views;
  Fusion fusion = Fusion::Concat;

  int n_views() const { return static_cast<int>(views.size()); }
  Index dim() const;  // per-view output dimension
  const char* variant_name() const;  // mv-linear | mv-kernel
};

/// Splits the d x (V N) targets into views and regresses each view on its own
/// block. With block-diagonal data this is the joint regression.
MultiViewModel fit_multiview_linear(const std::vector<Matrix>& views, const TargetMatrix& t,
                                    double alpha, Normalization normalization = Normalization::L2);

MultiViewModel fit_multiview_kernel(const std::vector<Matrix>& views, const TargetMatrix& t,
                                    const KernelConfig& cfg, double alpha,
                                    Normalization normalization = Normalization::L2,
                                    KernelSolver solver = KernelSolver::Direct);

std::vector<Matrix> transform_views(const MultiViewModel& model, const std::vector<Matrix>& views);
Matrix transform(const MultiViewModel& model, const std::vector<Matrix>& views);

const char* to_string(Normalization n);
const char* to_string(KernelSolver s);
const char* to_string(Fusion f);
Normalization parse_normalization(const std::string& s);
KernelSolver parse_kernel_solver(const std::string& s);
Fusion parse_fusion(const std::string& s);

}  // namespace fastsda
