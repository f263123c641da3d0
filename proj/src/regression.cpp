#include "fastsda/regression.hpp"

#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

Matrix identity_ridge(const Matrix& g, double alpha) {
  Matrix out = 0.5 * (g + g.transpose());
  out.diagonal().array() += alpha;
  return out;
}

void require_positive_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "kernel regression needs alpha > 0 (centred kernels are singular)");
  }
}

void require_target_width(const Matrix& t, Index n, const char* what) {
  if (t.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch, std::string(what) + ": targets cover " +
                                              std::to_string(t.cols()) + " samples, data has " +
                                              std::to_string(n));
  }
}

const Matrix& coefficients(const ProjectionModel& m) {
  return std::visit([](const auto& b) -> const Matrix& {
    if constexpr (std::is_same_v<std::decay_t<decltype(b)>, LinearProjection>) return b.w;
    else return b.a;
  }, m.body);
}

Matrix& coefficients(ProjectionModel& m) {
  return std::visit([](auto& b) -> Matrix& {
    if constexpr (std::is_same_v<std::decay_t<decltype(b)>, LinearProjection>) return b.w;
    else return b.a;
  }, m.body);
}

double resolve_sigma(const KernelConfig& cfg, const Matrix& x) {
  return cfg.sigma > 0.0 ? cfg.sigma : mean_distance_sigma(x);
}

Matrix approx_kernel(const Matrix& prototypes, const Matrix& x, const KernelConfig& cfg,
                     const CenteringStats& stats) {
  Matrix k = rbf_kernel(prototypes, x, cfg.sigma);
  if (cfg.approx_centering == ApproxCentering::PrototypeMean) k = center_test_columns(k, stats);
  return k;
}

Matrix approx_metric(const ApproxKernelProjection& b) {
  const Matrix kpp = rbf_kernel(b.prototypes, b.prototypes, b.cfg.sigma);
  if (b.cfg.approx_centering == ApproxCentering::PrototypeMean) return center_kernel(kpp).k;
  return kpp;
}

}  // namespace

Index ProjectionModel::dim() const { return coefficients(*this).cols(); }

Index ProjectionModel::input_dim() const {
  if (preprocess) return preprocess->input_dim();
  return std::visit([](const auto& b) -> Index {
    using B = std::decay_t<decltype(b)>;
    if constexpr (std::is_same_v<B, LinearProjection>) return b.w.rows();
    else if constexpr (std::is_same_v<B, KernelProjection>) return b.train_x.rows();
    else return b.prototypes.rows();
  }, body);
}

const char* ProjectionModel::variant_name() const {
  switch (body.index()) {
    case 0: return "linear";
    case 1: return "kernel";
    default: return "approx-kernel";
  }
}

Matrix normalize_columns(const Matrix& m, Normalization mode, const Matrix* g) {
  switch (mode) {
    case Normalization::None:
      return m;
    case Normalization::L2: {
      Matrix out = m;
      for (Index j = 0; j < out.cols(); ++j) {
        const double norm = out.col(j).norm();
        if (!(norm > 0.0)) {
          throw Error(ErrorCode::RankDeficientProjection,
                      "projection column " + std::to_string(j) + " is zero");
        }
        out.col(j) /= norm;
      }
      return out;
    }
    case Normalization::Orthogonal: {
      Orthonormalized o;
      try {
        o = g ? orthonormalize_weighted(m, *g) : orthonormalize(m);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EmptyResult) throw;
        throw Error(ErrorCode::RankDeficientProjection, "all projection columns are degenerate");
      }
      if (o.q.cols() != m.cols()) {
        throw Error(ErrorCode::RankDeficientProjection,
                    "orthogonalisation kept " + std::to_string(o.q.cols()) + " of " +
                        std::to_string(m.cols()) + " projection columns");
      }
      return o.q;
    }
  }
  return m;
}

Matrix linear_weights_primal(const Matrix& xc, const Matrix& t, double alpha) {
  return cholesky_solve(identity_ridge(xc * xc.transpose(), alpha), xc * t.transpose());
}

Matrix linear_weights_dual(const Matrix& xc, const Matrix& t, double alpha) {
  return xc * cholesky_solve(identity_ridge(xc.transpose() * xc, alpha), t.transpose());
}

ProjectionModel fit_linear(const Matrix& x, const TargetMatrix& t, double alpha,
                           Normalization normalization) {
  require_finite(x, "training data");
  require_target_width(t.t, x.cols(), "fit_linear");
  if (alpha < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha must be >= 0");
  LinearProjection body;
  body.mean = x.rowwise().mean();
  const Matrix xc = x.colwise() - body.mean;
  const Matrix w = x.cols() > x.rows() ? linear_weights_primal(xc, t.t, alpha)
                                       : linear_weights_dual(xc, t.t, alpha);
  body.w = normalize_columns(w, normalization);
  ProjectionModel model;
  model.body = std::move(body);
  model.normalization = normalization;
  return model;
}

Matrix fit_kernel(const Matrix& k_centered, const TargetMatrix& t, double alpha,
                  KernelSolver solver, Normalization normalization) {
  require_positive_alpha(alpha);
  require_target_width(t.t, k_centered.cols(), "fit_kernel");
  if (k_centered.rows() != k_centered.cols()) {
    throw Error(ErrorCode::ShapeMismatch, "fit_kernel needs a square kernel");
  }
  Matrix a;
  if (solver == KernelSolver::Direct) {
    a = cholesky_solve(identity_ridge(k_centered, alpha), t.t.transpose());
  } else {
    a = cholesky_solve(identity_ridge(k_centered * k_centered.transpose(), alpha),
                       k_centered * t.t.transpose());
  }
  return normalize_columns(a, normalization, &k_centered);
}

Matrix fit_kernel_approx(const Matrix& k_hat, const TargetMatrix& t, double alpha,
                         Normalization normalization, const Matrix* metric) {
  require_positive_alpha(alpha);
  require_target_width(t.t, k_hat.cols(), "fit_kernel_approx");
  const Matrix a = cholesky_solve(identity_ridge(k_hat * k_hat.transpose(), alpha),
                                  k_hat * t.t.transpose());
  if (normalization == Normalization::Orthogonal && metric == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "orthogonal normalisation needs the prototype kernel");
  }
  return normalize_columns(a, normalization, metric);
}

ProjectionModel normalize_projection(ProjectionModel model, Normalization mode, const Matrix* k) {
  Matrix& c = coefficients(model);
  if (mode == Normalization::Orthogonal) {
    if (auto* kb = std::get_if<KernelProjection>(&model.body)) {
      Matrix owned;
      if (!k) {
        owned = center_kernel(rbf_kernel(kb->train_x, kb->train_x, kb->cfg.sigma)).k;
        k = &owned;
      }
      c = normalize_columns(c, mode, k);
    } else if (auto* ab = std::get_if<ApproxKernelProjection>(&model.body)) {
      Matrix owned;
      if (!k) {
        owned = approx_metric(*ab);
        k = &owned;
      }
      c = normalize_columns(c, mode, k);
    } else {
      c = normalize_columns(c, mode);
    }
  } else {
    c = normalize_columns(c, mode);
  }
  model.normalization = mode;
  return model;
}

ProjectionModel fit_kernel_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, Normalization normalization, KernelSolver solver) {
  require_finite(x, "training data");
  cfg.mode = KernelMode::Exact;
  cfg.sigma = resolve_sigma(cfg, x);
  KernelProjection body;
  const CenteredKernel ck = center_kernel(rbf_kernel(x, x, cfg.sigma));
  body.a = fit_kernel(ck.k, t, alpha, solver, normalization);
  body.train_x = x;
  body.cfg = cfg;
  body.stats = ck.stats;
  ProjectionModel model;
  model.body = std::move(body);
  model.normalization = normalization;
  return model;
}

ProjectionModel fit_approx_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, Rng& rng, Normalization normalization) {
  const Matrix prototypes = select_prototypes(x, cfg, rng);
  return fit_approx_model(x, t, cfg, alpha, prototypes, normalization);
}

ProjectionModel fit_approx_model(const Matrix& x, const TargetMatrix& t, KernelConfig cfg,
                                 double alpha, const Matrix& prototypes,
                                 Normalization normalization) {
  require_finite(x, "training data");
  cfg.mode = KernelMode::Approximate;
  cfg.sigma = resolve_sigma(cfg, x);
  cfg.prototype_count = prototypes.cols();
  ApproxKernelProjection body;
  body.prototypes = prototypes;
  body.cfg = cfg;
  if (cfg.approx_centering == ApproxCentering::PrototypeMean) {
    body.stats = centering_stats(rbf_kernel(prototypes, prototypes, cfg.sigma));
  }
  const Matrix k_hat = approx_kernel(prototypes, x, cfg, body.stats);
  Matrix metric;
  if (normalization == Normalization::Orthogonal) metric = approx_metric(body);
  body.a = fit_kernel_approx(k_hat, t, alpha, normalization,
                             normalization == Normalization::Orthogonal ? &metric : nullptr);
  ProjectionModel model;
  model.body = std::move(body);
  model.normalization = normalization;
  return model;
}

Matrix model_kernel_columns(const ProjectionModel& model, const Matrix& x) {
  if (const auto* kb = std::get_if<KernelProjection>(&model.body)) {
    return center_test_columns(rbf_kernel(kb->train_x, x, kb->cfg.sigma), kb->stats);
  }
  if (const auto* ab = std::get_if<ApproxKernelProjection>(&model.body)) {
    return approx_kernel(ab->prototypes, x, ab->cfg, ab->stats);
  }
  throw Error(ErrorCode::InvalidArgument, "linear models have no kernel");
}

Matrix transform(const ProjectionModel& model, const Matrix& x_new) {
  if (x_new.rows() != model.input_dim()) {
    throw Error(ErrorCode::ShapeMismatch, "model expects " + std::to_string(model.input_dim()) +
                                              " features, got " + std::to_string(x_new.rows()));
  }
  const Matrix x = model.preprocess ? model.preprocess->apply(x_new) : x_new;
  if (const auto* lb = std::get_if<LinearProjection>(&model.body)) {
    return lb->w.transpose() * (x.colwise() - lb->mean);
  }
  return coefficients(model).transpose() * model_kernel_columns(model, x);
}

Index MultiViewModel::dim() const { return views.empty() ? 0 : views.front().dim(); }

const char* MultiViewModel::variant_name() const {
  return !views.empty() && views.front().body.index() == 0 ? "mv-linear" : "mv-kernel";
}

namespace {

std::vector<TargetMatrix> split_targets(const TargetMatrix& t, std::size_t n_views, Index n) {
  if (t.t.cols() != static_cast<Index>(n_views) * n) {
    throw Error(ErrorCode::ShapeMismatch, "multi-view targets cover " + std::to_string(t.t.cols()) +
                                              " columns, expected " +
                                              std::to_string(static_cast<Index>(n_views) * n));
  }
  std::vector<TargetMatrix> out;
  for (std::size_t v = 0; v < n_views; ++v)
    out.push_back(TargetMatrix{t.t.middleCols(static_cast<Index>(v) * n, n)});
  return out;
}

void require_views(const std::vector<Matrix>& views) {
  if (views.empty()) throw Error(ErrorCode::InvalidArgument, "no views given");
  for (const Matrix& v : views)
    if (v.cols() != views.front().cols()) {
      throw Error(ErrorCode::ViewShapeMismatch, "views disagree on the number of samples");
    }
}

}  // namespace

MultiViewModel fit_multiview_linear(const std::vector<Matrix>& views, const TargetMatrix& t,
                                    double alpha, Normalization normalization) {
  require_views(views);
  const auto parts = split_targets(t, views.size(), views.front().cols());
  MultiViewModel model;
  for (std::size_t v = 0; v < views.size(); ++v)
    model.views.push_back(fit_linear(views[v], parts[v], alpha, normalization));
  return model;
}

MultiViewModel fit_multiview_kernel(const std::vector<Matrix>& views, const TargetMatrix& t,
                                    const KernelConfig& cfg, double alpha,
                                    Normalization normalization, KernelSolver solver) {
  require_views(views);
  const auto parts = split_targets(t, views.size(), views.front().cols());
  MultiViewModel model;
  for (std::size_t v = 0; v < views.size(); ++v)
    model.views.push_back(fit_kernel_model(views[v], parts[v], cfg, alpha, normalization, solver));
  return model;
}

std::vector<Matrix> transform_views(const MultiViewModel& model, const std::vector<Matrix>& views) {
  if (views.size() != model.views.size()) {
    throw Error(ErrorCode::ViewShapeMismatch, "model has " + std::to_string(model.views.size()) +
                                                  " views, got " + std::to_string(views.size()));
  }
  require_views(views);
  std::vector<Matrix> out;
  for (std::size_t v = 0; v < views.size(); ++v) out.push_back(transform(model.views[v], views[v]));
  return out;
}

Matrix transform(const MultiViewModel& model, const std::vector<Matrix>& views) {
  const std::vector<Matrix> parts = transform_views(model, views);
  const Index d = parts.front().rows();
  const Index m = parts.front().cols();
  if (model.fusion == Fusion::Mean) {
    Matrix out = Matrix::Zero(d, m);
    for (const Matrix& p : parts) out += p;
    return out / static_cast<double>(parts.size());
  }
  Matrix out(d * static_cast<Index>(parts.size()), m);
  for (std::size_t v = 0; v < parts.size(); ++v) out.middleRows(static_cast<Index>(v) * d, d) = parts[v];
  return out;
}

const char* to_string(Normalization n) {
  switch (n) {
    case Normalization::L2: return "l2";
    case Normalization::Orthogonal: return "orthogonal";
    case Normalization::None: return "none";
  }
  return "?";
}

const char* to_string(KernelSolver s) { return s == KernelSolver::Direct ? "direct" : "full-gram"; }

const char* to_string(Fusion f) { return f == Fusion::Concat ? "concat" : "mean"; }

Normalization parse_normalization(const std::string& s) {
  if (s == "l2") return Normalization::L2;
  if (s == "orthogonal") return Normalization::Orthogonal;
  if (s == "none") return Normalization::None;
  throw Error(ErrorCode::InvalidArgument, "unknown normalization '" + s + "'");
}

KernelSolver parse_kernel_solver(const std::string& s) {
  if (s == "direct") return KernelSolver::Direct;
  if (s == "full-gram") return KernelSolver::FullGram;
  throw Error(ErrorCode::InvalidArgument, "unknown kernel solver '" + s + "'");
}

Fusion parse_fusion(const std::string& s) {
  if (s == "concat") return Fusion::Concat;
  if (s == "mean") return Fusion::Mean;
  throw Error(ErrorCode::InvalidArgument, "unknown fusion '" + s + "'");
}

}  // namespace fastsda
