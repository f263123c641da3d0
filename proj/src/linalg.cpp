#include "fastsda/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

double default_gs_tol(Index rows) {
  return kLinalg.gram_schmidt_scale * std::sqrt(static_cast<double>(rows));
}

void require_square(const Matrix& a, const char* what) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw Error(ErrorCode::ShapeMismatch,
                std::string(what) + " must be a non-empty square matrix, got " +
                    std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

// Largest-magnitude entry positive; the first one wins ties.
void normalize_signs(Matrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    Index best = 0;
    double best_abs = -1.0;
    for (Index i = 0; i < vectors.rows(); ++i) {
      const double v = std::abs(vectors(i, j));
      if (v > best_abs * (1.0 + 1e-12)) {
        best_abs = v;
        best = i;
      }
    }
    if (vectors(best, j) < 0.0) vectors.col(j) *= -1.0;
  }
}

EigenResult sort_descending(const Vector& values, const Matrix& vectors) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index l, Index r) { return values[l] > values[r]; });
  EigenResult out{Vector(values.size()), Matrix(vectors.rows(), vectors.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.values[static_cast<Index>(k)] = values[order[k]];
    out.vectors.col(static_cast<Index>(k)) = vectors.col(order[k]);
  }
  normalize_signs(out.vectors);
  return out;
}

EigenResult jacobi_eig(const Matrix& input) {
  const Index n = input.rows();
  if (n > kLinalg.eig_size_cap) {
    throw Error(ErrorCode::OracleTooLarge,
                "Jacobi eigensolver capped at n = " +
                    std::to_string(kLinalg.eig_size_cap) + ", got " +
                    std::to_string(n));
  }
  Matrix a = 0.5 * (input + input.transpose());
  Matrix v = Matrix::Identity(n, n);
  const double norm = a.norm();
  if (norm == 0.0) return sort_descending(Vector::Zero(n), v);

  const double converged_off = 1e-15 * norm;
  const double negligible = 1e-18 * norm;
  bool converged = false;
  for (int sweep = 0; sweep < kLinalg.jacobi_max_sweeps; ++sweep) {
    double off = 0.0;
    for (Index q = 1; q < n; ++q)
      for (Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) <= converged_off) {
      converged = true;
      break;
    }
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        if (std::abs(apq) <= negligible) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        double* col_p = a.col(p).data();
        double* col_q = a.col(q).data();
        for (Index k = 0; k < n; ++k) {
          const double kp = col_p[k];
          const double kq = col_q[k];
          col_p[k] = c * kp - s * kq;
          col_q[k] = s * kp + c * kq;
        }
        for (Index k = 0; k < n; ++k) {
          const double pk = a(p, k);
          const double qk = a(q, k);
          a(p, k) = c * pk - s * qk;
          a(q, k) = s * pk + c * qk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        double* vp = v.col(p).data();
        double* vq = v.col(q).data();
        for (Index k = 0; k < n; ++k) {
          const double kp = vp[k];
          const double kq = vq[k];
          vp[k] = c * kp - s * kq;
          vq[k] = s * kp + c * kq;
        }
      }
    }
  }
  if (!converged) {
    double off = 0.0;
    for (Index q = 1; q < n; ++q)
      for (Index p = 0; p < q; ++p) off += a(p, q) * a(p, q);
    if (std::sqrt(2.0 * off) > converged_off) {
      throw Error(ErrorCode::NotConverged,
                  "Jacobi did not converge within " +
                      std::to_string(kLinalg.jacobi_max_sweeps) + " sweeps");
    }
  }
  return sort_descending(a.diagonal(), v);
}

EigenResult tridiagonal_eig(const Matrix& input) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(input);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NotConverged, "tridiagonal QR eigensolver failed");
  }
  return sort_descending(solver.eigenvalues(), solver.eigenvectors());
}

template <typename Projector>
Orthonormalized mgs(const Matrix& m, double tol, Projector&& inner) {
  Orthonormalized out;
  out.q.resize(m.rows(), m.cols());
  Index kept = 0;
  for (Index j = 0; j < m.cols(); ++j) {
    Vector v = m.col(j);
    // Two projection passes keep the basis orthonormal to working precision
    // even for nearly dependent inputs.
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < kept; ++i) {
        v -= inner(out.q.col(i), v) * out.q.col(i);
      }
    }
    const double nrm = std::sqrt(std::max(inner(v, v), 0.0));
    if (!(nrm >= tol)) continue;
    out.q.col(kept) = v / nrm;
    out.kept.push_back(j);
    ++kept;
  }
  out.q.conservativeResize(m.rows(), kept);
  return out;
}

}  // namespace

void require_finite(const Matrix& m, const char* what) {
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN or Inf entries");
  }
}

bool is_symmetric(const Matrix& a, double rel_tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(a.cwiseAbs().maxCoeff(), 1e-300);
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < j; ++i)
      if (std::abs(a(i, j) - a(j, i)) > rel_tol * scale) return false;
  return true;
}

Matrix cholesky_solve(const Matrix& a, const Matrix& b) {
  require_square(a, "cholesky_solve: a");
  if (b.rows() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "cholesky_solve: a is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " but b has " +
                    std::to_string(b.rows()) + " rows");
  }
  require_finite(a, "cholesky_solve: a");
  require_finite(b, "cholesky_solve: b");
  if (!is_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "cholesky_solve: a");
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "cholesky_solve: non-positive pivot during factorization");
  }
  return llt.solve(b);
}

Matrix gram_schmidt(const Matrix& m, std::optional<double> tol) {
  return orthonormalize(m, tol).q;
}

Orthonormalized orthonormalize(const Matrix& m, std::optional<double> tol) {
  require_finite(m, "gram_schmidt input");
  if (m.cols() > m.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "gram_schmidt: more columns than rows (" + std::to_string(m.cols()) +
                    " > " + std::to_string(m.rows()) + ")");
  }
  auto out = mgs(m, tol.value_or(default_gs_tol(m.rows())),
                 [](const auto& x, const auto& y) { return x.dot(y); });
  if (out.kept.empty()) {
    throw Error(ErrorCode::EmptyResult, "gram_schmidt: every column is degenerate");
  }
  return out;
}

Orthonormalized orthonormalize_weighted(const Matrix& m, const Matrix& g,
                                        std::optional<double> tol) {
  require_square(g, "orthonormalize_weighted: metric");
  if (g.rows() != m.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "orthonormalize_weighted: metric size");
  }
  auto out = mgs(m, tol.value_or(default_gs_tol(m.rows())),
                 [&g](const auto& x, const auto& y) { return x.dot(g * y); });
  if (out.kept.empty()) {
    throw Error(ErrorCode::EmptyResult,
                "orthonormalize_weighted: every column is degenerate");
  }
  return out;
}

EigenResult symmetric_eig(const Matrix& a) { return symmetric_eig(a, EigBackend::Jacobi); }

EigenResult symmetric_eig(const Matrix& a, EigBackend backend) {
  require_square(a, "symmetric_eig");
  require_finite(a, "symmetric_eig input");
  if (!is_symmetric(a)) throw Error(ErrorCode::NotSymmetric, "symmetric_eig input");
  return backend == EigBackend::Jacobi ? jacobi_eig(a) : tridiagonal_eig(a);
}

EigenResult generalized_sym_eig(const Matrix& a, const Matrix& b, double ridge,
                                EigBackend backend) {
  require_square(a, "generalized_sym_eig: a");
  require_square(b, "generalized_sym_eig: b");
  if (a.rows() != b.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "generalized_sym_eig: a and b differ in size");
  }
  require_finite(a, "generalized_sym_eig: a");
  require_finite(b, "generalized_sym_eig: b");
  if (!is_symmetric(a) || !is_symmetric(b)) {
    throw Error(ErrorCode::NotSymmetric, "generalized_sym_eig inputs");
  }
  Matrix metric = b;
  metric.diagonal().array() += ridge;
  Eigen::LLT<Matrix> llt(metric);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "generalized_sym_eig: b + ridge*I is not positive definite");
  }
  // c = L^-1 a L^-T
  const auto lower = llt.matrixL();
  Matrix c = lower.solve(a);
  c = lower.solve(c.transpose()).transpose();
  c = 0.5 * (c + c.transpose()).eval();
  EigenResult whitened = backend == EigBackend::Jacobi ? jacobi_eig(c) : tridiagonal_eig(c);
  // v = L^-T u
  whitened.vectors = llt.matrixU().solve(whitened.vectors);
  return whitened;
}

Index numerical_rank(const Matrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const Vector& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  Index rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv[i] > rel_tol * sv[0]) ++rank;
  return rank;
}

double max_principal_angle(const Matrix& a, const Matrix& b) {
  const Matrix qa = gram_schmidt(a);
  const Matrix qb = gram_schmidt(b);
  if (qa.cols() != qb.cols()) return std::acos(0.0);
  const Matrix residual = qb - qa * (qa.transpose() * qb);
  Eigen::JacobiSVD<Matrix> svd(residual);
  const double s = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  return std::asin(std::min(1.0, s));
}

}  // namespace fastsda
