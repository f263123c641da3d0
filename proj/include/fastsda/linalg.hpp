#pragma once

// Dense kernels shared by every other module. Matrices follow the D x N
// convention: features along rows, samples along columns.

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

namespace fastsda {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical constants of the linear-algebra layer, collected in one place.
struct LinalgTolerances {
  double symmetry = 1e-10;            // relative, against max |a_ij|
  double gram_schmidt_scale = 1e-10;  // drop tolerance = scale * sqrt(rows)
  int jacobi_max_sweeps = 100;
  Index eig_size_cap = 2000;          // Jacobi is an oracle-scale solver
  double rank_threshold = 1e-10;      // relative to the largest singular value
};

inline constexpr LinalgTolerances kLinalg{};

struct EigenResult {
  Vector values;   // descending
  Matrix vectors;  // column i pairs with values[i]
};

struct Orthonormalized {
  Matrix q;
  std::vector<Index> kept;  // indices of the input columns that survived
};

/// Which symmetric eigensolver backs a decomposition. Jacobi is the
/// reference solver; the tridiagonal QR route exists for timing baselines
/// beyond the Jacobi size cap.
enum class EigBackend { Jacobi, TridiagonalQR };

void require_finite(const Matrix& m, const char* what);
bool is_symmetric(const Matrix& a, double rel_tol = kLinalg.symmetry);

/// Solves a x = b for symmetric positive-definite a.
Matrix cholesky_solve(const Matrix& a, const Matrix& b);

/// Modified Gram-Schmidt over the columns of m, in column order. Columns whose
/// norm after projection falls below tol are dropped; tol defaults to
/// 1e-10 * sqrt(rows).
Matrix gram_schmidt(const Matrix& m, std::optional<double> tol = std::nullopt);
Orthonormalized orthonormalize(const Matrix& m,
                               std::optional<double> tol = std::nullopt);

/// Modified Gram-Schmidt in the inner product <x, y> = x' g y.
Orthonormalized orthonormalize_weighted(const Matrix& m, const Matrix& g,
                                        std::optional<double> tol = std::nullopt);

/// Full spectrum of a symmetric matrix by cyclic-by-row Jacobi rotations.
/// Eigenvectors are sign-normalised so that their largest-magnitude entry
/// (first one on ties) is positive.
EigenResult symmetric_eig(const Matrix& a);

/// Same contract as symmetric_eig with a selectable backend.
EigenResult symmetric_eig(const Matrix& a, EigBackend backend);

/// Solves a v = lambda (b + ridge I) v by Cholesky whitening. Returned vectors
/// are (b + ridge I)-orthonormal.
EigenResult generalized_sym_eig(const Matrix& a, const Matrix& b, double ridge,
                                EigBackend backend = EigBackend::Jacobi);

/// Number of singular values above rel_tol * the largest one.
Index numerical_rank(const Matrix& a, double rel_tol = kLinalg.rank_threshold);

/// Largest principal angle (radians) between the column spans of a and b.
double max_principal_angle(const Matrix& a, const Matrix& b);

}  // namespace fastsda
