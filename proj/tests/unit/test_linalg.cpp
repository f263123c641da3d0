#include "helpers.hpp"

using namespace fastsda;
using namespace fastsda::test;

TEST_CASE("cholesky_solve small systems") {
  Matrix b(2, 1);
  b << 3, 7;
  CHECK(cholesky_solve(Matrix::Identity(2, 2), b).isApprox(b, 1e-14));

  Matrix d = Matrix::Zero(2, 2);
  d.diagonal() << 4, 9;
  Matrix ones = Matrix::Ones(2, 1);
  const Matrix x = cholesky_solve(d, ones);
  CHECK(x(0, 0) == doctest::Approx(0.25));
  CHECK(x(1, 0) == doctest::Approx(1.0 / 9.0));

  Matrix a(2, 2);
  a << 2, 1, 1, 2;
  const Matrix y = cholesky_solve(a, ones);
  CHECK(y(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(y(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("cholesky_solve residual and errors") {
  Rng rng(3);
  const Matrix a = random_spd(12, rng);
  const Matrix b = random_matrix(12, 4, rng);
  const Matrix x = cholesky_solve(a, b);
  CHECK((a * x - b).norm() <= 1e-8 * b.norm());

  Matrix indefinite(2, 2);
  indefinite << 1, 2, 2, 1;
  CHECK(code_of([&] { cholesky_solve(indefinite, Matrix::Ones(2, 1)); }) == ErrorCode::NotPositiveDefinite);
  CHECK(code_of([&] { cholesky_solve(a, Matrix::Ones(3, 1)); }) == ErrorCode::ShapeMismatch);
}

TEST_CASE("gram_schmidt") {
  CHECK(gram_schmidt(Matrix::Identity(3, 3)).isApprox(Matrix::Identity(3, 3)));

  Matrix m(3, 2);
  m << 1, 1, 1, 0, 0, 0;
  const Matrix q = gram_schmidt(m);
  const double h = 1.0 / std::sqrt(2.0);
  Matrix expected(3, 2);
  expected << h, h, h, -h, 0, 0;
  CHECK(q.isApprox(expected, 1e-14));

  Rng rng(1);
  Matrix dup = random_matrix(5, 3, rng);
  dup.col(2) = dup.col(0);
  const Orthonormalized o = orthonormalize(dup);
  CHECK(o.q.cols() == 2);
  CHECK(o.kept == std::vector<Index>{0, 1});
  CHECK((o.q.transpose() * o.q - Matrix::Identity(2, 2)).norm() < 1e-12);

  CHECK(code_of([] { gram_schmidt(Matrix::Zero(3, 2)); }) == ErrorCode::EmptyResult);
}

TEST_CASE("orthonormalize_weighted gives g-orthonormal columns") {
  Rng rng(8);
  const Matrix g = random_spd(6, rng);
  const Orthonormalized o = orthonormalize_weighted(random_matrix(6, 4, rng), g);
  CHECK((o.q.transpose() * g * o.q - Matrix::Identity(4, 4)).norm() < 1e-10);
}

TEST_CASE("symmetric_eig") {
  Matrix d = Matrix::Zero(3, 3);
  d.diagonal() << 3, 1, 2;
  const EigenResult e = symmetric_eig(d);
  CHECK(e.values[0] == doctest::Approx(3));
  CHECK(e.values[1] == doctest::Approx(2));
  CHECK(e.values[2] == doctest::Approx(1));
  CHECK(std::abs(e.vectors(0, 0)) == doctest::Approx(1));
  CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1));

  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  const EigenResult f = symmetric_eig(s);
  CHECK(f.values[0] == doctest::Approx(1));
  CHECK(f.values[1] == doctest::Approx(-1));
  CHECK(std::abs(f.vectors(0, 0)) == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(f.vectors(0, 1) * f.vectors(1, 1) < 0);

  CHECK(code_of([] { symmetric_eig(Matrix::Identity(2, 3)); }) == ErrorCode::ShapeMismatch);
  Matrix asym(2, 2);
  asym << 1, 2, 0, 1;
  CHECK(code_of([&] { symmetric_eig(asym); }) == ErrorCode::NotSymmetric);
}

TEST_CASE("symmetric_eig reconstruction, both backends") {
  Rng rng(5);
  const Matrix g = random_matrix(30, 30, rng);
  const Matrix a = g + g.transpose();
  for (EigBackend backend : {EigBackend::Jacobi, EigBackend::TridiagonalQR}) {
    const EigenResult e = symmetric_eig(a, backend);
    const Matrix rebuilt = e.vectors * e.values.asDiagonal() * e.vectors.transpose();
    CHECK((a - rebuilt).norm() <= 1e-8 * a.norm());
    CHECK((e.vectors.transpose() * e.vectors - Matrix::Identity(30, 30)).cwiseAbs().maxCoeff() < 1e-10);
    for (Index i = 1; i < 30; ++i) CHECK(e.values[i - 1] >= e.values[i]);
  }
  const EigenResult j = symmetric_eig(a, EigBackend::Jacobi);
  const EigenResult q = symmetric_eig(a, EigBackend::TridiagonalQR);
  CHECK((j.values - q.values).norm() < 1e-9 * j.values.norm());
}

TEST_CASE("between-class Laplacian of the two-class example has rank 3") {
  const EigenResult e = symmetric_eig(build_lb_single(example_layout_single()).lb);
  CHECK((e.values.array() > 1e-12).count() == 3);
}

TEST_CASE("generalized_sym_eig") {
  Rng rng(11);
  const Matrix g = random_matrix(5, 5, rng);
  const Matrix a = g + g.transpose();

  const EigenResult plain = symmetric_eig(a);
  const EigenResult ident = generalized_sym_eig(a, Matrix::Identity(5, 5), 0.0);
  CHECK((plain.values - ident.values).norm() < 1e-10);
  CHECK(max_principal_angle(plain.vectors.leftCols(1), ident.vectors.leftCols(1)) < 1e-8);

  Matrix da = Matrix::Zero(2, 2);
  da.diagonal() << 2, 1;
  const EigenResult d = generalized_sym_eig(da, Matrix::Identity(2, 2), 0.0);
  CHECK(d.values[0] == doctest::Approx(2));
  CHECK(d.values[1] == doctest::Approx(1));

  const Matrix b = random_spd(5, rng);
  const double ridge = 0.25;
  const Matrix br = b + ridge * Matrix::Identity(5, 5);
  const EigenResult r = generalized_sym_eig(a, b, ridge);
  for (Index i = 0; i < 5; ++i) {
    CHECK((a * r.vectors.col(i) - r.values[i] * br * r.vectors.col(i)).norm() <= 1e-8);
  }
  CHECK((r.vectors.transpose() * br * r.vectors - Matrix::Identity(5, 5)).norm() < 1e-8);

  Matrix neg = -Matrix::Identity(5, 5);
  CHECK(code_of([&] { generalized_sym_eig(a, neg, 0.0); }) == ErrorCode::NotPositiveDefinite);
}

TEST_CASE("numerical_rank and principal angles") {
  Rng rng(2);
  const Matrix u = random_matrix(8, 3, rng);
  CHECK(numerical_rank(u * u.transpose()) == 3);
  CHECK(max_principal_angle(u, u * random_spd(3, rng)) < 1e-8);
  Matrix e1 = Matrix::Zero(3, 1), e2 = Matrix::Zero(3, 1);
  e1(0, 0) = 1;
  e2(1, 0) = 1;
  CHECK(max_principal_angle(e1, e2) == doctest::Approx(std::acos(0.0)));
}

TEST_CASE("non-finite input is rejected") {
  Matrix a = Matrix::Identity(2, 2);
  a(0, 1) = a(1, 0) = std::nan("");
  CHECK(code_of([&] { symmetric_eig(a); }) == ErrorCode::NonFinite);
}
