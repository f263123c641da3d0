#include "helpers.hpp"

using namespace fastsda;
using namespace fastsda::test;

namespace {

Matrix centered(const Matrix& x) { return x.colwise() - x.rowwise().mean(); }

}  // namespace

TEST_CASE("single-view Laplacian entries of the two-class example") {
  const LaplacianSpec s = build_lb_single(example_layout_single());
  CHECK(s.lb(0, 1) == doctest::Approx(9.0 / (289.0 * 3.0)).epsilon(1e-14));
  CHECK(s.lb(0, 1) == doctest::Approx(0.0103806).epsilon(1e-5));
  CHECK(s.lb(0, 3) == 0.0);
  CHECK(s.lb(0, 10) == doctest::Approx(-1.0 / 289.0).epsilon(1e-14));
  CHECK(s.lb(3, 4) == doctest::Approx(9.0 / (289.0 * 5.0)).epsilon(1e-14));
  CHECK(s.lb(8, 9) == doctest::Approx(8.0 / (289.0 * 4.0)).epsilon(1e-14));
  CHECK(s.lb.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK((s.lb - s.lb.transpose()).norm() == 0.0);
}

TEST_CASE("single class, single subclass gives the zero Laplacian") {
  const LaplacianSpec s = build_lb_single(layout_from_sizes({{{6}}}));
  CHECK(s.lb.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("multi-view Laplacian") {
  const LaplacianSpec mv = build_lb_multiview(example_layout_multiview());
  CHECK(mv.lb.rows() == 22);
  CHECK((mv.lb - mv.lb.transpose()).norm() == 0.0);
  CHECK(mv.lb.rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(numerical_rank(mv.lb) == 7);
  // Same-subclass entry, class 0 of size 4, subclass of size 2, V = 2, N = 11.
  CHECK(mv.lb(0, 1) == doctest::Approx(2.0 * 2.0 * 7.0 / (121.0 * 2.0)).epsilon(1e-14));
  CHECK(mv.lb(0, 11) == 0.0);
  CHECK(mv.lb(0, 15) == doctest::Approx(-2.0 / 121.0).epsilon(1e-14));
  CHECK(mv.lb(0, 4) == doctest::Approx(-2.0 / 121.0).epsilon(1e-14));

  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const LabelLayout l = random_layout(1, 3, 2, 30, rng);
    const Matrix single = build_lb_single(l).lb;
    const Matrix multi = build_lb_multiview(l).lb;
    CHECK((multi - 2.0 * single).cwiseAbs().maxCoeff() < 1e-14);
    const TargetMatrix a = laplacian_eigen_targets(build_lb_single(l));
    const TargetMatrix b = laplacian_eigen_targets(build_lb_multiview(l));
    CHECK(max_principal_angle(a.t.transpose(), b.t.transpose()) < 1e-8);
  }
}

TEST_CASE("Laplacian size cap") {
  const LabelLayout big = layout_from_sizes({{{1001}, {1000}}});
  CHECK(code_of([&] { build_lb_single(big); }) == ErrorCode::OracleTooLarge);
  CHECK(code_of([] { build_lb_single(example_layout_multiview()); }) == ErrorCode::LayoutInvalid);
}

TEST_CASE("between-class scatter: Laplacian and subclass-mean constructions agree") {
  Rng rng(12);
  for (int trial = 0; trial < 5; ++trial) {
    const LabelLayout l = random_layout(1, 2 + trial % 3, 1 + trial % 3, 45, rng);
    const Matrix x = centered(random_matrix(7, 45, rng));
    const ScatterMatrices s = scatter_matrices(x, l);
    CHECK((s.s_b - s.s_b_means).norm() <= 1e-8 * s.s_b.norm());
    CHECK((s.s_t - x * x.transpose()).norm() < 1e-10);
    CHECK((between_scatter_from_means(x, l) - s.s_b_means).norm() < 1e-12);
  }
  const LabelLayout l = example_layout_single();
  const ScatterMatrices zero = scatter_matrices(Matrix::Zero(3, 17), l);
  CHECK(zero.s_b.norm() == 0.0);
  CHECK(zero.s_b_means.norm() == 0.0);
  CHECK(zero.s_t.norm() == 0.0);

  const ScatterMatrices single = scatter_matrices(centered(random_matrix(3, 6, rng)), layout_from_sizes({{{6}}}));
  CHECK(single.s_b.norm() < 1e-14);
  CHECK(single.s_b_means.norm() < 1e-14);
}

TEST_CASE("eigen baseline on two Gaussians finds the mean direction") {
  Rng rng(4);
  Matrix x = random_matrix(3, 200, rng);
  x.leftCols(100).row(0).array() += 4.0;
  Labels y(100, 0);
  y.resize(200, 1);
  const LabelLayout l = LabelLayout::single(y, Labels(200, 0), 2, 1);
  const ProjectionModel m = sda_eig_baseline(x, l);
  REQUIRE(m.dim() == 1);
  const Matrix w = std::get<LinearProjection>(m.body).w;
  CHECK(std::abs(w(0, 0)) > 0.9);
  const Matrix emb = transform(m, x);
  const double m0 = emb.leftCols(100).mean(), m1 = emb.rightCols(100).mean();
  CHECK(std::abs(m0 - m1) > 3.0);
}

TEST_CASE("sorted-vectors baseline") {
  Rng rng(14);
  const LabelLayout l = random_layout(1, 3, 2, 60, rng);
  const Matrix x = random_matrix(10, 60, rng);
  const SortedVectorsResult r = sda_sorted_vectors_baseline(x, l, 1e-9, Normalization::None);
  REQUIRE(r.model.dim() == 5);
  for (Index i = 0; i < r.criterion.size(); ++i) {
    CHECK(r.criterion[i] >= 0.0);
    if (i) CHECK(r.criterion[i - 1] >= r.criterion[i]);
  }
  // Same span as the target-regression fit with d = C Z - 1 and alpha -> 0.
  Rng t_rng(3);
  const TargetMatrix t = make_targets_single(l, 5, t_rng);
  const ProjectionModel fast = fit_linear(x, t, 1e-9, Normalization::None);
  CHECK(max_principal_angle(std::get<LinearProjection>(fast.body).w,
                            std::get<LinearProjection>(r.model.body).w) < 1e-6);

  // Z = 1 on balanced two-class data: collinear with the Fisher direction.
  Matrix x2 = random_matrix(4, 80, rng);
  x2.leftCols(40).row(1).array() += 2.0;
  Labels y(40, 0);
  y.resize(80, 1);
  const LabelLayout l2 = LabelLayout::single(y, Labels(80, 0), 2, 1);
  const Matrix xc = centered(x2);
  const Vector diff = xc.leftCols(40).rowwise().mean() - xc.rightCols(40).rowwise().mean();
  const Vector fisher = cholesky_solve(xc * xc.transpose(), diff);
  const SortedVectorsResult r2 = sda_sorted_vectors_baseline(x2, l2, 1e-10);
  CHECK(max_principal_angle(std::get<LinearProjection>(r2.model.body).w, fisher) < 1e-6);
}
