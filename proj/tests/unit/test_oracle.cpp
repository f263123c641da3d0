#include "helpers.hpp"

using namespace fastsda;
using namespace fastsda::test;

TEST_CASE("oracle passes on the worked layouts") {
  Rng rng(1);
  const OracleReport single = check_laplacian(build_lb_single(example_layout_single()), rng);
  CHECK(single.passed());
  CHECK(single.rank == 3);
  const OracleReport mv = check_laplacian(build_lb_multiview(example_layout_multiview()), rng);
  CHECK(mv.passed());
  CHECK(mv.rank == 7);
}

TEST_CASE("oracle flags a corrupted Laplacian") {
  Rng rng(2);
  LaplacianSpec spec = build_lb_single(example_layout_single());
  spec.lb(0, 16) += 1e-4;
  spec.lb(16, 0) += 1e-4;
  const OracleReport r = check_laplacian(spec, rng);
  CHECK_FALSE(r.passed());
  for (const CheckResult& c : r.checks)
    if (c.name == "row_sums") CHECK_FALSE(c.pass);

  LaplacianSpec asym = build_lb_single(example_layout_single());
  asym.lb(0, 16) += 1e-4;
  CHECK_FALSE(check_laplacian(asym, rng).passed());
}

TEST_CASE("random layouts keep every subclass non-empty") {
  Rng rng(3);
  for (int i = 0; i < 20; ++i) {
    const LabelLayout l = random_layout(3, 4, 3, 40, rng);
    CHECK(l.n_samples() == 40);
    for (int v = 0; v < 3; ++v)
      for (int c = 0; c < 4; ++c)
        for (int h = 0; h < 3; ++h) CHECK(l.subclass_size(v, c, h) >= 1);
  }
  CHECK(code_of([&] { random_layout(1, 4, 3, 11, rng); }) == ErrorCode::LayoutInvalid);
  CHECK(code_of([] { layout_from_sizes({{{2, 2}}, {{3, 2}}}); }) == ErrorCode::LayoutInvalid);
}
