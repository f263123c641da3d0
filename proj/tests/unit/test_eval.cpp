#include <set>

#include "helpers.hpp"

using namespace fastsda;
using namespace fastsda::test;

TEST_CASE("stratified folds") {
  Labels y;
  for (int c = 0; c < 3; ++c) y.insert(y.end(), 10, c);
  const std::vector<int> f = stratified_folds(y, 3, 5, 1);
  for (int fold = 0; fold < 5; ++fold)
    for (int c = 0; c < 3; ++c) {
      int count = 0;
      for (std::size_t i = 0; i < y.size(); ++i) count += f[i] == fold && y[i] == c;
      CHECK(count == 2);
    }
  CHECK(stratified_folds(y, 3, 5, 1) == f);
  CHECK(stratified_folds(y, 3, 5, 2) != f);

  Labels uneven;
  uneven.insert(uneven.end(), 23, 0);
  uneven.insert(uneven.end(), 9, 1);
  const std::vector<int> g = stratified_folds(uneven, 2, 5, 3);
  for (int fold = 0; fold < 5; ++fold)
    for (int c = 0; c < 2; ++c) {
      int count = 0, size = c == 0 ? 23 : 9;
      for (std::size_t i = 0; i < uneven.size(); ++i) count += g[i] == fold && uneven[i] == c;
      CHECK(std::abs(count - size / 5.0) <= 1.0);
    }

  CHECK(code_of([] { stratified_folds({0, 0, 0, 1}, 2, 3, 0); }) == ErrorCode::ClassTooSmall);
}

TEST_CASE("rotation splits partition the samples") {
  Labels y;
  for (int c = 0; c < 2; ++c) y.insert(y.end(), 15, c);
  const std::vector<int> f = stratified_folds(y, 2, 5, 0);
  std::set<int> test_folds;
  for (int r = 0; r < 5; ++r) {
    const Split s = rotation_split(f, r, 5);
    std::vector<int> seen(y.size(), 0);
    for (Index i : s.train) ++seen[static_cast<std::size_t>(i)];
    for (Index i : s.validation) ++seen[static_cast<std::size_t>(i)];
    for (Index i : s.test) ++seen[static_cast<std::size_t>(i)];
    for (int c : seen) CHECK(c == 1);
    CHECK(s.train.size() == 18);
    test_folds.insert(f[static_cast<std::size_t>(s.test.front())]);
    CHECK(f[static_cast<std::size_t>(s.test.front())] != f[static_cast<std::size_t>(s.validation.front())]);
  }
  CHECK(test_folds.size() == 5);
}

TEST_CASE("knn_predict") {
  Matrix train(1, 5);
  train << 0, 1, 2, 3, 4;
  const Labels tl{0, 0, 0, 1, 1};
  Matrix q(1, 1);
  q << 3;
  CHECK(knn_predict(train, tl, q, 1) == Labels{1});
  CHECK(knn_predict(train, tl, q, 5) == Labels{0});

  // 2-2 tie: class 1 is closer on average.
  Matrix t2(1, 4);
  t2 << -3, -2.5, 1, 1.5;
  const Labels l2{0, 0, 1, 1};
  Matrix origin = Matrix::Zero(1, 1);
  CHECK(knn_predict(t2, l2, origin, 4) == Labels{1});
  // Exact tie on distance: smaller label wins.
  Matrix t3(1, 2);
  t3 << -1, 1;
  CHECK(knn_predict(t3, Labels{1, 0}, origin, 2) == Labels{0});

  CHECK(code_of([&] { knn_predict(train, tl, q, 6); }) == ErrorCode::KTooLarge);
  CHECK(accuracy({0, 1, 1, 0}, {0, 1, 0, 0}) == doctest::Approx(0.75));
}

TEST_CASE("method names") {
  for (Method m : {Method::FastLinear, Method::FastKernel, Method::FastApprox, Method::MvLinear, Method::MvKernel,
                   Method::OracleSda, Method::OracleSorted})
    CHECK(parse_method(to_string(m)) == m);
  CHECK(parse_method("sv-linear") == Method::FastLinear);
  CHECK(parse_method("mv-kernel") == Method::MvKernel);
  CHECK(is_multiview(Method::MvLinear));
  CHECK_FALSE(is_multiview(Method::OracleSorted));
}

TEST_CASE("gaussian mixture generator") {
  MixtureSpec spec;
  spec.classes = 3;
  spec.subclasses = 2;
  spec.dims = {4, 6};
  spec.samples = 60;
  spec.seed = 3;
  const Mixture m = gaussian_mixture(spec);
  CHECK(m.data.n_views() == 2);
  CHECK(m.data.size() == 60);
  CHECK(m.data.views[1].dim() == 6);
  CHECK(m.components.size() == 60);
  CHECK(gaussian_mixture(spec).data.views[0].x == m.data.views[0].x);
}

TEST_CASE("run_experiment is deterministic and well-formed") {
  MixtureSpec spec;
  spec.classes = 3;
  spec.dims = {8};
  spec.samples = 120;
  spec.seed = 5;
  const Mixture mix = gaussian_mixture(spec);
  EvalConfig cfg;
  cfg.z_grid = {1, 2};
  cfg.alpha_grid = {0.1, 1.0};
  cfg.seed = 9;
  for (Method method : {Method::FastLinear, Method::FastKernel, Method::FastApprox, Method::OracleSda,
                        Method::OracleSorted}) {
    const EvalReport a = run_experiment(mix.data, method, cfg);
    REQUIRE(a.folds.size() == 5);
    for (const FoldResult& f : a.folds) {
      CHECK(f.test_accuracy >= 0.0);
      CHECK(f.test_accuracy <= 1.0);
      CHECK(f.dim >= 1);
    }
    CHECK(a.mean_accuracy() > 0.5);
    const EvalReport b = run_experiment(mix.data, method, cfg);
    for (std::size_t i = 0; i < 5; ++i) {
      CHECK(a.folds[i].test_accuracy == b.folds[i].test_accuracy);
      CHECK(a.folds[i].z == b.folds[i].z);
      CHECK(a.folds[i].alpha == b.folds[i].alpha);
    }
  }
  cfg.jobs = 3;
  const EvalReport threaded = run_experiment(mix.data, Method::FastLinear, cfg);
  cfg.jobs = 1;
  const EvalReport serial = run_experiment(mix.data, Method::FastLinear, cfg);
  for (std::size_t i = 0; i < 5; ++i) CHECK(threaded.folds[i].test_accuracy == serial.folds[i].test_accuracy);
}

TEST_CASE("multi-view experiment") {
  MixtureSpec spec;
  spec.classes = 2;
  spec.dims = {5, 7};
  spec.samples = 80;
  spec.seed = 6;
  const Mixture mix = gaussian_mixture(spec);
  EvalConfig cfg;
  cfg.z_grid = {2};
  cfg.alpha_grid = {1.0};
  for (Method m : {Method::MvLinear, Method::MvKernel}) {
    const EvalReport r = run_experiment(mix.data, m, cfg);
    CHECK(r.folds.size() == 5);
    CHECK(r.mean_accuracy() > 0.5);
    for (const FoldResult& f : r.folds) CHECK(f.dim <= 7);
  }
}

TEST_CASE("benchmark rows") {
  BenchConfig cfg;
  cfg.d_grid = {6};
  cfg.n_grid = {400};
  cfg.classes = 2;
  cfg.subclasses = 1;
  cfg.repetitions = 1;
  const std::vector<BenchRow> rows = benchmark_speed(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].t_fast > 0.0);
  CHECK(rows[0].t_oracle > 0.0);
  MESSAGE("D=6, N=400 ratio " << rows[0].ratio);
}
