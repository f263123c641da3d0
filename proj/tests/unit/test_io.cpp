#include <fstream>
#include <sstream>

#include "helpers.hpp"

using namespace fastsda;
using namespace fastsda::test;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("fastsda_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("parse_csv") {
  const DataView v = parse_csv("1,2,0\n3,4,1\n5,6,0\n", "mem");
  CHECK(v.size() == 3);
  CHECK(v.dim() == 2);
  CHECK(v.x(1, 2) == 6.0);
  CHECK(v.labels == Labels{0, 1, 0});

  const DataView s = parse_csv("a,b,class\n0.5,1,g\n0.1,2,b\n0.3,3,g\n", "mem");
  CHECK(s.labels == Labels{0, 1, 0});
  CHECK(s.label_names == std::vector<std::string>{"g", "b"});
  CHECK(s.size() == 3);

  const DataView ints = parse_csv("# comment\n1,5\n\n2,3\n3,5\n", "mem");
  CHECK(ints.labels == Labels{1, 0, 1});

  try {
    parse_csv("1,2,0\n3,0\n", "mem");
    FAIL("ragged input accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RaggedRows);
    CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
  }
  try {
    parse_csv("1,2,0\n3,x,1\n", "mem");
    FAIL("bad number accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("mem:2") != std::string::npos);
  }
  CHECK(code_of([] { parse_csv("# only a comment\n", "mem"); }) == ErrorCode::EmptyFile);
}

TEST_CASE("csv round trip and stable label mapping") {
  const fs::path dir = scratch_dir("csv");
  Rng rng(1);
  DataView v;
  v.x = random_matrix(3, 6, rng);
  v.labels = {1, 0, 1, 2, 2, 0};
  v.n_classes = 3;
  v.label_names = {"x", "y", "z"};
  save_csv(v, dir / "a.csv");
  const DataView back = load_csv(dir / "a.csv");
  CHECK(back.x == v.x);
  const DataView again = load_csv(dir / "a.csv");
  CHECK(back.labels == again.labels);
  CHECK(back.name == "a");

  write_file(dir / "features.csv", "1,2\n3,4\n5,6\n");
  write_file(dir / "labels.csv", "b\na\nb\n");
  const DataView sep = load_csv(dir / "features.csv", LabelSource::separate(dir / "labels.csv"));
  CHECK(sep.dim() == 2);
  CHECK(sep.labels == Labels{0, 1, 0});
}

TEST_CASE("load_multiview") {
  const fs::path dir = scratch_dir("mv");
  write_file(dir / "v1.csv", "1,2\n3,4\n5,6\n7,8\n");
  write_file(dir / "v2.csv", "1\n2\n3\n4\n");
  write_file(dir / "short.csv", "1\n2\n3\n");
  write_file(dir / "labels.txt", "0\n1\n0\n1\n");
  write_file(dir / "ok.txt", "# two views\nview a v1.csv\nview b v2.csv\nlabels labels.txt\n");
  const MultiViewDataset d = load_multiview(dir / "ok.txt");
  CHECK(d.n_views() == 2);
  CHECK(d.size() == 4);
  CHECK(d.views[0].dim() == 2);
  CHECK(d.views[1].dim() == 1);
  CHECK(d.concatenated().dim() == 3);

  write_file(dir / "bad.txt", "view a v1.csv\nview b short.csv\nlabels labels.txt\n");
  CHECK(code_of([&] { load_multiview(dir / "bad.txt"); }) == ErrorCode::ViewShapeMismatch);
  write_file(dir / "nolabels.txt", "view a v1.csv\n");
  CHECK(code_of([&] { load_multiview(dir / "nolabels.txt"); }) == ErrorCode::MissingLabels);
}

TEST_CASE("prepared multi-view robot data has the expected shape") {
  const fs::path manifest = fs::path(FASTSDA_DATA_DIR) / "robot" / "manifest.txt";
  if (!fs::exists(manifest)) {
    MESSAGE("robot data not prepared; skipped");
    return;
  }
  const MultiViewDataset d = load_multiview(manifest);
  CHECK(d.n_views() == 6);
  CHECK(d.size() == 205);
  CHECK(d.n_classes() == 4);
  for (const DataView& v : d.views) CHECK(v.dim() == 15);
}

TEST_CASE("model files round trip") {
  Rng rng(4);
  const LabelLayout l = random_layout(1, 3, 2, 40, rng);
  const Matrix x = random_matrix(5, 40, rng);
  const TargetMatrix t = make_targets_single(l, 5, rng);
  const Matrix test = random_matrix(5, 9, rng);

  ProjectionModel lin = fit_linear(x, t, 0.5);
  lin.preprocess = Preprocessor::fit(random_matrix(5, 40, rng), 0.9);
  lin.body = fit_linear(lin.preprocess->apply(x), t, 0.5).body;
  KernelConfig cfg;
  cfg.sigma = 1.0 / 3.0;
  const ProjectionModel ker = fit_kernel_model(x, t, cfg, 0.5);
  cfg.approx_centering = ApproxCentering::PrototypeMean;
  cfg.prototype_count = 10;
  const ProjectionModel approx = fit_approx_model(x, t, cfg, 0.5, rng);

  for (const ProjectionModel& m : {lin, ker, approx}) {
    std::stringstream ss;
    write_model(ss, m, "fastsda fit --test");
    const std::string text = ss.str();
    CHECK(text.rfind(std::string("FASTSDA-MODEL v1 ") + m.variant_name() + "\n", 0) == 0);
    const AnyModel back = read_model(ss);
    const ProjectionModel& pm = std::get<ProjectionModel>(back);
    CHECK((transform(pm, test) - transform(m, test)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(pm.normalization == m.normalization);
  }
  std::stringstream ks;
  write_model(ks, ker);
  CHECK(std::get<KernelProjection>(std::get<ProjectionModel>(read_model(ks)).body).cfg.sigma == 1.0 / 3.0);

  const std::vector<Matrix> views{x, random_matrix(3, 40, rng)};
  const LabelLayout l2 = random_layout(2, 3, 2, 40, rng);
  const std::vector<Index> dims{5, 3};
  const TargetMatrix t2 = make_targets_multiview(l2, multiview_target_cap(l2, dims), rng);
  const MultiViewModel mv = fit_multiview_kernel(views, t2, KernelConfig{}, 1.0);
  std::stringstream ms;
  write_model(ms, mv);
  const MultiViewModel mv_back = std::get<MultiViewModel>(read_model(ms));
  const std::vector<Matrix> test_views{test, random_matrix(3, 9, rng)};
  CHECK((transform(mv_back, test_views) - transform(mv, test_views)).cwiseAbs().maxCoeff() <= 1e-12);

  const fs::path dir = scratch_dir("model");
  save_model(ker, dir / "k.model", "inv");
  CHECK(model_variant(load_model(dir / "k.model")) == "kernel");
}

TEST_CASE("damaged model files are rejected") {
  Rng rng(5);
  const LabelLayout l = random_layout(1, 2, 2, 20, rng);
  const ProjectionModel m = fit_linear(random_matrix(3, 20, rng), make_targets_single(l, 3, rng), 1.0);
  std::stringstream ss;
  write_model(ss, m);
  std::string text = ss.str();

  std::string tampered = text;
  tampered.replace(tampered.find("v1"), 2, "v9");
  std::istringstream a(tampered);
  CHECK(code_of([&] { read_model(a); }) == ErrorCode::VersionMismatch);

  std::string truncated = text.substr(0, text.size() * 2 / 3);
  std::istringstream b(truncated);
  CHECK(code_of([&] { read_model(b); }) == ErrorCode::CorruptBlock);
}
