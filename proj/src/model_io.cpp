#include "fastsda/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

constexpr const char* kMagic = "FASTSDA-MODEL";
constexpr const char* kVersion = "v1";

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_matrix(std::ostream& out, const char* name, const Matrix& m) {
  out << "matrix " << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << fmt(m(i, j));
    out << '\n';
  }
}

const char* to_string(PrototypeStrategy s) {
  return s == PrototypeStrategy::RandomTrain ? "random-train" : "kmeans-all";
}

const char* to_string(ApproxCentering c) {
  return c == ApproxCentering::None ? "none" : "prototype-mean";
}

void write_body(std::ostream& out, const ProjectionModel& m) {
  out << "normalization " << to_string(m.normalization) << '\n';
  if (m.preprocess) {
    const Preprocessor& p = *m.preprocess;
    out << "preprocess " << (p.pca.size() == 0 ? "standardize" : "standardize-pca") << '\n';
    write_matrix(out, "pre_mean", p.mean);
    write_matrix(out, "pre_scale", p.scale);
    if (p.pca.size() != 0) {
      write_matrix(out, "pre_pca_mean", p.pca_mean);
      write_matrix(out, "pre_pca", p.pca);
    }
  } else {
    out << "preprocess none\n";
  }
  if (const auto* b = std::get_if<LinearProjection>(&m.body)) {
    write_matrix(out, "W", b->w);
    write_matrix(out, "mean", b->mean);
  } else if (const auto* b = std::get_if<KernelProjection>(&m.body)) {
    out << "sigma " << fmt(b->cfg.sigma) << '\n';
    write_matrix(out, "A", b->a);
    write_matrix(out, "train_x", b->train_x);
    write_matrix(out, "row_means", b->stats.row_means);
    out << "grand_mean " << fmt(b->stats.grand_mean) << '\n';
  } else {
    const auto& a = std::get<ApproxKernelProjection>(m.body);
    out << "sigma " << fmt(a.cfg.sigma) << '\n';
    out << "prototype_strategy " << to_string(a.cfg.prototype_strategy) << '\n';
    out << "approx_centering " << to_string(a.cfg.approx_centering) << '\n';
    write_matrix(out, "A", a.a);
    write_matrix(out, "prototypes", a.prototypes);
    write_matrix(out, "row_means", a.stats.row_means);
    out << "grand_mean " << fmt(a.stats.grand_mean) << '\n';
  }
}

class Reader {
 public:
  Reader(std::istream& in, std::string origin) : in_(in), origin_(std::move(origin)) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::CorruptBlock, origin_ + ":" + std::to_string(line_no_) + ": " + what);
  }

  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line.front() == '#') continue;
      std::istringstream ss(line);
      tokens.clear();
      for (std::string t; ss >> t;) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  std::vector<std::string> expect_line() {
    std::vector<std::string> t;
    if (!next(t)) fail("unexpected end of file");
    return t;
  }

  std::string key(const char* name) {
    const auto t = expect_line();
    if (t.size() != 2 || t[0] != name) fail(std::string("expected '") + name + " <value>'");
    return t[1];
  }

  double number(const std::string& s) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("bad number '" + s + "'");
    return v;
  }

  Index count(const std::string& s) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 0) fail("bad count '" + s + "'");
    return static_cast<Index>(v);
  }

  Matrix matrix(const char* name) {
    const auto h = expect_line();
    if (h.size() != 4 || h[0] != "matrix" || h[1] != name) {
      fail(std::string("expected 'matrix ") + name + " <rows> <cols>'");
    }
    const Index rows = count(h[2]);
    const Index cols = count(h[3]);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i) {
      const auto r = expect_line();
      if (static_cast<Index>(r.size()) != cols) {
        fail(std::string("matrix ") + name + " row " + std::to_string(i) + " has " +
             std::to_string(r.size()) + " values, expected " + std::to_string(cols));
      }
      for (Index j = 0; j < cols; ++j) m(i, j) = number(r[static_cast<std::size_t>(j)]);
    }
    return m;
  }

  Vector vector(const char* name) {
    const Matrix m = matrix(name);
    if (m.cols() != 1) fail(std::string(name) + " must be a column");
    return m.col(0);
  }

 private:
  std::istream& in_;
  std::string origin_;
  std::size_t line_no_ = 0;
};

template <typename F>
auto parse_enum(Reader& r, const std::string& s, F parse) {
  try {
    return parse(s);
  } catch (const Error&) {
    r.fail("unknown value '" + s + "'");
  }
}

ProjectionModel read_body(Reader& r, const std::string& variant) {
  ProjectionModel m;
  m.normalization = parse_enum(r, r.key("normalization"), parse_normalization);
  const std::string pre = r.key("preprocess");
  if (pre != "none") {
    if (pre != "standardize" && pre != "standardize-pca") r.fail("unknown preprocess '" + pre + "'");
    Preprocessor p;
    p.mean = r.vector("pre_mean");
    p.scale = r.vector("pre_scale");
    if (pre == "standardize-pca") {
      p.pca_mean = r.vector("pre_pca_mean");
      p.pca = r.matrix("pre_pca");
    }
    m.preprocess = std::move(p);
  }
  if (variant == "linear") {
    LinearProjection b;
    b.w = r.matrix("W");
    b.mean = r.vector("mean");
    if (b.mean.size() != b.w.rows()) r.fail("mean length differs from W rows");
    m.body = std::move(b);
  } else if (variant == "kernel") {
    KernelProjection b;
    b.cfg.sigma = r.number(r.key("sigma"));
    b.a = r.matrix("A");
    b.train_x = r.matrix("train_x");
    b.stats.row_means = r.vector("row_means");
    b.stats.grand_mean = r.number(r.key("grand_mean"));
    if (b.a.rows() != b.train_x.cols() || b.stats.row_means.size() != b.a.rows()) {
      r.fail("kernel blocks disagree on the training size");
    }
    m.body = std::move(b);
  } else {
    ApproxKernelProjection b;
    b.cfg.mode = KernelMode::Approximate;
    b.cfg.sigma = r.number(r.key("sigma"));
    const std::string strategy = r.key("prototype_strategy");
    if (strategy == "random-train") b.cfg.prototype_strategy = PrototypeStrategy::RandomTrain;
    else if (strategy == "kmeans-all") b.cfg.prototype_strategy = PrototypeStrategy::KMeansAll;
    else r.fail("unknown prototype strategy '" + strategy + "'");
    const std::string centering = r.key("approx_centering");
    if (centering == "none") b.cfg.approx_centering = ApproxCentering::None;
    else if (centering == "prototype-mean") b.cfg.approx_centering = ApproxCentering::PrototypeMean;
    else r.fail("unknown approx centering '" + centering + "'");
    b.a = r.matrix("A");
    b.prototypes = r.matrix("prototypes");
    b.cfg.prototype_count = b.prototypes.cols();
    b.stats.row_means = r.vector("row_means");
    b.stats.grand_mean = r.number(r.key("grand_mean"));
    if (b.a.rows() != b.prototypes.cols()) r.fail("A rows differ from prototype count");
    m.body = std::move(b);
  }
  return m;
}

}  // namespace

std::string model_variant(const AnyModel& model) {
  if (const auto* p = std::get_if<ProjectionModel>(&model)) return p->variant_name();
  return std::get<MultiViewModel>(model).variant_name();
}

void write_model(std::ostream& out, const AnyModel& model, const std::string& invocation) {
  out << kMagic << ' ' << kVersion << ' ' << model_variant(model) << '\n';
  out << "# invocation: " << invocation << '\n';
  if (const auto* p = std::get_if<ProjectionModel>(&model)) {
    write_body(out, *p);
    return;
  }
  const auto& mv = std::get<MultiViewModel>(model);
  out << "views " << mv.n_views() << '\n';
  out << "fusion " << to_string(mv.fusion) << '\n';
  for (int v = 0; v < mv.n_views(); ++v) {
    out << "view " << v << '\n';
    write_body(out, mv.views[static_cast<std::size_t>(v)]);
  }
}

AnyModel read_model(std::istream& in, const std::string& origin) {
  std::string header;
  if (!std::getline(in, header)) throw Error(ErrorCode::VersionMismatch, origin + ": empty model file");
  std::istringstream hs(header);
  std::string magic, version, variant, extra;
  hs >> magic >> version >> variant >> extra;
  if (magic != kMagic || version != kVersion || !extra.empty()) {
    throw Error(ErrorCode::VersionMismatch,
                origin + ": expected header '" + kMagic + " " + kVersion + " <variant>', got '" + header + "'");
  }
  Reader r(in, origin);
  if (variant == "linear" || variant == "kernel" || variant == "approx-kernel") {
    return read_body(r, variant);
  }
  if (variant != "mv-linear" && variant != "mv-kernel") {
    throw Error(ErrorCode::CorruptBlock, origin + ": unknown model variant '" + variant + "'");
  }
  MultiViewModel mv;
  const Index views = r.count(r.key("views"));
  if (views < 1) r.fail("multi-view model needs at least one view");
  mv.fusion = parse_enum(r, r.key("fusion"), parse_fusion);
  for (Index v = 0; v < views; ++v) {
    if (r.count(r.key("view")) != v) r.fail("views out of order");
    mv.views.push_back(read_body(r, variant == "mv-linear" ? "linear" : "kernel"));
  }
  return mv;
}

void save_model(const AnyModel& model, const std::filesystem::path& path,
                const std::string& invocation) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_model(out, model, invocation);
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

AnyModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_model(in, path.string());
}

}  // namespace fastsda
