// fastsda command-line front end.
//
// Exit codes: 0 success, 1 oracle check failed, 2 invalid arguments,
// 3 data error, 4 numerical failure.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fastsda/fastsda.hpp"

namespace fs = std::filesystem;
using namespace fastsda;

namespace {

constexpr int kExitOracleFailed = 1;
constexpr int kExitArguments = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

std::string g_invocation;

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  out << "# invocation: " << g_invocation << '\n';
  return out;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct DataArgs {
  std::string dataset;
  std::string manifest;
  std::string labels;
  std::string data_dir = std::getenv("FASTSDA_DATA") ? std::getenv("FASTSDA_DATA") : "data";

  void add(CLI::App* app) {
    app->add_option("--dataset", dataset, "CSV file, or a name looked up in --data-dir");
    app->add_option("--manifest", manifest, "multi-view manifest file");
    app->add_option("--labels", labels, "label file when the CSV has no label column");
    app->add_option("--data-dir", data_dir, "directory searched for named datasets")->capture_default_str();
  }

  MultiViewDataset load() const {
    if (!manifest.empty()) return load_multiview(manifest);
    if (dataset.empty()) throw Error(ErrorCode::InvalidArgument, "give --dataset or --manifest");
    fs::path p(dataset);
    if (!fs::exists(p)) {
      const fs::path dir(data_dir);
      if (fs::exists(dir / (dataset + ".csv"))) {
        p = dir / (dataset + ".csv");
      } else if (fs::exists(dir / dataset / "manifest.txt")) {
        return load_multiview(dir / dataset / "manifest.txt");
      } else {
        throw Error(ErrorCode::IoError, "no dataset '" + dataset + "' (looked in " + dir.string() + ")");
      }
    }
    const LabelSource src = labels.empty() ? LabelSource::last_column() : LabelSource::separate(labels);
    DataView v = load_csv(p, src);
    if (fs::path(dataset).extension().empty()) v.name = dataset;
    return MultiViewDataset::single(std::move(v));
  }
};

struct ModelArgs {
  std::string method = "sv-linear";
  int z = 2;
  double alpha = 1.0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string normalization = "l2";
  std::string solver = "direct";
  Index prototypes = 100;
  std::string prototype_strategy = "kmeans-all";
  std::string approx_centering = "none";
  double pca_energy = 0.98;
  std::string fusion = "concat";

  void add(CLI::App* app, bool single_values) {
    if (single_values) {
      app->add_option("--method", method, "sv-linear | sv-kernel | sv-approx | mv-linear | mv-kernel")
          ->capture_default_str();
      app->add_option("--z", z, "subclasses per class")->capture_default_str();
      app->add_option("--alpha", alpha, "ridge parameter")->capture_default_str();
    }
    app->add_option("--sigma", sigma, "RBF width; 0 selects the mean training distance")->capture_default_str();
    app->add_option("--seed", seed, "random seed")->capture_default_str();
    app->add_option("--normalization", normalization, "l2 | orthogonal | none")->capture_default_str();
    app->add_option("--solver", solver, "kernel solver: direct | full-gram")->capture_default_str();
    app->add_option("--prototypes", prototypes, "prototype count for sv-approx")->capture_default_str();
    app->add_option("--prototype-strategy", prototype_strategy, "random-train | kmeans-all")->capture_default_str();
    app->add_option("--approx-centering", approx_centering, "none | prototype-mean")->capture_default_str();
    app->add_option("--pca-energy", pca_energy, "PCA energy for single-view methods; 0 disables")
        ->capture_default_str();
    app->add_option("--fusion", fusion, "multi-view embedding fusion: concat | mean")->capture_default_str();
  }

  KernelConfig kernel() const {
    KernelConfig k;
    k.sigma = sigma;
    k.prototype_count = prototypes;
    if (prototype_strategy == "random-train") k.prototype_strategy = PrototypeStrategy::RandomTrain;
    else if (prototype_strategy == "kmeans-all") k.prototype_strategy = PrototypeStrategy::KMeansAll;
    else throw Error(ErrorCode::InvalidArgument, "unknown prototype strategy '" + prototype_strategy + "'");
    if (approx_centering == "none") k.approx_centering = ApproxCentering::None;
    else if (approx_centering == "prototype-mean") k.approx_centering = ApproxCentering::PrototypeMean;
    else throw Error(ErrorCode::InvalidArgument, "unknown approx centering '" + approx_centering + "'");
    return k;
  }
};

std::vector<Labels> cluster_views(const std::vector<Matrix>& xs, const Labels& y, int n_classes, int z,
                                  std::uint64_t seed) {
  std::vector<Labels> out;
  for (std::size_t v = 0; v < xs.size(); ++v) {
    DataView dv;
    dv.x = xs[v];
    dv.labels = y;
    dv.n_classes = n_classes;
    dv.view_index = static_cast<int>(v);
    out.push_back(assign_subclasses(dv, z, Rng(derive_seed(seed, {2, v})), kDefaultKMeansIters).labels);
  }
  return out;
}

// ---- cluster ---------------------------------------------------------------

int cmd_cluster(const DataArgs& data, int z, std::uint64_t seed, const std::string& out_path) {
  const MultiViewDataset ds = data.load();
  std::vector<Matrix> xs;
  for (const DataView& v : ds.views) xs.push_back(standardize(v.x).x);
  const std::vector<Labels> subs = cluster_views(xs, ds.labels(), ds.n_classes(), z, seed);
  std::ofstream out = open_output(out_path);
  out << "sample\tclass";
  for (std::size_t v = 0; v < subs.size(); ++v) out << "\tsubclass_view" << v;
  out << '\n';
  for (Index i = 0; i < ds.size(); ++i) {
    out << i << '\t' << ds.labels()[static_cast<std::size_t>(i)];
    for (const Labels& s : subs) out << '\t' << s[static_cast<std::size_t>(i)];
    out << '\n';
  }
  std::cout << "clustered " << ds.size() << " samples into " << z << " subclasses per class in "
            << subs.size() << " view(s); wrote " << out_path << '\n';
  return 0;
}

// ---- fit -------------------------------------------------------------------

int cmd_fit(const DataArgs& data, const ModelArgs& args, const std::string& out_path) {
  const Method method = parse_method(args.method);
  const Normalization norm = parse_normalization(args.normalization);
  const MultiViewDataset ds = data.load();
  const int C = ds.n_classes();
  std::ostringstream log;
  log << "# invocation: " << g_invocation << '\n';
  log << "dataset\t" << ds.name << "\nmethod\t" << to_string(method) << "\nseed\t" << args.seed
      << "\nz\t" << args.z << "\nalpha\t" << fmt(args.alpha) << '\n';

  AnyModel model;
  double cluster_seconds = 0.0;
  double fit_seconds = 0.0;
  Index d = 0;
  if (is_multiview(method)) {
    std::vector<Matrix> xs;
    std::vector<Preprocessor> pres;
    for (const DataView& v : ds.views) {
      pres.push_back(Preprocessor::fit(v.x, 0.0));
      xs.push_back(pres.back().apply(v.x));
    }
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<Labels> subs = cluster_views(xs, ds.labels(), C, args.z, args.seed);
    cluster_seconds = elapsed(t0);
    t0 = std::chrono::steady_clock::now();
    const LabelLayout layout = LabelLayout::multiview(ds.labels(), subs, C, args.z);
    std::vector<Index> dims;
    for (const Matrix& x : xs) dims.push_back(method == Method::MvKernel ? x.cols() : x.rows());
    Rng rng(derive_seed(args.seed, {3}));
    const TargetMatrix t = make_targets_multiview(layout, multiview_target_cap(layout, dims), rng);
    MultiViewModel mv = method == Method::MvLinear
                            ? fit_multiview_linear(xs, t, args.alpha, norm)
                            : fit_multiview_kernel(xs, t, args.kernel(), args.alpha, norm,
                                                   parse_kernel_solver(args.solver));
    fit_seconds = elapsed(t0);
    for (std::size_t v = 0; v < pres.size(); ++v) mv.views[v].preprocess = pres[v];
    mv.fusion = parse_fusion(args.fusion);
    d = mv.dim();
    model = std::move(mv);
  } else {
    if (method == Method::OracleSda || method == Method::OracleSorted) {
      throw Error(ErrorCode::InvalidArgument, "fit supports sv-linear, sv-kernel, sv-approx, mv-linear, mv-kernel");
    }
    const DataView all = ds.n_views() == 1 ? ds.views.front() : ds.concatenated();
    const Preprocessor pre = Preprocessor::fit(all.x, args.pca_energy);
    const Matrix x = pre.apply(all.x);
    auto t0 = std::chrono::steady_clock::now();
    const Labels sub = cluster_views({x}, ds.labels(), C, args.z, args.seed).front();
    cluster_seconds = elapsed(t0);
    t0 = std::chrono::steady_clock::now();
    const LabelLayout layout = LabelLayout::single(ds.labels(), sub, C, args.z);
    Rng rng(derive_seed(args.seed, {3}));
    KernelConfig kc = args.kernel();
    ProjectionModel pm;
    if (method == Method::FastLinear) {
      const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, x.rows()), rng);
      pm = fit_linear(x, t, args.alpha, norm);
    } else if (method == Method::FastKernel) {
      const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, x.cols()), rng);
      pm = fit_kernel_model(x, t, kc, args.alpha, norm, parse_kernel_solver(args.solver));
    } else {
      kc.prototype_count = std::min(kc.prototype_count, x.cols());
      const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, kc.prototype_count), rng);
      Rng proto_rng(derive_seed(args.seed, {4}));
      pm = fit_approx_model(x, t, kc, args.alpha, proto_rng, norm);
    }
    fit_seconds = elapsed(t0);
    pm.preprocess = pre;
    d = pm.dim();
    model = std::move(pm);
  }
  save_model(model, out_path, g_invocation);
  log << "variant\t" << model_variant(model) << "\nd\t" << d << "\ncluster_seconds\t" << fmt(cluster_seconds, "%.6f")
      << "\nfit_seconds\t" << fmt(fit_seconds, "%.6f") << "\nmodel\t" << out_path << '\n';
  std::ofstream log_file(out_path + ".log");
  log_file << log.str();
  std::cout << "fitted " << model_variant(model) << " model with d = " << d << " in " << fmt(fit_seconds, "%.4f")
            << " s; wrote " << out_path << '\n';
  return 0;
}

// ---- transform -------------------------------------------------------------

int cmd_transform(const DataArgs& data, const std::string& features, const std::string& model_path,
                  const std::string& out_path) {
  const AnyModel model = load_model(model_path);
  Matrix y;
  if (const auto* pm = std::get_if<ProjectionModel>(&model)) {
    Matrix x;
    if (!features.empty()) {
      x = load_feature_csv(features);
    } else {
      const MultiViewDataset ds = data.load();
      x = ds.n_views() == 1 ? ds.views.front().x : ds.concatenated().x;
    }
    y = transform(*pm, x);
  } else {
    if (data.manifest.empty()) throw Error(ErrorCode::InvalidArgument, "multi-view models need --manifest");
    const MultiViewDataset ds = data.load();
    std::vector<Matrix> xs;
    for (const DataView& v : ds.views) xs.push_back(v.x);
    y = transform(std::get<MultiViewModel>(model), xs);
  }
  std::ofstream out = open_output(out_path);
  for (Index j = 0; j < y.rows(); ++j) out << (j ? "\t" : "") << 'y' << j;
  out << '\n';
  for (Index i = 0; i < y.cols(); ++i) {
    for (Index j = 0; j < y.rows(); ++j) out << (j ? "\t" : "") << fmt(y(j, i));
    out << '\n';
  }
  std::cout << "embedded " << y.cols() << " samples into " << y.rows() << " dimensions; wrote " << out_path
            << '\n';
  return 0;
}

// ---- eval ------------------------------------------------------------------

int cmd_eval(const DataArgs& data, const ModelArgs& args, const std::vector<std::string>& methods,
             const std::vector<int>& z_grid, const std::vector<double>& alpha_grid, int folds, int knn_k,
             int jobs, const std::string& out_prefix) {
  const MultiViewDataset ds = data.load();
  EvalConfig cfg;
  cfg.seed = args.seed;
  cfg.folds = folds;
  cfg.knn_k = knn_k;
  cfg.jobs = jobs;
  if (!z_grid.empty()) cfg.z_grid = z_grid;
  if (!alpha_grid.empty()) cfg.alpha_grid = alpha_grid;
  cfg.pca_energy = args.pca_energy;
  cfg.normalization = parse_normalization(args.normalization);
  cfg.kernel_solver = parse_kernel_solver(args.solver);
  cfg.kernel = args.kernel();
  cfg.kernel.prototype_count = 0;
  cfg.default_prototypes = args.prototypes;
  cfg.fusion = parse_fusion(args.fusion);
  std::vector<Method> ms;
  for (const std::string& m : methods) ms.push_back(parse_method(m));
  if (ms.empty()) ms.push_back(Method::FastLinear);

  const std::vector<EvalReport> reports = run_experiments(ds, ms, cfg);

  std::ofstream tsv = open_output(out_prefix + ".tsv");
  tsv << "dataset\tmethod\trotation\tz\talpha\tvalidation_accuracy\ttest_accuracy\tdim\tseed\n";
  std::ofstream timing = open_output(out_prefix + ".timing.tsv");
  timing << "dataset\tmethod\trotation\tfit_seconds\n";
  std::ofstream txt = open_output(out_prefix + ".txt");
  txt << "dataset: " << ds.name << " (N = " << ds.size() << ", C = " << ds.n_classes() << ", V = " << ds.n_views()
      << ")\nseed: " << cfg.seed << "\nmachine: " << machine_description() << "\n\n";
  for (const EvalReport& r : reports) {
    for (const FoldResult& f : r.folds) {
      tsv << r.dataset << '\t' << to_string(r.method) << '\t' << f.rotation << '\t' << f.z << '\t' << fmt(f.alpha)
          << '\t' << fmt(f.validation_accuracy) << '\t' << fmt(f.test_accuracy) << '\t' << f.dim << '\t' << r.seed
          << '\n';
      timing << r.dataset << '\t' << to_string(r.method) << '\t' << f.rotation << '\t' << fmt(f.fit_seconds, "%.6f")
             << '\n';
    }
    txt << to_string(r.method) << ": accuracy " << fmt(100.0 * r.mean_accuracy(), "%.2f") << " +- "
        << fmt(100.0 * r.std_accuracy(), "%.2f") << " %\n";
    for (const FoldResult& f : r.folds)
      txt << "  rotation " << f.rotation << ": test " << fmt(100.0 * f.test_accuracy, "%.2f") << " %, z = " << f.z
          << ", alpha = " << fmt(f.alpha, "%g") << ", d = " << f.dim << '\n';
    std::cout << to_string(r.method) << '\t' << fmt(100.0 * r.mean_accuracy(), "%.2f") << " +- "
              << fmt(100.0 * r.std_accuracy(), "%.2f") << " %\tmean fit " << fmt(r.mean_fit_seconds(), "%.4f")
              << " s\n";
  }
  std::cout << "wrote " << out_prefix << ".tsv, " << out_prefix << ".timing.tsv, " << out_prefix << ".txt\n";
  return 0;
}

// ---- bench -----------------------------------------------------------------

int cmd_bench(const BenchConfig& cfg, const std::string& out_path) {
  const std::vector<BenchRow> rows = benchmark_speed(cfg);
  std::ofstream out = open_output(out_path);
  out << "# machine: " << machine_description() << '\n';
  out << "D\tN\tC\tZ\tt_oracle\tt_fast\tratio\n";
  for (const BenchRow& r : rows) {
    out << r.d << '\t' << r.n << '\t' << r.c << '\t' << r.z << '\t' << fmt(r.t_oracle, "%.6g") << '\t'
        << fmt(r.t_fast, "%.6g") << '\t' << fmt(r.ratio, "%.4g") << '\n';
    std::cout << "D=" << r.d << " N=" << r.n << " oracle " << fmt(r.t_oracle, "%.4f") << " s, fast "
              << fmt(r.t_fast, "%.4f") << " s, ratio " << fmt(r.ratio, "%.2f") << '\n';
  }
  return 0;
}

// ---- oracle-check ----------------------------------------------------------

int cmd_oracle_check(const DataArgs& data, const std::string& preset, int views, int classes, int z,
                     Index samples, std::uint64_t seed, bool corrupt, const std::string& out_path) {
  Rng rng(seed);
  LabelLayout layout;
  bool multiview = false;
  if (!data.dataset.empty() || !data.manifest.empty()) {
    const MultiViewDataset ds = data.load();
    std::vector<Matrix> xs;
    for (const DataView& v : ds.views) xs.push_back(standardize(v.x).x);
    const std::vector<Labels> subs = cluster_views(xs, ds.labels(), ds.n_classes(), z, seed);
    layout = LabelLayout::multiview(ds.labels(), subs, ds.n_classes(), z);
    multiview = ds.n_views() > 1;
  } else if (preset == "single") {
    layout = example_layout_single();
  } else if (preset == "multiview") {
    layout = example_layout_multiview();
    multiview = true;
  } else if (preset == "random") {
    layout = random_layout(views, classes, z, samples, rng);
    multiview = views > 1;
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown preset '" + preset + "' (single | multiview | random)");
  }
  LaplacianSpec spec = multiview ? build_lb_multiview(layout) : build_lb_single(layout);
  if (corrupt) {
    const Index last = spec.lb.rows() - 1;
    const double delta = 1e-3 * spec.lb.cwiseAbs().maxCoeff();
    spec.lb(0, last) += delta;
    spec.lb(last, 0) += delta;
  }
  const OracleReport report = check_laplacian(spec, rng);

  std::ostringstream text;
  text << "layout: V = " << layout.n_views() << ", C = " << layout.n_classes() << ", Z = " << layout.n_subclasses()
       << ", N = " << layout.n_samples() << "\nrank: " << report.rank << " (expected " << report.expected_rank
       << ")\n";
  for (const CheckResult& c : report.checks)
    text << (c.pass ? "PASS" : "FAIL") << '\t' << c.name << '\t' << fmt(c.value, "%.3e") << '\t'
         << fmt(c.tolerance, "%.3e") << (c.detail.empty() ? "" : "\t" + c.detail) << '\n';
  std::cout << text.str();
  if (!out_path.empty()) open_output(out_path) << text.str();
  return report.passed() ? 0 : kExitOracleFailed;
}

int exit_code(const Error& e) {
  switch (category(e.code())) {
    case ErrorCategory::Argument: return kExitArguments;
    case ErrorCategory::Data: return kExitData;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  for (int i = 0; i < argc; ++i) g_invocation += (i ? " " : "") + std::string(argv[i]);

  CLI::App app{"Fast subclass discriminant analysis"};
  app.require_subcommand(1);

  DataArgs data;
  ModelArgs model_args;
  std::string out_path;

  auto* cluster = app.add_subcommand("cluster", "k-means subclass labels per class and view");
  int cluster_z = 2;
  std::uint64_t cluster_seed = 0;
  data.add(cluster);
  cluster->add_option("--z", cluster_z, "subclasses per class")->capture_default_str();
  cluster->add_option("--seed", cluster_seed, "random seed")->capture_default_str();
  cluster->add_option("--out", out_path, "output TSV")->required();

  auto* fit = app.add_subcommand("fit", "fit a projection and save the model");
  data.add(fit);
  model_args.add(fit, true);
  fit->add_option("--out", out_path, "model file")->required();

  auto* tr = app.add_subcommand("transform", "embed data with a saved model");
  std::string model_path, features;
  data.add(tr);
  tr->add_option("--model", model_path, "model file")->required();
  tr->add_option("--features", features, "feature-only CSV");
  tr->add_option("--out", out_path, "output TSV")->required();

  auto* ev = app.add_subcommand("eval", "rotation protocol with grid search and kNN scoring");
  std::vector<std::string> methods;
  std::vector<int> z_grid;
  std::vector<double> alpha_grid;
  int folds = 5, knn_k = 5, jobs = 1;
  std::string prefix = "eval";
  data.add(ev);
  model_args.add(ev, false);
  ev->add_option("--method", methods, "method(s); repeat or list")->delimiter(',');
  ev->add_option("--z", z_grid, "Z grid (default 1..6)")->delimiter(',');
  ev->add_option("--alpha", alpha_grid, "alpha grid (default 1e-3..1e3)")->delimiter(',');
  ev->add_option("--folds", folds)->capture_default_str();
  ev->add_option("--knn-k", knn_k)->capture_default_str();
  ev->add_option("--jobs", jobs, "rotations evaluated concurrently")->capture_default_str();
  ev->add_option("--out", prefix, "output prefix for .tsv, .timing.tsv and .txt")->capture_default_str();

  auto* bench = app.add_subcommand("bench", "time eigenproblem fit against target regression");
  BenchConfig bcfg;
  std::string backend = "qr";
  bench->add_option("--d-grid", bcfg.d_grid)->delimiter(',')->capture_default_str();
  bench->add_option("--n-grid", bcfg.n_grid)->delimiter(',')->capture_default_str();
  bench->add_option("--c", bcfg.classes)->capture_default_str();
  bench->add_option("--z", bcfg.subclasses)->capture_default_str();
  bench->add_option("--alpha", bcfg.alpha)->capture_default_str();
  bench->add_option("--reps", bcfg.repetitions)->capture_default_str();
  bench->add_option("--seed", bcfg.seed)->capture_default_str();
  bench->add_option("--oracle-backend", backend, "qr | jacobi")->capture_default_str();
  bench->add_option("--out", out_path, "output TSV")->required();

  auto* oc = app.add_subcommand("oracle-check", "structural checks of the between-class Laplacian");
  std::string preset = "single";
  int oc_views = 1, oc_classes = 3, oc_z = 2;
  Index oc_samples = 60;
  std::uint64_t oc_seed = 0;
  bool corrupt = false;
  data.add(oc);
  oc->add_option("--preset", preset, "single | multiview | random")->capture_default_str();
  oc->add_option("--views", oc_views)->capture_default_str();
  oc->add_option("--classes", oc_classes)->capture_default_str();
  oc->add_option("--z", oc_z)->capture_default_str();
  oc->add_option("--samples", oc_samples)->capture_default_str();
  oc->add_option("--seed", oc_seed)->capture_default_str();
  oc->add_flag("--corrupt", corrupt, "perturb one symmetric entry pair (negative control)");
  oc->add_option("--out", out_path, "also write the report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitArguments;
  }

  try {
    if (*cluster) return cmd_cluster(data, cluster_z, cluster_seed, out_path);
    if (*fit) return cmd_fit(data, model_args, out_path);
    if (*tr) return cmd_transform(data, features, model_path, out_path);
    if (*ev) return cmd_eval(data, model_args, methods, z_grid, alpha_grid, folds, knn_k, jobs, prefix);
    if (*bench) {
      if (backend == "qr") bcfg.oracle_backend = EigBackend::TridiagonalQR;
      else if (backend == "jacobi") bcfg.oracle_backend = EigBackend::Jacobi;
      else throw Error(ErrorCode::InvalidArgument, "unknown backend '" + backend + "'");
      return cmd_bench(bcfg, out_path);
    }
    if (*oc) return cmd_oracle_check(data, preset, oc_views, oc_classes, oc_z, oc_samples, oc_seed, corrupt, out_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitArguments;
}
