// Python bindings. Arrays follow NumPy convention: samples as rows.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "fastsda/fastsda.hpp"

namespace py = pybind11;
using namespace fastsda;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// N x D (rows as samples) to the library's D x N.
Matrix columns(const Eigen::Ref<const RowMatrix>& x) { return x.transpose(); }
RowMatrix rows(const Matrix& m) { return m.transpose(); }

int class_count(const Labels& y) {
  return y.empty() ? 0 : *std::max_element(y.begin(), y.end()) + 1;
}

LabelLayout make_layout(const Labels& y, const std::vector<Labels>& subclasses, int z) {
  return LabelLayout::multiview(y, subclasses, class_count(y), z);
}

py::dict report_dict(const EvalReport& r) {
  py::list folds;
  for (const FoldResult& f : r.folds) {
    py::dict d;
    d["rotation"] = f.rotation;
    d["z"] = f.z;
    d["alpha"] = f.alpha;
    d["validation_accuracy"] = f.validation_accuracy;
    d["test_accuracy"] = f.test_accuracy;
    d["fit_seconds"] = f.fit_seconds;
    d["dim"] = f.dim;
    folds.append(d);
  }
  py::dict out;
  out["dataset"] = r.dataset;
  out["method"] = to_string(r.method);
  out["seed"] = r.seed;
  out["folds"] = folds;
  out["mean_accuracy"] = r.mean_accuracy();
  out["std_accuracy"] = r.std_accuracy();
  return out;
}

}  // namespace

PYBIND11_MODULE(_fastsda, m) {
  m.doc() = "Subclass discriminant analysis through target regression";

  py::register_exception<Error>(m, "FastSdaError", PyExc_RuntimeError);

  py::enum_<Normalization>(m, "Normalization")
      .value("L2", Normalization::L2)
      .value("ORTHOGONAL", Normalization::Orthogonal)
      .value("NONE", Normalization::None);
  py::enum_<KernelSolver>(m, "KernelSolver")
      .value("DIRECT", KernelSolver::Direct)
      .value("FULL_GRAM", KernelSolver::FullGram);
  py::enum_<Fusion>(m, "Fusion").value("CONCAT", Fusion::Concat).value("MEAN", Fusion::Mean);

  py::class_<ProjectionModel>(m, "ProjectionModel")
      .def_property_readonly("dim", &ProjectionModel::dim)
      .def_property_readonly("input_dim", &ProjectionModel::input_dim)
      .def_property_readonly("variant", [](const ProjectionModel& p) { return std::string(p.variant_name()); })
      .def("transform", [](const ProjectionModel& p, const Eigen::Ref<const RowMatrix>& x) {
        return rows(transform(p, columns(x)));
      }, py::arg("x"), "Embed the rows of x; returns n x d.")
      .def("save", [](const ProjectionModel& p, const std::filesystem::path& path) { save_model(p, path, "python"); })
      .def_property_readonly("weights", [](const ProjectionModel& p) -> Matrix {
        if (const auto* lin = std::get_if<LinearProjection>(&p.body)) return lin->w;
        if (const auto* k = std::get_if<KernelProjection>(&p.body)) return k->a;
        return std::get<ApproxKernelProjection>(p.body).a;
      });

  py::class_<MultiViewModel>(m, "MultiViewModel")
      .def_property_readonly("dim", &MultiViewModel::dim)
      .def_property_readonly("n_views", &MultiViewModel::n_views)
      .def_property_readonly("variant", [](const MultiViewModel& p) { return std::string(p.variant_name()); })
      .def_readwrite("fusion", &MultiViewModel::fusion)
      .def("transform", [](const MultiViewModel& p, const std::vector<RowMatrix>& views) {
        std::vector<Matrix> cols;
        for (const RowMatrix& v : views) cols.push_back(v.transpose());
        return rows(transform(p, cols));
      }, py::arg("views"))
      .def("save", [](const MultiViewModel& p, const std::filesystem::path& path) { save_model(p, path, "python"); });

  m.def("load_model", [](const std::filesystem::path& path) -> py::object {
    AnyModel model = load_model(path);
    if (auto* pm = std::get_if<ProjectionModel>(&model)) return py::cast(std::move(*pm));
    return py::cast(std::get<MultiViewModel>(std::move(model)));
  }, py::arg("path"));

  m.def("assign_subclasses", [](const Eigen::Ref<const RowMatrix>& x, const Labels& y, int z, std::uint64_t seed) {
    DataView v;
    v.x = columns(x);
    v.labels = y;
    v.n_classes = class_count(y);
    return assign_subclasses(v, z, Rng(seed)).labels;
  }, py::arg("x"), py::arg("y"), py::arg("z"), py::arg("seed") = 0,
        "k-means inside each class; returns the subclass index of every sample.");

  m.def("make_targets", [](const Labels& y, const std::vector<Labels>& subclasses, int z, int d, std::uint64_t seed) {
    Rng rng(seed);
    return make_targets_multiview(make_layout(y, subclasses, z), d, rng).t;
  }, py::arg("y"), py::arg("subclasses"), py::arg("z"), py::arg("d"), py::arg("seed") = 0,
        "d x (V N) orthonormal, zero-sum target matrix; one subclass list per view.");

  m.def("between_class_laplacian", [](const Labels& y, const std::vector<Labels>& subclasses, int z) {
    const LabelLayout layout = make_layout(y, subclasses, z);
    return (layout.n_views() == 1 ? build_lb_single(layout) : build_lb_multiview(layout)).lb;
  }, py::arg("y"), py::arg("subclasses"), py::arg("z"));

  m.def("oracle_check", [](const Labels& y, const std::vector<Labels>& subclasses, int z, std::uint64_t seed) {
    const LabelLayout layout = make_layout(y, subclasses, z);
    Rng rng(seed);
    const OracleReport r =
        check_laplacian(layout.n_views() == 1 ? build_lb_single(layout) : build_lb_multiview(layout), rng);
    py::dict checks;
    for (const CheckResult& c : r.checks) checks[py::str(c.name)] = py::make_tuple(c.pass, c.value, c.tolerance);
    py::dict out;
    out["passed"] = r.passed();
    out["rank"] = r.rank;
    out["expected_rank"] = r.expected_rank;
    out["checks"] = checks;
    return out;
  }, py::arg("y"), py::arg("subclasses"), py::arg("z"), py::arg("seed") = 0);

  m.def("fit_linear", [](const Eigen::Ref<const RowMatrix>& x, const Matrix& t, double alpha, Normalization n) {
    return fit_linear(columns(x), TargetMatrix{t}, alpha, n);
  }, py::arg("x"), py::arg("targets"), py::arg("alpha") = 1.0, py::arg("normalization") = Normalization::L2);

  m.def("fit_kernel", [](const Eigen::Ref<const RowMatrix>& x, const Matrix& t, double alpha, double sigma,
                         Normalization n, KernelSolver solver) {
    KernelConfig cfg;
    cfg.sigma = sigma;
    return fit_kernel_model(columns(x), TargetMatrix{t}, cfg, alpha, n, solver);
  }, py::arg("x"), py::arg("targets"), py::arg("alpha") = 1.0, py::arg("sigma") = 0.0,
        py::arg("normalization") = Normalization::L2, py::arg("solver") = KernelSolver::Direct,
        "sigma <= 0 uses the mean pairwise distance of x.");

  m.def("fit_approx_kernel", [](const Eigen::Ref<const RowMatrix>& x, const Matrix& t, double alpha, double sigma,
                                Index prototypes, const std::string& strategy, bool center, std::uint64_t seed,
                                Normalization n) {
    KernelConfig cfg;
    cfg.sigma = sigma;
    cfg.mode = KernelMode::Approximate;
    cfg.prototype_count = prototypes;
    if (strategy == "random-train") cfg.prototype_strategy = PrototypeStrategy::RandomTrain;
    else if (strategy == "kmeans-all") cfg.prototype_strategy = PrototypeStrategy::KMeansAll;
    else throw Error(ErrorCode::InvalidArgument, "unknown prototype strategy '" + strategy + "'");
    cfg.approx_centering = center ? ApproxCentering::PrototypeMean : ApproxCentering::None;
    Rng rng(seed);
    return fit_approx_model(columns(x), TargetMatrix{t}, cfg, alpha, rng, n);
  }, py::arg("x"), py::arg("targets"), py::arg("alpha") = 1.0, py::arg("sigma") = 0.0,
        py::arg("prototypes") = 100, py::arg("strategy") = "kmeans-all", py::arg("center") = false,
        py::arg("seed") = 0, py::arg("normalization") = Normalization::L2);

  m.def("fit_multiview_linear", [](const std::vector<RowMatrix>& views, const Matrix& t, double alpha,
                                   Normalization n) {
    std::vector<Matrix> cols;
    for (const RowMatrix& v : views) cols.push_back(v.transpose());
    return fit_multiview_linear(cols, TargetMatrix{t}, alpha, n);
  }, py::arg("views"), py::arg("targets"), py::arg("alpha") = 1.0, py::arg("normalization") = Normalization::L2);

  m.def("fit_multiview_kernel", [](const std::vector<RowMatrix>& views, const Matrix& t, double alpha, double sigma,
                                   Normalization n) {
    std::vector<Matrix> cols;
    for (const RowMatrix& v : views) cols.push_back(v.transpose());
    KernelConfig cfg;
    cfg.sigma = sigma;
    return fit_multiview_kernel(cols, TargetMatrix{t}, cfg, alpha, n);
  }, py::arg("views"), py::arg("targets"), py::arg("alpha") = 1.0, py::arg("sigma") = 0.0,
        py::arg("normalization") = Normalization::L2);

  m.def("knn_predict", [](const Eigen::Ref<const RowMatrix>& train, const Labels& y,
                          const Eigen::Ref<const RowMatrix>& test, int k) {
    return knn_predict(columns(train), y, columns(test), k);
  }, py::arg("train"), py::arg("y"), py::arg("test"), py::arg("k") = 5);

  m.def("evaluate", [](const std::vector<RowMatrix>& views, const Labels& y, const std::string& method,
                       std::vector<int> z_grid, std::vector<double> alpha_grid, std::uint64_t seed, int folds,
                       double pca_energy) {
    MultiViewDataset data;
    for (std::size_t v = 0; v < views.size(); ++v) {
      DataView dv;
      dv.x = views[v].transpose();
      dv.labels = y;
      dv.n_classes = class_count(y);
      dv.view_index = static_cast<int>(v);
      data.views.push_back(std::move(dv));
    }
    data.name = "python";
    EvalConfig cfg;
    if (!z_grid.empty()) cfg.z_grid = std::move(z_grid);
    if (!alpha_grid.empty()) cfg.alpha_grid = std::move(alpha_grid);
    cfg.seed = seed;
    cfg.folds = folds;
    cfg.pca_energy = pca_energy;
    return report_dict(run_experiment(data, parse_method(method), cfg));
  }, py::arg("views"), py::arg("y"), py::arg("method") = "fastsda-linear", py::arg("z_grid") = std::vector<int>{},
        py::arg("alpha_grid") = std::vector<double>{}, py::arg("seed") = 0, py::arg("folds") = 5,
        py::arg("pca_energy") = 0.98,
        "Rotation protocol with grid search; views is a list of n x D_v arrays.");

  m.def("load_csv", [](const std::filesystem::path& path) {
    const DataView v = load_csv(path);
    return py::make_tuple(rows(v.x), v.labels, v.label_names);
  }, py::arg("path"), "Returns (x as n x D, labels, label names).");
}
