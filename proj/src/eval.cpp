#include "fastsda/eval.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <thread>

#include "fastsda/clustering.hpp"
#include "fastsda/error.hpp"
#include "fastsda/laplacian.hpp"
#include "fastsda/layout.hpp"
#include "fastsda/model_io.hpp"

namespace fastsda {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Matrix select_columns(const Matrix& x, const std::vector<Index>& idx) {
  Matrix out(x.rows(), static_cast<Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j) out.col(static_cast<Index>(j)) = x.col(idx[j]);
  return out;
}

Labels select_labels(const Labels& y, const std::vector<Index>& idx) {
  Labels out;
  out.reserve(idx.size());
  for (Index i : idx) out.push_back(y[static_cast<std::size_t>(i)]);
  return out;
}

// Seed tags, so that streams for different purposes never coincide.
enum Tag : std::uint64_t { kTagFolds = 1, kTagCluster = 2, kTagTargets = 3, kTagPrototypes = 4 };
enum Space : std::uint64_t { kSpaceSingle = 0, kSpaceViews = 1 };

struct SingleSpace {
  Matrix train, val, test;
};

struct ViewSpace {
  std::vector<Matrix> train, val, test;
};

// State of one rotation, shared by every method evaluated on it.
class Rotation {
 public:
  Rotation(const MultiViewDataset& data, const EvalConfig& cfg, const Split& split, int index)
      : data_(data), cfg_(cfg), split_(split), index_(index) {
    const Labels& y = data.labels();
    y_train_ = select_labels(y, split.train);
    y_val_ = select_labels(y, split.validation);
    y_test_ = select_labels(y, split.test);
  }

  int index() const { return index_; }
  int n_classes() const { return data_.n_classes(); }
  const Labels& y_train() const { return y_train_; }
  const Labels& y_val() const { return y_val_; }
  const Labels& y_test() const { return y_test_; }

  // Standardisation and PCA fitted on the training split of all views stacked.
  const SingleSpace& single() {
    if (!single_) {
      const DataView all = data_.n_views() == 1 ? data_.views.front() : data_.concatenated();
      const Matrix train = select_columns(all.x, split_.train);
      const Preprocessor pre = Preprocessor::fit(train, cfg_.pca_energy);
      single_ = SingleSpace{pre.apply(train), pre.apply(select_columns(all.x, split_.validation)),
                            pre.apply(select_columns(all.x, split_.test))};
    }
    return *single_;
  }

  // Per-view standardisation fitted on the training split.
  const ViewSpace& views() {
    if (!views_) {
      ViewSpace s;
      for (const DataView& v : data_.views) {
        const Matrix train = select_columns(v.x, split_.train);
        const Preprocessor pre = Preprocessor::fit(train, 0.0);
        s.train.push_back(pre.apply(train));
        s.val.push_back(pre.apply(select_columns(v.x, split_.validation)));
        s.test.push_back(pre.apply(select_columns(v.x, split_.test)));
      }
      views_ = std::move(s);
    }
    return *views_;
  }

  Labels cluster(const Matrix& train, int z, int view, Space space) const {
    DataView dv;
    dv.x = train;
    dv.labels = y_train_;
    dv.n_classes = n_classes();
    dv.view_index = view;
    const Rng rng(derive_seed(cfg_.seed, {kTagCluster, static_cast<std::uint64_t>(index_),
                                          static_cast<std::uint64_t>(z), static_cast<std::uint64_t>(view),
                                          space}));
    return assign_subclasses(dv, z, rng, cfg_.kmeans_iters).labels;
  }

  const Labels& single_subclasses(int z) {
    auto it = single_sub_.find(z);
    if (it == single_sub_.end()) it = single_sub_.emplace(z, cluster(single().train, z, 0, kSpaceSingle)).first;
    return it->second;
  }

  const std::vector<Labels>& view_subclasses(int z) {
    auto it = view_sub_.find(z);
    if (it == view_sub_.end()) {
      std::vector<Labels> subs;
      const ViewSpace& s = views();
      for (std::size_t v = 0; v < s.train.size(); ++v)
        subs.push_back(cluster(s.train[v], z, static_cast<int>(v), kSpaceViews));
      it = view_sub_.emplace(z, std::move(subs)).first;
    }
    return it->second;
  }

  Rng stream(Tag tag, int z) const {
    return Rng(derive_seed(cfg_.seed, {tag, static_cast<std::uint64_t>(index_), static_cast<std::uint64_t>(z)}));
  }

 private:
  const MultiViewDataset& data_;
  const EvalConfig& cfg_;
  Split split_;
  int index_;
  Labels y_train_, y_val_, y_test_;
  std::optional<SingleSpace> single_;
  std::optional<ViewSpace> views_;
  std::map<int, Labels> single_sub_;
  std::map<int, std::vector<Labels>> view_sub_;
};

using Fitted = AnyModel;

Matrix embed(const Fitted& f, const Matrix* single, const std::vector<Matrix>* views) {
  if (const auto* p = std::get_if<ProjectionModel>(&f)) return transform(*p, *single);
  return transform(std::get<MultiViewModel>(f), *views);
}

Fitted fit_single(Method method, Rotation& rot, const EvalConfig& cfg, int z, double alpha,
                  const Labels& sub) {
  const Matrix& x = rot.single().train;
  const LabelLayout layout = LabelLayout::single(rot.y_train(), sub, rot.n_classes(), z);
  switch (method) {
    case Method::OracleSda: {
      EigBaselineOptions o;
      o.normalization = cfg.normalization;
      return sda_eig_baseline(x, layout, o);
    }
    case Method::OracleSorted:
      return sda_sorted_vectors_baseline(x, layout, alpha, cfg.normalization).model;
    case Method::FastLinear: {
      Rng rng = rot.stream(kTagTargets, z);
      const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, x.rows()), rng);
      return fit_linear(x, t, alpha, cfg.normalization);
    }
    case Method::FastKernel: {
      Rng rng = rot.stream(kTagTargets, z);
      const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, x.cols()), rng);
      return fit_kernel_model(x, t, cfg.kernel, alpha, cfg.normalization, cfg.kernel_solver);
    }
    case Method::FastApprox: {
      KernelConfig kc = cfg.kernel;
      if (kc.prototype_count == 0) kc.prototype_count = std::min(cfg.default_prototypes, x.cols());
      Rng rng = rot.stream(kTagTargets, z);
      const TargetMatrix t =
          make_targets_single(layout, single_view_target_cap(layout, kc.prototype_count), rng);
      Rng proto_rng = rot.stream(kTagPrototypes, z);
      return fit_approx_model(x, t, kc, alpha, proto_rng, cfg.normalization);
    }
    default:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "not a single-view method");
}

Fitted fit_views(Method method, Rotation& rot, const EvalConfig& cfg, int z, double alpha,
                 const std::vector<Labels>& subs) {
  const ViewSpace& s = rot.views();
  const LabelLayout layout = LabelLayout::multiview(rot.y_train(), subs, rot.n_classes(), z);
  std::vector<Index> dims;
  for (const Matrix& m : s.train) dims.push_back(method == Method::MvKernel ? m.cols() : m.rows());
  Rng rng = rot.stream(kTagTargets, z);
  const TargetMatrix t = make_targets_multiview(layout, multiview_target_cap(layout, dims), rng);
  MultiViewModel model = method == Method::MvLinear
                             ? fit_multiview_linear(s.train, t, alpha, cfg.normalization)
                             : fit_multiview_kernel(s.train, t, cfg.kernel, alpha, cfg.normalization,
                                                    cfg.kernel_solver);
  model.fusion = cfg.fusion;
  return model;
}

struct Candidate {
  int z = 0;
  double alpha = 0.0;
  double accuracy = -1.0;
  Index dim = 0;
};

FoldResult evaluate_rotation(Method method, Rotation& rot, const EvalConfig& cfg) {
  const bool mv = is_multiview(method);
  const std::vector<double> alphas =
      method == Method::OracleSda ? std::vector<double>{0.0} : cfg.alpha_grid;

  auto fit = [&](int z, double alpha) -> Fitted {
    return mv ? fit_views(method, rot, cfg, z, alpha, rot.view_subclasses(z))
              : fit_single(method, rot, cfg, z, alpha, rot.single_subclasses(z));
  };
  auto score = [&](const Fitted& f, bool test) {
    const Matrix tr = mv ? embed(f, nullptr, &rot.views().train) : embed(f, &rot.single().train, nullptr);
    const Matrix ev = mv ? embed(f, nullptr, test ? &rot.views().test : &rot.views().val)
                         : embed(f, test ? &rot.single().test : &rot.single().val, nullptr);
    return accuracy(knn_predict(tr, rot.y_train(), ev, cfg.knn_k), test ? rot.y_test() : rot.y_val());
  };

  Candidate best;
  std::optional<Error> last_error;
  for (int z : cfg.z_grid) {
    try {
      if (mv) rot.view_subclasses(z);
      else rot.single_subclasses(z);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ClassTooSmall) throw;
      last_error = e;
      continue;
    }
    for (double alpha : alphas) {
      const Fitted f = fit(z, alpha);
      const double acc = score(f, false);
      if (acc > best.accuracy) best = Candidate{z, alpha, acc, 0};
    }
  }
  if (best.accuracy < 0.0) throw *last_error;

  // Refit the winner and time it. Multi-view timings include clustering.
  const auto t0 = Clock::now();
  Fitted winner;
  if (mv) {
    std::vector<Labels> subs;
    const ViewSpace& s = rot.views();
    for (std::size_t v = 0; v < s.train.size(); ++v)
      subs.push_back(rot.cluster(s.train[v], best.z, static_cast<int>(v), kSpaceViews));
    winner = fit_views(method, rot, cfg, best.z, best.alpha, subs);
  } else {
    winner = fit_single(method, rot, cfg, best.z, best.alpha, rot.single_subclasses(best.z));
  }
  const double fit_seconds = seconds_since(t0);

  FoldResult r;
  r.rotation = rot.index();
  r.z = best.z;
  r.alpha = best.alpha;
  r.validation_accuracy = best.accuracy;
  r.test_accuracy = score(winner, true);
  r.fit_seconds = fit_seconds;
  r.dim = std::holds_alternative<ProjectionModel>(winner) ? std::get<ProjectionModel>(winner).dim()
                                                           : std::get<MultiViewModel>(winner).dim();
  return r;
}

template <typename F>
void for_each_rotation(int count, int jobs, F&& body) {
  if (jobs <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> workers;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  std::atomic<int> next{0};
  for (int w = 0; w < std::min(jobs, count); ++w)
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  for (auto& t : workers) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

const char* to_string(Method m) {
  switch (m) {
    case Method::FastLinear: return "fastsda-linear";
    case Method::FastKernel: return "fastsda-kernel";
    case Method::FastApprox: return "fastsda-approx";
    case Method::MvLinear: return "mvsda-linear";
    case Method::MvKernel: return "mvsda-kernel";
    case Method::OracleSda: return "oracle-sda";
    case Method::OracleSorted: return "oracle-sorted";
  }
  return "?";
}

Method parse_method(const std::string& s) {
  static const std::map<std::string, Method> names{
      {"fastsda-linear", Method::FastLinear}, {"sv-linear", Method::FastLinear},
      {"fastsda-kernel", Method::FastKernel}, {"sv-kernel", Method::FastKernel},
      {"fastsda-approx", Method::FastApprox}, {"sv-approx", Method::FastApprox},
      {"mvsda-linear", Method::MvLinear},     {"mv-linear", Method::MvLinear},
      {"mvsda-kernel", Method::MvKernel},     {"mv-kernel", Method::MvKernel},
      {"oracle-sda", Method::OracleSda},      {"oracle-sorted", Method::OracleSorted}};
  const auto it = names.find(s);
  if (it == names.end()) throw Error(ErrorCode::InvalidArgument, "unknown method '" + s + "'");
  return it->second;
}

bool is_multiview(Method m) { return m == Method::MvLinear || m == Method::MvKernel; }

void EvalConfig::validate() const {
  if (folds < 3) throw Error(ErrorCode::InvalidArgument, "folds must be >= 3");
  if (knn_k < 1) throw Error(ErrorCode::InvalidArgument, "knn k must be >= 1");
  if (z_grid.empty() || alpha_grid.empty()) throw Error(ErrorCode::InvalidArgument, "empty grid");
  for (int z : z_grid)
    if (z < 1) throw Error(ErrorCode::InvalidArgument, "z values must be >= 1");
  for (double a : alpha_grid)
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "alpha values must be > 0");
  if (pca_energy > 1.0) throw Error(ErrorCode::InvalidArgument, "pca energy must be <= 1");
  if (jobs < 1) throw Error(ErrorCode::InvalidArgument, "jobs must be >= 1");
}

double EvalReport::mean_accuracy() const {
  double s = 0.0;
  for (const FoldResult& f : folds) s += f.test_accuracy;
  return folds.empty() ? 0.0 : s / static_cast<double>(folds.size());
}

double EvalReport::std_accuracy() const {
  const double m = mean_accuracy();
  double s = 0.0;
  for (const FoldResult& f : folds) s += (f.test_accuracy - m) * (f.test_accuracy - m);
  return folds.empty() ? 0.0 : std::sqrt(s / static_cast<double>(folds.size()));
}

double EvalReport::mean_fit_seconds() const {
  double s = 0.0;
  for (const FoldResult& f : folds) s += f.fit_seconds;
  return folds.empty() ? 0.0 : s / static_cast<double>(folds.size());
}

std::vector<int> stratified_folds(const Labels& labels, int n_classes, int folds, std::uint64_t seed) {
  if (folds < 1) throw Error(ErrorCode::InvalidArgument, "folds must be positive");
  std::vector<int> fold_of(labels.size(), -1);
  const Rng base(derive_seed(seed, {kTagFolds}));
  for (int c = 0; c < n_classes; ++c) {
    std::vector<Index> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == c) members.push_back(static_cast<Index>(i));
    if (static_cast<int>(members.size()) < folds) {
      throw Error(ErrorCode::ClassTooSmall, "class " + std::to_string(c) + " has " +
                                                std::to_string(members.size()) + " samples, fewer than " +
                                                std::to_string(folds) + " folds");
    }
    Rng rng = base.split(static_cast<std::uint64_t>(c));
    rng.shuffle(members);
    for (std::size_t k = 0; k < members.size(); ++k)
      fold_of[static_cast<std::size_t>(members[k])] = static_cast<int>(k % static_cast<std::size_t>(folds));
  }
  return fold_of;
}

Split rotation_split(const std::vector<int>& fold_of, int rotation, int folds) {
  if (folds < 3) throw Error(ErrorCode::InvalidArgument, "rotation needs at least 3 folds");
  const int val = (rotation + folds - 2) % folds;
  const int test = (rotation + folds - 1) % folds;
  Split s;
  for (std::size_t i = 0; i < fold_of.size(); ++i) {
    const int f = fold_of[i];
    if (f == test) s.test.push_back(static_cast<Index>(i));
    else if (f == val) s.validation.push_back(static_cast<Index>(i));
    else s.train.push_back(static_cast<Index>(i));
  }
  return s;
}

Labels knn_predict(const Matrix& train_y, const Labels& train_labels, const Matrix& test_y, int k) {
  const Index n = train_y.cols();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::KTooLarge, "k = " + std::to_string(k) + " with " + std::to_string(n) +
                                          " training samples");
  }
  if (static_cast<Index>(train_labels.size()) != n || train_y.rows() != test_y.rows()) {
    throw Error(ErrorCode::ShapeMismatch, "knn inputs disagree in shape");
  }
  Labels out(static_cast<std::size_t>(test_y.cols()));
  std::vector<std::pair<double, Index>> dist(static_cast<std::size_t>(n));
  for (Index j = 0; j < test_y.cols(); ++j) {
    for (Index i = 0; i < n; ++i)
      dist[static_cast<std::size_t>(i)] = {(train_y.col(i) - test_y.col(j)).norm(), i};
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());
    std::map<int, std::pair<int, double>> votes;  // label -> (count, distance sum)
    for (int m = 0; m < k; ++m) {
      auto& v = votes[train_labels[static_cast<std::size_t>(dist[static_cast<std::size_t>(m)].second)]];
      ++v.first;
      v.second += dist[static_cast<std::size_t>(m)].first;
    }
    int best = -1;
    int best_count = -1;
    double best_mean = 0.0;
    for (const auto& [label, v] : votes) {  // ascending label order settles exact ties
      const double mean = v.second / v.first;
      if (v.first > best_count || (v.first == best_count && mean < best_mean)) {
        best = label;
        best_count = v.first;
        best_mean = mean;
      }
    }
    out[static_cast<std::size_t>(j)] = best;
  }
  return out;
}

double accuracy(const Labels& predicted, const Labels& truth) {
  if (predicted.size() != truth.size() || truth.empty()) {
    throw Error(ErrorCode::ShapeMismatch, "accuracy needs equal, non-empty label vectors");
  }
  std::size_t hit = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hit += predicted[i] == truth[i];
  return static_cast<double>(hit) / static_cast<double>(truth.size());
}

std::vector<EvalReport> run_experiments(const MultiViewDataset& data,
                                        const std::vector<Method>& methods, const EvalConfig& cfg) {
  cfg.validate();
  data.validate();
  const std::vector<int> fold_of = stratified_folds(data.labels(), data.n_classes(), cfg.folds, cfg.seed);
  std::vector<EvalReport> reports;
  for (Method m : methods) {
    EvalReport r;
    r.dataset = data.name;
    r.method = m;
    r.seed = cfg.seed;
    r.machine = machine_description();
    r.folds.resize(static_cast<std::size_t>(cfg.folds));
    reports.push_back(std::move(r));
  }
  for_each_rotation(cfg.folds, cfg.jobs, [&](int i) {
    Rotation rot(data, cfg, rotation_split(fold_of, i, cfg.folds), i);
    for (std::size_t m = 0; m < methods.size(); ++m)
      reports[m].folds[static_cast<std::size_t>(i)] = evaluate_rotation(methods[m], rot, cfg);
  });
  return reports;
}

EvalReport run_experiment(const MultiViewDataset& data, Method method, const EvalConfig& cfg) {
  return run_experiments(data, {method}, cfg).front();
}

Mixture gaussian_mixture(const MixtureSpec& spec) {
  const int comps = spec.classes * spec.subclasses;
  if (spec.classes < 1 || spec.subclasses < 1 || spec.samples < comps || spec.dims.empty()) {
    throw Error(ErrorCode::InvalidArgument, "mixture needs at least one sample per component");
  }
  Rng rng(spec.seed);
  std::vector<int> comp_of;
  for (int c = 0; c < comps; ++c) {
    const Index size = spec.samples / comps + (c < spec.samples % comps ? 1 : 0);
    comp_of.insert(comp_of.end(), static_cast<std::size_t>(size), c);
  }
  rng.shuffle(comp_of);

  Mixture out;
  out.data.name = "mixture";
  Labels classes(comp_of.size());
  out.components.resize(comp_of.size());
  for (std::size_t i = 0; i < comp_of.size(); ++i) {
    classes[i] = comp_of[i] / spec.subclasses;
    out.components[i] = comp_of[i] % spec.subclasses;
  }
  for (std::size_t v = 0; v < spec.dims.size(); ++v) {
    const Index d = spec.dims[v];
    Matrix centres(d, comps);
    for (Index j = 0; j < comps; ++j)
      for (Index i = 0; i < d; ++i) centres(i, j) = spec.separation * rng.normal();
    DataView view;
    view.x.resize(d, spec.samples);
    for (Index j = 0; j < spec.samples; ++j)
      for (Index i = 0; i < d; ++i) view.x(i, j) = centres(i, comp_of[static_cast<std::size_t>(j)]) + rng.normal();
    view.labels = classes;
    view.n_classes = spec.classes;
    view.view_index = static_cast<int>(v);
    view.name = "view" + std::to_string(v);
    for (int c = 0; c < spec.classes; ++c) view.label_names.push_back(std::to_string(c));
    out.data.views.push_back(std::move(view));
  }
  return out;
}

std::vector<BenchRow> benchmark_speed(const BenchConfig& cfg) {
  if (cfg.repetitions < 1) throw Error(ErrorCode::InvalidArgument, "repetitions must be >= 1");
  std::vector<BenchRow> rows;
  for (Index n : cfg.n_grid)
    for (Index d : cfg.d_grid) {
      MixtureSpec spec;
      spec.classes = cfg.classes;
      spec.subclasses = cfg.subclasses;
      spec.dims = {d};
      spec.samples = n;
      spec.seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(n)});
      const Mixture mix = gaussian_mixture(spec);
      const Matrix& x = mix.data.views.front().x;
      const LabelLayout layout =
          LabelLayout::single(mix.data.labels(), mix.components, cfg.classes, cfg.subclasses);

      std::vector<double> t_oracle, t_fast;
      EigBaselineOptions opts;
      opts.backend = cfg.oracle_backend;
      for (int r = 0; r < cfg.repetitions; ++r) {
        auto t0 = Clock::now();
        const ProjectionModel oracle = sda_eig_baseline(x, layout, opts);
        t_oracle.push_back(seconds_since(t0));

        t0 = Clock::now();
        Rng rng(derive_seed(cfg.seed, {kTagTargets, static_cast<std::uint64_t>(r)}));
        const TargetMatrix t = make_targets_single(layout, single_view_target_cap(layout, d), rng);
        const ProjectionModel fast = fit_linear(x, t, cfg.alpha);
        t_fast.push_back(seconds_since(t0));
      }
      BenchRow row;
      row.d = d;
      row.n = n;
      row.c = cfg.classes;
      row.z = cfg.subclasses;
      row.t_oracle = median(t_oracle);
      row.t_fast = median(t_fast);
      row.ratio = row.t_oracle / row.t_fast;
      rows.push_back(row);
    }
  return rows;
}

std::string machine_description() {
  std::string cpu = "unknown cpu";
  std::ifstream in("/proc/cpuinfo");
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) cpu = line.substr(line.find_first_not_of(' ', colon + 1));
      break;
    }
  }
  return cpu + ", " + std::to_string(std::thread::hardware_concurrency()) + " threads";
}

}  // namespace fastsda
