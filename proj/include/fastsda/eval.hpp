#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fastsda/dataset.hpp"
#include "fastsda/regression.hpp"

namespace fastsda {

enum class Method { FastLinear, FastKernel, FastApprox, MvLinear, MvKernel, OracleSda, OracleSorted };

/// Canonical names: fastsda-linear, fastsda-kernel, fastsda-approx,
/// mvsda-linear, mvsda-kernel, oracle-sda, oracle-sorted. The CLI aliases
/// sv-linear, sv-kernel, sv-approx, mv-linear and mv-kernel are accepted too.
const char* to_string(Method m);
Method parse_method(const std::string& s);
bool is_multiview(Method m);

struct EvalConfig {
  int folds = 5;
  int knn_k = 5;
  std::vector<int> z_grid{1, 2, 3, 4, 5, 6};
  std::vector<double> alpha_grid{1e-3, 1e-2, 1e-1, 1.0, 1e1, 1e2, 1e3};
  double pca_energy = 0.98;  // single-view path only; <= 0 disables PCA
  std::uint64_t seed = 0;

  Normalization normalization = Normalization::L2;
  KernelSolver kernel_solver = KernelSolver::Direct;
  KernelConfig kernel;           // sigma <= 0: mean training distance
  Index default_prototypes = 100;  // used when kernel.prototype_count == 0
  Fusion fusion = Fusion::Concat;
  int kmeans_iters = 300;
  int jobs = 1;  // rotations evaluated concurrently

  void validate() const;
};

struct FoldResult {
  int rotation = 0;
  int z = 0;
  double alpha = 0.0;  // 0 for oracle-sda, which has no regression step
  double validation_accuracy = 0.0;
  double test_accuracy = 0.0;
  double fit_seconds = 0.0;
  Index dim = 0;
};

struct EvalReport {
  std::string dataset;
  Method method = Method::FastLinear;
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  std::string machine;

  double mean_accuracy() const;
  double std_accuracy() const;  // population standard deviation
  double mean_fit_seconds() const;
};

/// Fold index per sample: each class is shuffled with its own stream, then
/// dealt round-robin.
std::vector<int> stratified_folds(const Labels& labels, int n_classes, int folds, std::uint64_t seed);

struct Split {
  std::vector<Index> train, validation, test;
};

/// Rotation i tests on fold i + F - 1, validates on fold i + F - 2 and trains
/// on the other F - 2 folds (indices mod F). With F = 5: train {i, i+1, i+2},
/// validation {i+3}, test {i+4}.
Split rotation_split(const std::vector<int>& fold_of, int rotation, int folds);

/// Majority vote of the k nearest training columns. Ties: smaller mean
/// distance among the tied classes' neighbours, then smaller label.
Labels knn_predict(const Matrix& train_y, const Labels& train_labels, const Matrix& test_y, int k);

double accuracy(const Labels& predicted, const Labels& truth);

/// Runs the rotation protocol for one method.
EvalReport run_experiment(const MultiViewDataset& data, Method method, const EvalConfig& cfg);

/// Same for several methods; subclass labels are computed once per
/// (rotation, Z, feature space) and shared.
std::vector<EvalReport> run_experiments(const MultiViewDataset& data,
                                        const std::vector<Method>& methods, const EvalConfig& cfg);

struct MixtureSpec {
  int classes = 2;
  int subclasses = 2;
  std::vector<Index> dims{10};  // one entry per view
  Index samples = 200;
  double separation = 3.0;      // std of the component centres, unit noise
  std::uint64_t seed = 0;
};

/// Gaussian mixture with `subclasses` components per class. Sizes are as even
/// as possible; the true component of sample i is returned in components.
struct Mixture {
  MultiViewDataset data;
  Labels components;  // subclass index within the class
};
Mixture gaussian_mixture(const MixtureSpec& spec);

struct BenchConfig {
  std::vector<Index> d_grid{300, 600, 1200, 2400};
  std::vector<Index> n_grid{600};
  int classes = 7;
  int subclasses = 2;
  double alpha = 1.0;
  int repetitions = 5;
  std::uint64_t seed = 0;
  EigBackend oracle_backend = EigBackend::TridiagonalQR;
};

struct BenchRow {
  Index d = 0, n = 0;
  int c = 0, z = 0;
  double t_oracle = 0.0;  // median seconds
  double t_fast = 0.0;
  double ratio = 0.0;     // t_oracle / t_fast
};

/// Times the generalized-eigenproblem fit against targets plus regression on
/// the same synthetic data, with the generating components as subclasses.
std::vector<BenchRow> benchmark_speed(const BenchConfig& cfg);

/// CPU model and hardware thread count.
std::string machine_description();

}  // namespace fastsda
