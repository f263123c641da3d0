#pragma once

// Structural checks of a between-class Laplacian against the target
// construction: symmetry, zero row sums, rank, block-constant eigenvectors,
// trace, and span equality with generated targets.

#include <string>
#include <vector>

#include "fastsda/laplacian.hpp"

namespace fastsda {

struct OracleTolerances {
  double row_sum = 1e-10;         // absolute
  double symmetry = 1e-12;        // relative to max |L_ij|
  double block_constancy = 1e-8;  // absolute, unit eigenvectors
  double trace = 1e-10;           // relative
  double span = 1e-8;             // relative to |L|_F
};

inline constexpr OracleTolerances kOracle{};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct OracleReport {
  std::vector<CheckResult> checks;
  Index rank = 0;
  Index expected_rank = 0;

  bool passed() const;
};

/// Runs every check on spec.lb (which may have been altered by the caller).
/// Targets are drawn from rng with d = V C Z - 1.
OracleReport check_laplacian(const LaplacianSpec& spec, Rng& rng,
                             const OracleTolerances& tol = kOracle);

/// Layout from per-view subclass sizes: sizes[v][c][h] samples, samples
/// ordered by class then subclass in view 0. Every view must give the same
/// class sizes.
LabelLayout layout_from_sizes(const std::vector<std::vector<std::vector<Index>>>& sizes);

/// Two classes of 8 and 9 samples, subclasses of 3, 5 and 4, 5.
LabelLayout example_layout_single();

/// Two views, two classes: class 1 splits 2/2 in both views, class 2 splits
/// 3/4 in view 1 and 4/3 in view 2.
LabelLayout example_layout_multiview();

/// Random layout with every subclass non-empty.
LabelLayout random_layout(int views, int classes, int z, Index n, Rng& rng);

}  // namespace fastsda
