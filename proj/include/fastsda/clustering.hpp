#pragma once

#include <vector>

#include "fastsda/dataset.hpp"
#include "fastsda/rng.hpp"

namespace fastsda {

struct KMeansResult {
  Labels labels;        // cluster index per point
  Matrix centers;       // D x k
  std::vector<double> inertia_history;  // after every centre update
  int iterations = 0;

  double inertia() const { return inertia_history.empty() ? 0.0 : inertia_history.back(); }
};

inline constexpr int kDefaultKMeansIters = 300;

/// Lloyd iterations from a k-means++ start. Stops when assignments stop
/// changing or after max_iters. Assignment ties go to the lower cluster index;
/// an empty cluster takes the point farthest from its current centre.
KMeansResult kmeans(const Matrix& points, int k, Rng& rng, int max_iters = kDefaultKMeansIters);

struct SubclassAssignment {
  Labels labels;  // subclass index in [0, z) per sample
  int z = 1;
  int view = 0;
};

/// Clusters each class of `view` separately into z subclasses. Class c uses
/// rng.split(c). Within a class, subclasses are numbered by ascending size,
/// then by the index of their first sample.
SubclassAssignment assign_subclasses(const DataView& view, int z, const Rng& rng,
                                     int max_iters = kDefaultKMeansIters);

}  // namespace fastsda
