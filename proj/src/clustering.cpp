#include "fastsda/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

double sq_dist(const Matrix& a, Index i, const Matrix& b, Index j) {
  return (a.col(i) - b.col(j)).squaredNorm();
}

Matrix kmeanspp_init(const Matrix& x, int k, Rng& rng) {
  const Index n = x.cols();
  Matrix centers(x.rows(), k);
  std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  Index first = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
  centers.col(0) = x.col(first);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (Index i = 0; i < n; ++i) {
      d2[static_cast<std::size_t>(i)] =
          std::min(d2[static_cast<std::size_t>(i)], sq_dist(x, i, centers, c - 1));
      total += d2[static_cast<std::size_t>(i)];
    }
    Index pick = n - 1;
    if (total > 0.0) {
      const double target = rng.uniform01() * total;
      double acc = 0.0;
      for (Index i = 0; i < n; ++i) {
        acc += d2[static_cast<std::size_t>(i)];
        if (acc >= target && d2[static_cast<std::size_t>(i)] > 0.0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    }
    centers.col(c) = x.col(pick);
  }
  return centers;
}

// Returns true if any label changed.
bool assign(const Matrix& x, const Matrix& centers, Labels& labels) {
  bool changed = false;
  for (Index i = 0; i < x.cols(); ++i) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Index c = 0; c < centers.cols(); ++c) {
      const double d = sq_dist(x, i, centers, c);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(c);
      }
    }
    auto& slot = labels[static_cast<std::size_t>(i)];
    if (slot != best) {
      slot = best;
      changed = true;
    }
  }
  return changed;
}

void recompute_center(const Matrix& x, const Labels& labels, int c, Matrix& centers) {
  Vector sum = Vector::Zero(x.rows());
  Index count = 0;
  for (Index i = 0; i < x.cols(); ++i)
    if (labels[static_cast<std::size_t>(i)] == c) {
      sum += x.col(i);
      ++count;
    }
  if (count > 0) centers.col(c) = sum / static_cast<double>(count);
}

double inertia_of(const Matrix& x, const Labels& labels, const Matrix& centers) {
  double total = 0.0;
  for (Index i = 0; i < x.cols(); ++i)
    total += sq_dist(x, i, centers, labels[static_cast<std::size_t>(i)]);
  return total;
}

void update_centers(const Matrix& x, Labels& labels, Matrix& centers) {
  const int k = static_cast<int>(centers.cols());
  std::vector<Index> counts(static_cast<std::size_t>(k), 0);
  for (int l : labels) ++counts[static_cast<std::size_t>(l)];
  for (int c = 0; c < k; ++c) recompute_center(x, labels, c, centers);

  for (int empty = 0; empty < k; ++empty) {
    if (counts[static_cast<std::size_t>(empty)] != 0) continue;
    Index far = -1;
    double far_d = -1.0;
    for (Index i = 0; i < x.cols(); ++i) {
      const int l = labels[static_cast<std::size_t>(i)];
      if (counts[static_cast<std::size_t>(l)] < 2) continue;
      const double d = sq_dist(x, i, centers, l);
      if (d > far_d) {
        far_d = d;
        far = i;
      }
    }
    const int donor = labels[static_cast<std::size_t>(far)];
    labels[static_cast<std::size_t>(far)] = empty;
    --counts[static_cast<std::size_t>(donor)];
    counts[static_cast<std::size_t>(empty)] = 1;
    centers.col(empty) = x.col(far);
    recompute_center(x, labels, donor, centers);
  }
}

}  // namespace

KMeansResult kmeans(const Matrix& points, int k, Rng& rng, int max_iters) {
  require_finite(points, "kmeans points");
  if (k < 1 || points.cols() < k) {
    throw Error(ErrorCode::DegenerateInput, "kmeans needs n >= k >= 1 (n = " +
                                                std::to_string(points.cols()) +
                                                ", k = " + std::to_string(k) + ")");
  }
  KMeansResult out;
  out.centers = kmeanspp_init(points, k, rng);
  out.labels.assign(static_cast<std::size_t>(points.cols()), -1);
  for (int it = 0; it < std::max(max_iters, 1); ++it) {
    const bool changed = assign(points, out.centers, out.labels);
    if (!changed && it > 0) break;
    update_centers(points, out.labels, out.centers);
    out.inertia_history.push_back(inertia_of(points, out.labels, out.centers));
    out.iterations = it + 1;
  }
  return out;
}

SubclassAssignment assign_subclasses(const DataView& view, int z, const Rng& rng,
                                     int max_iters) {
  if (z < 1) throw Error(ErrorCode::InvalidArgument, "z must be >= 1");
  SubclassAssignment out;
  out.z = z;
  out.view = view.view_index;
  out.labels.assign(view.labels.size(), 0);

  for (int c = 0; c < view.n_classes; ++c) {
    std::vector<Index> members;
    for (std::size_t i = 0; i < view.labels.size(); ++i)
      if (view.labels[i] == c) members.push_back(static_cast<Index>(i));
    if (static_cast<int>(members.size()) < z) {
      throw Error(ErrorCode::ClassTooSmall,
                  "class " + std::to_string(c) + " has " + std::to_string(members.size()) +
                      " samples, needs at least z = " + std::to_string(z));
    }
    if (z == 1) continue;

    Matrix pts(view.x.rows(), static_cast<Index>(members.size()));
    for (std::size_t m = 0; m < members.size(); ++m)
      pts.col(static_cast<Index>(m)) = view.x.col(members[m]);
    Rng class_rng = rng.split(static_cast<std::uint64_t>(c));
    const KMeansResult km = kmeans(pts, z, class_rng, max_iters);

    // Canonical numbering: ascending size, then first member position.
    std::vector<Index> size(static_cast<std::size_t>(z), 0);
    std::vector<Index> first(static_cast<std::size_t>(z), std::numeric_limits<Index>::max());
    for (std::size_t m = 0; m < members.size(); ++m) {
      const auto l = static_cast<std::size_t>(km.labels[m]);
      ++size[l];
      first[l] = std::min(first[l], members[m]);
    }
    std::vector<int> order(static_cast<std::size_t>(z));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const auto ua = static_cast<std::size_t>(a);
      const auto ub = static_cast<std::size_t>(b);
      return size[ua] != size[ub] ? size[ua] < size[ub] : first[ua] < first[ub];
    });
    std::vector<int> rank(static_cast<std::size_t>(z));
    for (int r = 0; r < z; ++r) rank[static_cast<std::size_t>(order[static_cast<std::size_t>(r)])] = r;
    for (std::size_t m = 0; m < members.size(); ++m)
      out.labels[static_cast<std::size_t>(members[m])] =
          rank[static_cast<std::size_t>(km.labels[m])];
  }
  return out;
}

}  // namespace fastsda
