#include "fastsda/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

CheckResult below(std::string name, double value, double tolerance, std::string detail = {}) {
  return CheckResult{std::move(name), value, tolerance, value <= tolerance, std::move(detail)};
}

// Largest spread of an eigenvector over any (view, class, subclass) block.
double block_spread(const Vector& v, const LabelLayout& layout) {
  const Index n = layout.n_samples();
  std::vector<double> lo(layout.n_blocks(), INFINITY), hi(layout.n_blocks(), -INFINITY);
  for (int view = 0; view < layout.n_views(); ++view)
    for (Index i = 0; i < n; ++i) {
      const auto b = layout.block_index(view, layout.class_of(i), layout.subclass_of(view, i));
      lo[b] = std::min(lo[b], v[view * n + i]);
      hi[b] = std::max(hi[b], v[view * n + i]);
    }
  double spread = 0.0;
  for (std::size_t b = 0; b < lo.size(); ++b) spread = std::max(spread, hi[b] - lo[b]);
  return spread;
}

std::vector<Index> partition(Index total, int parts, Index min_each, Rng& rng) {
  std::vector<Index> sizes(static_cast<std::size_t>(parts), min_each);
  for (Index k = 0; k < total - min_each * parts; ++k)
    ++sizes[static_cast<std::size_t>(rng.uniform_index(static_cast<std::uint64_t>(parts)))];
  return sizes;
}

}  // namespace

bool OracleReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

OracleReport check_laplacian(const LaplacianSpec& spec, Rng& rng, const OracleTolerances& tol) {
  const LabelLayout& layout = spec.layout;
  const Matrix& l = spec.lb;
  const Index m = l.rows();
  const int views = spec.kind == LaplacianKind::MultiView ? layout.n_views() : 1;
  OracleReport report;
  report.expected_rank = static_cast<Index>(views) * layout.n_classes() * layout.n_subclasses() - 1;

  const double scale = l.cwiseAbs().maxCoeff();
  const double asym = scale > 0.0 ? (l - l.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
  report.checks.push_back(below("symmetry", asym, tol.symmetry));
  report.checks.push_back(below("row_sums", l.rowwise().sum().cwiseAbs().maxCoeff(), tol.row_sum));

  report.rank = numerical_rank(l);
  report.checks.push_back(CheckResult{"rank", static_cast<double>(report.rank),
                                      static_cast<double>(report.expected_rank),
                                      report.rank == report.expected_rank,
                                      "expected " + std::to_string(report.expected_rank)});
  if (!report.checks.front().pass) {
    report.checks.push_back(CheckResult{"eigen_checks", 0.0, 0.0, false, "skipped: matrix not symmetric"});
    return report;
  }

  const EigenResult e = symmetric_eig(l);
  const double trace = l.trace();
  const double eig_sum = e.values.sum();
  const double denom = std::max(std::abs(trace), e.values.cwiseAbs().sum());
  report.checks.push_back(below("trace", denom > 0.0 ? std::abs(trace - eig_sum) / denom : 0.0, tol.trace));

  const double top = e.values.cwiseAbs().maxCoeff();
  double spread = 0.0;
  Index nonzero = 0;
  for (Index j = 0; j < e.values.size(); ++j)
    if (std::abs(e.values[j]) > kLinalg.rank_threshold * top) {
      spread = std::max(spread, block_spread(e.vectors.col(j), layout));
      ++nonzero;
    }
  report.checks.push_back(below("block_constant_eigenvectors", spread, tol.block_constancy,
                                std::to_string(nonzero) + " nonzero eigenvalues"));

  if (report.expected_rank < 1) return report;
  const TargetMatrix t = make_targets_multiview(layout, static_cast<int>(report.expected_rank), rng);
  const double lnorm = l.norm();
  Matrix p = -t.t.transpose() * t.t;
  p.diagonal().array() += 1.0;
  p.array() -= 1.0 / static_cast<double>(m);
  report.checks.push_back(below("span_residual", lnorm > 0.0 ? (p * l).norm() / lnorm : 0.0, tol.span));
  const Index lt_rank = numerical_rank(l * t.t.transpose());
  report.checks.push_back(CheckResult{"targets_rank", static_cast<double>(lt_rank),
                                      static_cast<double>(t.dim()), lt_rank == t.dim(),
                                      "rank of L T' against d = " + std::to_string(t.dim())});
  return report;
}

LabelLayout layout_from_sizes(const std::vector<std::vector<std::vector<Index>>>& sizes) {
  if (sizes.empty() || sizes.front().empty() || sizes.front().front().empty()) {
    throw Error(ErrorCode::LayoutInvalid, "empty size table");
  }
  const int classes = static_cast<int>(sizes.front().size());
  const int z = static_cast<int>(sizes.front().front().size());
  Labels cls;
  std::vector<Labels> subs(sizes.size());
  for (int c = 0; c < classes; ++c) {
    const auto& ref = sizes.front()[static_cast<std::size_t>(c)];
    const Index class_size = std::accumulate(ref.begin(), ref.end(), Index{0});
    cls.insert(cls.end(), static_cast<std::size_t>(class_size), c);
    for (std::size_t v = 0; v < sizes.size(); ++v) {
      const auto& row = sizes[v].at(static_cast<std::size_t>(c));
      if (static_cast<int>(row.size()) != z ||
          std::accumulate(row.begin(), row.end(), Index{0}) != class_size) {
        throw Error(ErrorCode::LayoutInvalid, "views disagree on the size of class " + std::to_string(c));
      }
      for (int h = 0; h < z; ++h) subs[v].insert(subs[v].end(), static_cast<std::size_t>(row[static_cast<std::size_t>(h)]), h);
    }
  }
  return LabelLayout::multiview(std::move(cls), std::move(subs), classes, z);
}

LabelLayout example_layout_single() { return layout_from_sizes({{{3, 5}, {4, 5}}}); }

LabelLayout example_layout_multiview() {
  return layout_from_sizes({{{2, 2}, {3, 4}}, {{2, 2}, {4, 3}}});
}

LabelLayout random_layout(int views, int classes, int z, Index n, Rng& rng) {
  if (n < static_cast<Index>(classes) * z) {
    throw Error(ErrorCode::LayoutInvalid, "need at least C * Z samples for a random layout");
  }
  const std::vector<Index> class_sizes = partition(n, classes, z, rng);
  std::vector<std::vector<std::vector<Index>>> sizes(static_cast<std::size_t>(views));
  for (auto& view : sizes)
    for (Index size : class_sizes) view.push_back(partition(size, z, 1, rng));
  const LabelLayout sorted = layout_from_sizes(sizes);
  std::vector<Index> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), Index{0});
  rng.shuffle(perm);
  return sorted.permuted(perm);
}

}  // namespace fastsda
