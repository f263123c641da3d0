#include "fastsda/layout.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "fastsda/error.hpp"

namespace fastsda {

LabelLayout LabelLayout::single(Labels class_labels, Labels subclass_labels, int n_classes,
                                int n_subclasses) {
  std::vector<Labels> per_view;
  per_view.push_back(std::move(subclass_labels));
  return multiview(std::move(class_labels), std::move(per_view), n_classes, n_subclasses);
}

LabelLayout LabelLayout::multiview(Labels class_labels, std::vector<Labels> subclass_labels,
                                   int n_classes, int n_subclasses) {
  LabelLayout out;
  out.n_views_ = static_cast<int>(subclass_labels.size());
  out.n_classes_ = n_classes;
  out.n_subclasses_ = n_subclasses;
  out.class_labels_ = std::move(class_labels);
  out.subclass_labels_ = std::move(subclass_labels);
  out.finalize();
  return out;
}

void LabelLayout::finalize() {
  if (n_views_ < 1) throw Error(ErrorCode::LayoutInvalid, "layout needs at least one view");
  if (n_classes_ < 1 || n_subclasses_ < 1) {
    throw Error(ErrorCode::LayoutInvalid, "layout needs C >= 1 and Z >= 1");
  }
  if (class_labels_.empty()) throw Error(ErrorCode::LayoutInvalid, "layout has no samples");
  const std::size_t n = class_labels_.size();
  class_sizes_.assign(static_cast<std::size_t>(n_classes_), 0);
  subclass_sizes_.assign(static_cast<std::size_t>(n_views_ * n_classes_ * n_subclasses_), 0);
  for (std::size_t i = 0; i < n; ++i) {
    const int c = class_labels_[i];
    if (c < 0 || c >= n_classes_) {
      throw Error(ErrorCode::LayoutInvalid,
                  "class label " + std::to_string(c) + " at sample " + std::to_string(i) +
                      " outside [0, " + std::to_string(n_classes_) + ")");
    }
    ++class_sizes_[static_cast<std::size_t>(c)];
  }
  for (int v = 0; v < n_views_; ++v) {
    const Labels& sub = subclass_labels_[static_cast<std::size_t>(v)];
    if (sub.size() != n) {
      throw Error(ErrorCode::LayoutInvalid,
                  "view " + std::to_string(v) + " has " + std::to_string(sub.size()) +
                      " subclass labels for " + std::to_string(n) + " samples");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int h = sub[i];
      if (h < 0 || h >= n_subclasses_) {
        throw Error(ErrorCode::LayoutInvalid,
                    "subclass label " + std::to_string(h) + " at sample " + std::to_string(i) +
                        " outside [0, " + std::to_string(n_subclasses_) + ")");
      }
      ++subclass_sizes_[block_index(v, class_labels_[i], h)];
    }
  }
  for (int v = 0; v < n_views_; ++v)
    for (int c = 0; c < n_classes_; ++c)
      for (int h = 0; h < n_subclasses_; ++h)
        if (subclass_sizes_[block_index(v, c, h)] == 0) {
          throw Error(ErrorCode::LayoutInvalid,
                      "empty subclass " + std::to_string(h) + " of class " + std::to_string(c) +
                          " in view " + std::to_string(v));
        }
}

std::vector<Index> LabelLayout::canonical_order() const {
  std::vector<Index> order(class_labels_.size());
  std::iota(order.begin(), order.end(), Index{0});
  const Labels& sub = subclass_labels_.front();
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    const auto ua = static_cast<std::size_t>(a);
    const auto ub = static_cast<std::size_t>(b);
    if (class_labels_[ua] != class_labels_[ub]) return class_labels_[ua] < class_labels_[ub];
    return sub[ua] < sub[ub];
  });
  return order;
}

LabelLayout LabelLayout::permuted(const std::vector<Index>& perm) const {
  if (perm.size() != class_labels_.size()) {
    throw Error(ErrorCode::LayoutInvalid, "permutation length differs from sample count");
  }
  Labels cls(perm.size());
  std::vector<Labels> subs(static_cast<std::size_t>(n_views_), Labels(perm.size()));
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const auto src = static_cast<std::size_t>(perm[i]);
    cls[i] = class_labels_.at(src);
    for (std::size_t v = 0; v < subs.size(); ++v) subs[v][i] = subclass_labels_[v][src];
  }
  return multiview(std::move(cls), std::move(subs), n_classes_, n_subclasses_);
}

}  // namespace fastsda
