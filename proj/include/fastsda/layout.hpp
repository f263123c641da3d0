#pragma once

#include <vector>

#include "fastsda/dataset.hpp"

namespace fastsda {

/// Class and subclass membership of every sample, for one or more views.
///
/// Class labels are shared by all views; subclass labels are per view because
/// each view is clustered on its own. Stacked quantities (targets, the
/// multi-view Laplacian) use view-major order: entry v * N + i is sample i in
/// view v. Samples need not be sorted by class or subclass: every quantity
/// built from a layout depends on labels only, and canonical_order() gives the
/// sorted permutation when one is wanted.
class LabelLayout {
 public:
  static LabelLayout single(Labels class_labels, Labels subclass_labels, int n_classes,
                            int n_subclasses);
  static LabelLayout multiview(Labels class_labels, std::vector<Labels> subclass_labels,
                               int n_classes, int n_subclasses);

  int n_views() const { return n_views_; }
  int n_classes() const { return n_classes_; }
  int n_subclasses() const { return n_subclasses_; }
  Index n_samples() const { return static_cast<Index>(class_labels_.size()); }
  Index stacked_size() const { return n_samples() * n_views_; }

  int class_of(Index sample) const { return class_labels_[static_cast<std::size_t>(sample)]; }
  int subclass_of(int view, Index sample) const {
    return subclass_labels_[static_cast<std::size_t>(view)][static_cast<std::size_t>(sample)];
  }
  const Labels& class_labels() const { return class_labels_; }
  const Labels& subclass_labels(int view) const {
    return subclass_labels_[static_cast<std::size_t>(view)];
  }

  Index class_size(int c) const { return class_sizes_[static_cast<std::size_t>(c)]; }
  Index subclass_size(int view, int c, int h) const {
    return subclass_sizes_[block_index(view, c, h)];
  }

  /// Flat index of block (view, class, subclass): ((v * C) + c) * Z + h.
  std::size_t block_index(int view, int c, int h) const {
    return (static_cast<std::size_t>(view) * static_cast<std::size_t>(n_classes_) +
            static_cast<std::size_t>(c)) *
               static_cast<std::size_t>(n_subclasses_) +
           static_cast<std::size_t>(h);
  }
  std::size_t n_blocks() const { return subclass_sizes_.size(); }

  /// Permutation sorting samples by (class, subclass in view 0, index).
  std::vector<Index> canonical_order() const;

  /// Same layout with samples reordered: new sample i is old sample perm[i].
  LabelLayout permuted(const std::vector<Index>& perm) const;

 private:
  void finalize();

  int n_views_ = 1;
  int n_classes_ = 0;
  int n_subclasses_ = 0;
  Labels class_labels_;
  std::vector<Labels> subclass_labels_;
  std::vector<Index> class_sizes_;
  std::vector<Index> subclass_sizes_;
};

}  // namespace fastsda
