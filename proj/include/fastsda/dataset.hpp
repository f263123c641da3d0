#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fastsda/linalg.hpp"

namespace fastsda {

using Labels = std::vector<int>;

/// One view of a dataset: features x (D x N) and a dense class index per
/// sample.
struct DataView {
  Matrix x;
  Labels labels;
  int n_classes = 0;
  int view_index = 0;
  std::string name;
  std::vector<std::string> label_names;  // label_names[c] is the on-disk label

  Index dim() const { return x.rows(); }
  Index size() const { return x.cols(); }
  void validate() const;
};

/// Views describing the same samples, in the same order, with shared labels.
/// Views may have different dimensionalities.
struct MultiViewDataset {
  std::vector<DataView> views;
  std::string name;

  int n_views() const { return static_cast<int>(views.size()); }
  Index size() const { return views.empty() ? 0 : views.front().size(); }
  int n_classes() const { return views.empty() ? 0 : views.front().n_classes; }
  const Labels& labels() const { return views.front().labels; }
  void validate() const;

  /// All views stacked into one feature matrix (sum of D_v rows).
  DataView concatenated() const;

  static MultiViewDataset single(DataView view);
};

/// Where load_csv finds the labels.
struct LabelSource {
  enum class Kind { LastColumn, SeparateFile } kind = Kind::LastColumn;
  std::filesystem::path file;  // used with SeparateFile

  static LabelSource last_column() { return {}; }
  static LabelSource separate(std::filesystem::path p) {
    return {Kind::SeparateFile, std::move(p)};
  }
};

/// Reads a comma-separated table with samples as rows. A first row holding a
/// non-numeric feature field is treated as a header; lines starting with '#'
/// are comments. Integer labels map to dense indices by ascending value,
/// anything else by first appearance.
DataView load_csv(const std::filesystem::path& path,
                  const LabelSource& labels = LabelSource::last_column());

/// Parses the same format from memory; `origin` names the source in errors.
DataView parse_csv(const std::string& text, const std::string& origin,
                   const LabelSource& labels = LabelSource::last_column());

/// Reads a feature-only CSV (no label column).
Matrix load_feature_csv(const std::filesystem::path& path);

/// Writes features plus label names as the last column, 17 significant digits.
void save_csv(const DataView& view, const std::filesystem::path& path);

/// Manifest: one `view <name> <csv-path>` line per view and one
/// `labels <csv-path>` line. Relative paths resolve against the manifest's
/// directory; '#' starts a comment.
MultiViewDataset load_multiview(const std::filesystem::path& manifest_path);

/// Dense index of each distinct label (see load_csv for the ordering rule).
Labels encode_labels(const std::vector<std::string>& raw, std::vector<std::string>& names);

}  // namespace fastsda
