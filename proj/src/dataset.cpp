#include "fastsda/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "fastsda/error.hpp"

namespace fastsda {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(const std::string& s, long long& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

// Non-empty, non-comment rows with their 1-based line numbers.
std::vector<Row> table_rows(const std::string& text) {
  std::vector<Row> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    rows.push_back({line_no, split_fields(t)});
  }
  return rows;
}

Matrix parse_numeric(const std::vector<Row>& rows, std::size_t first, std::size_t n_cols,
                     const std::string& origin) {
  Matrix x(static_cast<Index>(n_cols), static_cast<Index>(rows.size() - first));
  for (std::size_t r = first; r < rows.size(); ++r) {
    const Row& row = rows[r];
    for (std::size_t c = 0; c < n_cols; ++c) {
      double v = 0.0;
      if (!parse_double(row.fields[c], v)) {
        throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(row.line) + ": column " +
                                               std::to_string(c + 1) + " is not a number ('" +
                                               row.fields[c] + "')");
      }
      x(static_cast<Index>(c), static_cast<Index>(r - first)) = v;
    }
  }
  return x;
}

void require_rectangular(const std::vector<Row>& rows, const std::string& origin) {
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, origin + " has no data rows");
  const std::size_t width = rows.front().fields.size();
  for (const Row& row : rows)
    if (row.fields.size() != width) {
      throw Error(ErrorCode::RaggedRows, origin + ":" + std::to_string(row.line) + ": expected " +
                                             std::to_string(width) + " fields, found " +
                                             std::to_string(row.fields.size()));
    }
}

bool is_header(const Row& row, std::size_t n_numeric) {
  double v = 0.0;
  for (std::size_t c = 0; c < n_numeric; ++c)
    if (!parse_double(row.fields[c], v)) return true;
  return false;
}

std::vector<std::string> read_label_file(const std::filesystem::path& path) {
  const std::string origin = path.string();
  std::vector<Row> rows = table_rows(read_file(path));
  if (rows.empty()) throw Error(ErrorCode::EmptyFile, origin + " has no labels");
  std::vector<std::string> labels;
  for (const Row& row : rows) {
    if (row.fields.size() != 1) {
      throw Error(ErrorCode::RaggedRows,
                  origin + ":" + std::to_string(row.line) + ": expected one label per line");
    }
    labels.push_back(row.fields.front());
  }
  return labels;
}

DataView make_view(Matrix x, const std::vector<std::string>& raw, std::string name) {
  DataView view;
  view.x = std::move(x);
  view.labels = encode_labels(raw, view.label_names);
  view.n_classes = static_cast<int>(view.label_names.size());
  view.name = std::move(name);
  view.validate();
  return view;
}

}  // namespace

void DataView::validate() const {
  if (x.cols() == 0 || x.rows() == 0) throw Error(ErrorCode::EmptyFile, "view '" + name + "' is empty");
  if (static_cast<Index>(labels.size()) != x.cols()) {
    throw Error(ErrorCode::MissingLabels, "view '" + name + "' has " + std::to_string(labels.size()) +
                                              " labels for " + std::to_string(x.cols()) + " samples");
  }
  std::vector<Index> counts(static_cast<std::size_t>(std::max(n_classes, 0)), 0);
  for (int l : labels) {
    if (l < 0 || l >= n_classes) {
      throw Error(ErrorCode::InvalidArgument, "label " + std::to_string(l) + " outside [0, " +
                                                  std::to_string(n_classes) + ")");
    }
    ++counts[static_cast<std::size_t>(l)];
  }
  for (std::size_t c = 0; c < counts.size(); ++c)
    if (counts[c] == 0) throw Error(ErrorCode::InvalidArgument, "class " + std::to_string(c) + " is empty");
  require_finite(x, "view features");
}

void MultiViewDataset::validate() const {
  if (views.empty()) throw Error(ErrorCode::InvalidArgument, "dataset has no views");
  for (const DataView& v : views) {
    v.validate();
    if (v.size() != size()) {
      throw Error(ErrorCode::ViewShapeMismatch, "view '" + v.name + "' has " +
                                                    std::to_string(v.size()) + " samples, expected " +
                                                    std::to_string(size()));
    }
    if (v.labels != labels()) throw Error(ErrorCode::ViewShapeMismatch, "views disagree on labels");
  }
}

DataView MultiViewDataset::concatenated() const {
  Index rows = 0;
  for (const DataView& v : views) rows += v.dim();
  DataView out = views.front();
  out.x.resize(rows, size());
  Index at = 0;
  for (const DataView& v : views) {
    out.x.middleRows(at, v.dim()) = v.x;
    at += v.dim();
  }
  out.name = name.empty() ? "concatenated" : name;
  out.view_index = 0;
  return out;
}

MultiViewDataset MultiViewDataset::single(DataView view) {
  MultiViewDataset out;
  out.name = view.name;
  out.views.push_back(std::move(view));
  return out;
}

Labels encode_labels(const std::vector<std::string>& raw, std::vector<std::string>& names) {
  names.clear();
  Labels out(raw.size());
  bool integral = !raw.empty();
  std::vector<long long> values(raw.size());
  for (std::size_t i = 0; i < raw.size() && integral; ++i) integral = parse_int(raw[i], values[i]);
  if (integral) {
    std::map<long long, int> index;
    for (long long v : std::set<long long>(values.begin(), values.end())) {
      index.emplace(v, static_cast<int>(index.size()));
      names.push_back(std::to_string(v));
    }
    for (std::size_t i = 0; i < raw.size(); ++i) out[i] = index.at(values[i]);
    return out;
  }
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [it, inserted] = index.emplace(raw[i], static_cast<int>(names.size()));
    if (inserted) names.push_back(raw[i]);
    out[i] = it->second;
  }
  return out;
}

DataView parse_csv(const std::string& text, const std::string& origin, const LabelSource& labels) {
  const std::vector<Row> rows = table_rows(text);
  require_rectangular(rows, origin);
  const bool last = labels.kind == LabelSource::Kind::LastColumn;
  const std::size_t width = rows.front().fields.size();
  if (last && width < 2) {
    throw Error(ErrorCode::ParseError, origin + ": need at least one feature and a label column");
  }
  const std::size_t n_features = last ? width - 1 : width;
  const std::size_t first = is_header(rows.front(), n_features) ? 1 : 0;
  if (first == rows.size()) throw Error(ErrorCode::EmptyFile, origin + " has a header but no data");

  Matrix x = parse_numeric(rows, first, n_features, origin);
  std::vector<std::string> raw;
  if (last) {
    for (std::size_t r = first; r < rows.size(); ++r) raw.push_back(rows[r].fields.back());
  } else {
    raw = read_label_file(labels.file);
    if (static_cast<Index>(raw.size()) == x.cols() + 1) raw.erase(raw.begin());  // header line
    if (static_cast<Index>(raw.size()) != x.cols()) {
      throw Error(ErrorCode::MissingLabels, labels.file.string() + " has " +
                                                std::to_string(raw.size()) + " labels for " +
                                                std::to_string(x.cols()) + " samples");
    }
  }
  return make_view(std::move(x), raw, origin);
}

DataView load_csv(const std::filesystem::path& path, const LabelSource& labels) {
  DataView view = parse_csv(read_file(path), path.string(), labels);
  view.name = path.stem().string();
  return view;
}

Matrix load_feature_csv(const std::filesystem::path& path) {
  const std::string origin = path.string();
  const std::vector<Row> rows = table_rows(read_file(path));
  require_rectangular(rows, origin);
  const std::size_t width = rows.front().fields.size();
  const std::size_t first = is_header(rows.front(), width) ? 1 : 0;
  if (first == rows.size()) throw Error(ErrorCode::EmptyFile, origin + " has a header but no data");
  return parse_numeric(rows, first, width, origin);
}

void save_csv(const DataView& view, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  char buf[32];
  for (Index j = 0; j < view.x.cols(); ++j) {
    for (Index i = 0; i < view.x.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", view.x(i, j));
      out << buf << ',';
    }
    const int l = view.labels[static_cast<std::size_t>(j)];
    out << (view.label_names.empty() ? std::to_string(l)
                                     : view.label_names[static_cast<std::size_t>(l)])
        << '\n';
  }
  if (!out) throw Error(ErrorCode::IoError, "write to " + path.string() + " failed");
}

MultiViewDataset load_multiview(const std::filesystem::path& manifest_path) {
  const std::filesystem::path base = manifest_path.parent_path();
  std::istringstream in(read_file(manifest_path));
  std::vector<std::pair<std::string, std::filesystem::path>> view_files;
  std::optional<std::filesystem::path> label_file;
  std::string line;
  std::size_t line_no = 0;
  const std::string origin = manifest_path.string();
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line.substr(0, line.find('#')));
    if (t.empty()) continue;
    std::istringstream fields(t);
    std::string kind, a, b, extra;
    fields >> kind >> a >> b >> extra;
    auto resolve = [&](const std::string& p) {
      const std::filesystem::path fp(p);
      return fp.is_absolute() ? fp : base / fp;
    };
    if (kind == "view" && !b.empty() && extra.empty()) {
      view_files.emplace_back(a, resolve(b));
    } else if (kind == "labels" && !a.empty() && b.empty()) {
      label_file = resolve(a);
    } else {
      throw Error(ErrorCode::ParseError, origin + ":" + std::to_string(line_no) +
                                             ": expected 'view <name> <path>' or 'labels <path>'");
    }
  }
  if (view_files.empty()) throw Error(ErrorCode::EmptyFile, origin + " lists no views");
  if (!label_file) throw Error(ErrorCode::MissingLabels, origin + " has no labels line");

  std::vector<std::string> raw = read_label_file(*label_file);
  MultiViewDataset ds;
  ds.name = manifest_path.stem().string();
  std::vector<std::string> names;
  for (std::size_t v = 0; v < view_files.size(); ++v) {
    const Matrix x = load_feature_csv(view_files[v].second);
    if (v > 0 && x.cols() != ds.views.front().size()) {
      throw Error(ErrorCode::ViewShapeMismatch,
                  "view '" + view_files[v].first + "' has " + std::to_string(x.cols()) +
                      " samples, view '" + ds.views.front().name + "' has " +
                      std::to_string(ds.views.front().size()));
    }
    if (v == 0 && static_cast<Index>(raw.size()) == x.cols() + 1) raw.erase(raw.begin());
    if (static_cast<Index>(raw.size()) != x.cols()) {
      throw Error(ErrorCode::MissingLabels, label_file->string() + " has " +
                                                std::to_string(raw.size()) + " labels for " +
                                                std::to_string(x.cols()) + " samples");
    }
    DataView view = make_view(x, raw, view_files[v].first);
    view.view_index = static_cast<int>(v);
    ds.views.push_back(std::move(view));
  }
  ds.validate();
  return ds;
}

}  // namespace fastsda
