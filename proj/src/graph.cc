/*
 * Copyright 2026 The DKM Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "dkm/graph.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "dkm/error.h"
#include "dkm/rng.h"
#include "text_format.h"

namespace dkm {
namespace {

std::string Location(std::string_view source, int line) {
  std::ostringstream os;
  os << source << ":" << line;
  return os.str();
}

std::ifstream OpenForRead(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) ThrowDataError("cannot open '" + path.string() + "' for reading");
  return in;
}

bool IsNonNegativeInteger(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

Graph::Graph(std::vector<std::string> node_ids, Matrix weights,
             bool symmetrized_input)
    : node_ids_(std::move(node_ids)),
      weights_(std::move(weights)),
      symmetrized_input_(symmetrized_input) {
  const auto n = static_cast<Eigen::Index>(node_ids_.size());
  if (n == 0) ThrowDataError("graph has no nodes");
  if (weights_.rows() != n || weights_.cols() != n) {
    ThrowDataError("weight matrix is " + std::to_string(weights_.rows()) + "x" +
                   std::to_string(weights_.cols()) + " but there are " +
                   std::to_string(n) + " node ids");
  }
  index_.reserve(node_ids_.size());
  for (int i = 0; i < static_cast<int>(n); ++i) {
    if (!index_.emplace(node_ids_[i], i).second) {
      ThrowDataError("duplicate node id '" + node_ids_[i] + "'");
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (weights_(i, i) != 0.0) {
      ThrowDataError("self-loop weight on node '" + node_ids_[i] + "'");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const double w = weights_(i, j);
      if (!std::isfinite(w) || w < 0.0) {
        ThrowDataError("weight between '" + node_ids_[i] + "' and '" +
                       node_ids_[j] + "' is negative or non-finite");
      }
      if (w != weights_(j, i)) {
        ThrowDataError("weight matrix is not symmetric at ('" + node_ids_[i] +
                       "', '" + node_ids_[j] + "')");
      }
    }
  }
}

Vector Graph::Degrees() const { return weights_.rowwise().sum(); }

int Graph::IndexOf(std::string_view id) const {
  const auto it = index_.find(std::string(id));
  return it == index_.end() ? -1 : it->second;
}

LabelSet::LabelSet(std::vector<Label> labels) : labels_(std::move(labels)) {
  for (int i = 0; i < size(); ++i) {
    (labels_[i] == Label::kUnknown ? missing_ : observed_).push_back(i);
  }
}

int LabelSet::count(Label label) const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), label));
}

void LabelSet::RequireBothClasses() const {
  if (count(Label::kClass1) < 1 || count(Label::kClass2) < 1) {
    ThrowDataError("both classes need at least one observed node (class 1: " +
                   std::to_string(count(Label::kClass1)) + ", class 2: " +
                   std::to_string(count(Label::kClass2)) + ")");
  }
}

DenseFormat DenseFormatForPath(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  return (ext == ".tsv" || ext == ".tab") ? DenseFormat::kTsv : DenseFormat::kCsv;
}

Graph ParseDenseMatrix(std::istream& in, DenseFormat format,
                       std::string_view source) {
  const char sep = format == DenseFormat::kTsv ? '\t' : ',';
  struct Row {
    int line;
    std::vector<std::string> cells;
  };
  std::vector<Row> rows;
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    if (text::Trim(line).empty()) continue;
    Row row{line_no, {}};
    for (auto cell : text::Split(line, sep)) row.cells.emplace_back(cell);
    rows.push_back(std::move(row));
  }
  if (rows.empty()) ThrowDataError(std::string(source) + ": empty matrix file");

  const auto numeric = [](const std::string& s) {
    return text::ParseDouble(s).has_value();
  };
  const bool has_header =
      !std::all_of(rows.front().cells.begin(), rows.front().cells.end(), numeric);
  const std::size_t first_data = has_header ? 1 : 0;
  if (rows.size() <= first_data) {
    ThrowDataError(std::string(source) + ": header row without data rows");
  }
  const bool has_id_col = !numeric(rows[first_data].cells.front());
  const auto n = static_cast<int>(rows.size() - first_data);
  const int offset = has_id_col ? 1 : 0;

  Matrix m(n, n);
  std::vector<std::string> ids;
  for (int r = 0; r < n; ++r) {
    const Row& row = rows[first_data + r];
    if (static_cast<int>(row.cells.size()) != n + offset) {
      ThrowDataError(Location(source, row.line) + ": non-square matrix, row has " +
                     std::to_string(row.cells.size() - offset) +
                     " values but there are " + std::to_string(n) + " rows");
    }
    if (has_id_col) ids.push_back(row.cells.front());
    for (int c = 0; c < n; ++c) {
      const std::string& cell = row.cells[c + offset];
      const auto value = text::ParseDouble(cell);
      const std::string where = Location(source, row.line) + " (row " +
                                std::to_string(r + 1) + ", column " +
                                std::to_string(c + 1) + ")";
      if (!value || !std::isfinite(*value)) {
        ThrowDataError(where + ": cannot parse '" + cell + "' as a number");
      }
      if (*value < 0.0) ThrowDataError(where + ": negative entry " + cell);
      m(r, c) = *value;
    }
  }

  if (has_header) {
    std::vector<std::string> header = rows.front().cells;
    if (static_cast<int>(header.size()) == n + 1) header.erase(header.begin());
    if (static_cast<int>(header.size()) != n) {
      ThrowDataError(Location(source, rows.front().line) +
                     ": header has " + std::to_string(header.size()) +
                     " ids for " + std::to_string(n) + " columns");
    }
    if (has_id_col && header != ids) {
      ThrowDataError(std::string(source) +
                     ": header ids do not match the id column");
    }
    if (!has_id_col) ids = std::move(header);
  }
  if (ids.empty()) {
    for (int i = 0; i < n; ++i) ids.push_back(std::to_string(i));
  }

  bool changed = false;
  Matrix w(n, n);
  for (int i = 0; i < n; ++i) {
    w(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m(i, j) + m(j, i));
      if (std::abs(avg - m(i, j)) > 1e-9) changed = true;
      w(i, j) = avg;
      w(j, i) = avg;
    }
  }
  return Graph(std::move(ids), std::move(w), changed);
}

Graph LoadDenseMatrix(const std::filesystem::path& path, DenseFormat format) {
  auto in = OpenForRead(path);
  return ParseDenseMatrix(in, format, path.string());
}

Graph ParseEdgeList(std::istream& in, std::optional<int> n_hint,
                    std::string_view source) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, int> first_seen;
  std::map<std::pair<int, int>, double> edges;
  const auto intern = [&](std::string_view id) {
    const auto [it, inserted] =
        first_seen.emplace(std::string(id), static_cast<int>(ids.size()));
    if (inserted) ids.emplace_back(id);
    return it->second;
  };

  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tokens = text::SplitWhitespace(trimmed);
    if (tokens.size() != 2 && tokens.size() != 3) {
      ThrowDataError(Location(source, line_no) +
                     ": malformed line, expected 'id_a id_b [weight]'");
    }
    double weight = 1.0;
    if (tokens.size() == 3) {
      const auto parsed = text::ParseDouble(tokens[2]);
      if (!parsed || !std::isfinite(*parsed)) {
        ThrowDataError(Location(source, line_no) + ": cannot parse weight '" +
                       std::string(tokens[2]) + "'");
      }
      if (*parsed < 0.0) {
        ThrowDataError(Location(source, line_no) + ": negative weight " +
                       std::string(tokens[2]));
      }
      weight = *parsed;
    }
    if (tokens[0] == tokens[1]) {
      ThrowDataError(Location(source, line_no) + ": self-loop on '" +
                     std::string(tokens[0]) + "'");
    }
    const int a = intern(tokens[0]);
    const int b = intern(tokens[1]);
    edges[{std::min(a, b), std::max(a, b)}] = weight;
  }

  const bool integer_ids = std::all_of(ids.begin(), ids.end(), [](const auto& id) {
    return IsNonNegativeInteger(id);
  });
  if (n_hint) {
    if (!integer_ids) {
      ThrowDataError(std::string(source) +
                     ": n_hint requires nonnegative integer node ids");
    }
    if (*n_hint < static_cast<int>(ids.size())) {
      ThrowDataError(std::string(source) + ": n_hint " + std::to_string(*n_hint) +
                     " is smaller than the " + std::to_string(ids.size()) +
                     " ids in the file");
    }
    for (int k = 0; k < *n_hint; ++k) intern(std::to_string(k));
    if (static_cast<int>(ids.size()) != *n_hint) {
      ThrowDataError(std::string(source) + ": ids outside 0.." +
                     std::to_string(*n_hint - 1) + " with n_hint " +
                     std::to_string(*n_hint));
    }
  }
  if (ids.empty()) ThrowDataError(std::string(source) + ": no edges");

  // order[k] = index (in first-seen numbering) of the k-th output node.
  std::vector<int> order(ids.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
  if (integer_ids) {
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
      const auto& a = ids[x];
      const auto& b = ids[y];
      // Compare as integers without overflow: strip leading zeros.
      const auto strip = [](const std::string& s) {
        const auto p = s.find_first_not_of('0');
        return p == std::string::npos ? std::string_view("0")
                                      : std::string_view(s).substr(p);
      };
      const auto sa = strip(a);
      const auto sb = strip(b);
      if (sa.size() != sb.size()) return sa.size() < sb.size();
      if (sa != sb) return sa < sb;
      return a < b;
    });
  }
  std::vector<int> position(ids.size());
  std::vector<std::string> ordered_ids(ids.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    position[order[k]] = static_cast<int>(k);
    ordered_ids[k] = ids[order[k]];
  }
  const auto n = static_cast<Eigen::Index>(ids.size());
  Matrix w = Matrix::Zero(n, n);
  for (const auto& [key, weight] : edges) {
    const int i = position[key.first];
    const int j = position[key.second];
    w(i, j) = weight;
    w(j, i) = weight;
  }
  return Graph(std::move(ordered_ids), std::move(w));
}

Graph LoadEdgeList(const std::filesystem::path& path, std::optional<int> n_hint) {
  auto in = OpenForRead(path);
  return ParseEdgeList(in, n_hint, path.string());
}

void WriteEdgeList(std::ostream& out, const Graph& graph) {
  const Matrix& w = graph.weights();
  out << "# " << graph.size() << " nodes\n";
  for (int i = 0; i < graph.size(); ++i) {
    for (int j = i + 1; j < graph.size(); ++j) {
      if (w(i, j) == 0.0) continue;
      out << graph.node_id(i) << ' ' << graph.node_id(j);
      if (w(i, j) != 1.0) out << ' ' << text::FormatDouble(w(i, j), 17);
      out << '\n';
    }
  }
}

LabelSet ParseLabels(std::istream& in, const Graph& graph,
                     std::string_view source) {
  std::vector<Label> labels(graph.size(), Label::kUnknown);
  std::vector<bool> seen(graph.size(), false);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const std::string_view trimmed = text::Trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    const auto tokens = text::SplitWhitespace(trimmed);
    if (tokens.size() != 2) {
      ThrowDataError(Location(source, line_no) +
                     ": malformed line, expected 'node_id label'");
    }
    Label label;
    if (tokens[1] == "1") {
      label = Label::kClass1;
    } else if (tokens[1] == "2") {
      label = Label::kClass2;
    } else if (tokens[1] == "?") {
      label = Label::kUnknown;
    } else {
      ThrowDataError(Location(source, line_no) + ": label must be 1, 2 or ?, got '" +
                     std::string(tokens[1]) + "'");
    }
    const int index = graph.IndexOf(tokens[0]);
    if (index < 0) {
      ThrowDataError(Location(source, line_no) + ": unknown node id '" +
                     std::string(tokens[0]) + "'");
    }
    if (seen[index] && labels[index] != label) {
      ThrowDataError(Location(source, line_no) + ": contradictory labels for '" +
                     std::string(tokens[0]) + "'");
    }
    seen[index] = true;
    labels[index] = label;
  }
  return LabelSet(std::move(labels));
}

LabelSet LoadLabels(const std::filesystem::path& path, const Graph& graph) {
  auto in = OpenForRead(path);
  return ParseLabels(in, graph, path.string());
}

void WriteLabels(std::ostream& out, const Graph& graph, const LabelSet& labels) {
  for (int i = 0; i < graph.size(); ++i) {
    out << graph.node_id(i) << ' ';
    switch (labels[i]) {
      case Label::kClass1: out << "1\n"; break;
      case Label::kClass2: out << "2\n"; break;
      case Label::kUnknown: out << "?\n"; break;
    }
  }
}

PrunedGraph DropIsolated(const Graph& graph) {
  const Vector degrees = graph.Degrees();
  std::vector<int> keep;
  std::vector<std::string> removed;
  for (int i = 0; i < graph.size(); ++i) {
    if (degrees[i] > 0.0) {
      keep.push_back(i);
    } else {
      removed.push_back(graph.node_id(i));
    }
  }
  if (keep.empty()) ThrowDataError("every node is isolated");
  if (removed.empty()) return {graph, {}};
  const auto k = static_cast<Eigen::Index>(keep.size());
  Matrix w(k, k);
  std::vector<std::string> ids;
  for (Eigen::Index a = 0; a < k; ++a) {
    ids.push_back(graph.node_id(keep[a]));
    for (Eigen::Index b = 0; b < k; ++b) w(a, b) = graph.weights()(keep[a], keep[b]);
  }
  return {Graph(std::move(ids), std::move(w), graph.symmetrized_input()),
          std::move(removed)};
}

LabelSet RestrictLabels(const LabelSet& labels, const Graph& from, const Graph& to) {
  std::vector<Label> out(to.size(), Label::kUnknown);
  for (int i = 0; i < to.size(); ++i) {
    const int j = from.IndexOf(to.node_id(i));
    if (j < 0) ThrowDataError("node '" + to.node_id(i) + "' has no label entry");
    out[i] = labels[j];
  }
  return LabelSet(std::move(out));
}

Graph BlendSimilarity(std::span<const Graph> graphs, std::span<const double> weights) {
  if (graphs.empty()) ThrowConfigError("blend needs at least one matrix");
  if (graphs.size() != weights.size()) {
    ThrowConfigError("blend has " + std::to_string(graphs.size()) +
                     " matrices but " + std::to_string(weights.size()) + " weights");
  }
  bool any_positive = false;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) ThrowConfigError("blend weights must be >= 0");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) ThrowConfigError("blend weights are all zero");
  const Graph& first = graphs.front();
  Matrix out = Matrix::Zero(first.size(), first.size());
  bool symmetrized = false;
  for (std::size_t k = 0; k < graphs.size(); ++k) {
    if (graphs[k].node_ids() != first.node_ids()) {
      ThrowDataError("blend input " + std::to_string(k + 1) +
                     " has a different node set or order");
    }
    out += weights[k] * graphs[k].weights();
    symmetrized = symmetrized || graphs[k].symmetrized_input();
  }
  return Graph(first.node_ids(), std::move(out), symmetrized);
}

Graph ReorderNodes(const Graph& graph, const std::vector<std::string>& node_ids) {
  if (static_cast<int>(node_ids.size()) != graph.size()) {
    ThrowDataError("cannot reorder: node counts differ");
  }
  std::vector<int> source(node_ids.size());
  for (std::size_t k = 0; k < node_ids.size(); ++k) {
    source[k] = graph.IndexOf(node_ids[k]);
    if (source[k] < 0) ThrowDataError("cannot reorder: unknown id '" + node_ids[k] + "'");
  }
  const auto n = static_cast<Eigen::Index>(node_ids.size());
  Matrix w(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) w(a, b) = graph.weights()(source[a], source[b]);
  }
  return Graph(node_ids, std::move(w), graph.symmetrized_input());
}

LaplacianMatrix Laplacian(const Graph& graph) {
  Matrix l = -graph.weights();
  const Vector degrees = graph.Degrees();
  for (int i = 0; i < graph.size(); ++i) l(i, i) = degrees[i];
  return LaplacianMatrix(std::move(l));
}

LabeledGraph GenerateSbm(const SbmSpec& spec) {
  if (spec.sizes[0] < 1 || spec.sizes[1] < 1) {
    ThrowConfigError("SBM block sizes must be positive");
  }
  const auto valid = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!valid(spec.p_in) || !valid(spec.p_out)) {
    ThrowConfigError("SBM probabilities must lie in [0, 1]");
  }
  const int n = spec.sizes[0] + spec.sizes[1];
  const auto block = [&](int i) { return i < spec.sizes[0] ? 0 : 1; };
  Rng rng(spec.seed);
  Matrix w = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = block(i) == block(j) ? spec.p_in : spec.p_out;
      if (rng.Uniform01() < p) {
        w(i, j) = 1.0;
        w(j, i) = 1.0;
      }
    }
  }
  std::vector<std::string> ids;
  std::vector<Label> labels;
  for (int i = 0; i < n; ++i) {
    ids.push_back(std::to_string(i));
    labels.push_back(block(i) == 0 ? Label::kClass1 : Label::kClass2);
  }
  return {Graph(std::move(ids), std::move(w)), LabelSet(std::move(labels))};
}

}  // namespace dkm
