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

#ifndef DKM_GRAPH_H_
#define DKM_GRAPH_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace dkm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Undirected weighted graph over a dense n x n weight matrix.
//
// Invariants, checked on construction: n >= 1, node ids unique, W finite,
// symmetric (exactly as stored), nonnegative, zero diagonal.
class Graph {
 public:
  Graph(std::vector<std::string> node_ids, Matrix weights,
        bool symmetrized_input = false);

  int size() const { return static_cast<int>(node_ids_.size()); }
  const std::vector<std::string>& node_ids() const { return node_ids_; }
  const std::string& node_id(int i) const { return node_ids_[i]; }
  const Matrix& weights() const { return weights_; }

  // True when the source matrix was asymmetric by more than 1e-9 and had to
  // be averaged with its transpose.
  bool symmetrized_input() const { return symmetrized_input_; }

  // Row sums of W.
  Vector Degrees() const;

  // Index of `id`, or -1.
  int IndexOf(std::string_view id) const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.node_ids_ == b.node_ids_ && a.weights_ == b.weights_;
  }

 private:
  std::vector<std::string> node_ids_;
  Matrix weights_;
  bool symmetrized_input_;
  std::unordered_map<std::string, int> index_;
};

enum class Label : std::int8_t { kUnknown = 0, kClass1 = 1, kClass2 = 2 };

// Per-node labels over {1, 2, unknown}. Observed nodes are the labeled ones.
class LabelSet {
 public:
  LabelSet() = default;
  explicit LabelSet(std::vector<Label> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  Label operator[](int i) const { return labels_[i]; }
  const std::vector<Label>& labels() const { return labels_; }

  // Ascending node indices with a known / unknown label.
  const std::vector<int>& observed() const { return observed_; }
  const std::vector<int>& missing() const { return missing_; }

  int count(Label label) const;

  // Throws a data error unless both classes have at least one observed node.
  void RequireBothClasses() const;

  friend bool operator==(const LabelSet& a, const LabelSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<Label> labels_;
  std::vector<int> observed_;
  std::vector<int> missing_;
};

// L = D - W over a general nonnegative weight matrix.
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(Matrix values) : values_(std::move(values)) {}
  const Matrix& matrix() const { return values_; }
  int size() const { return static_cast<int>(values_.rows()); }

 private:
  Matrix values_;
};

enum class DenseFormat { kCsv, kTsv };

// ".tsv"/".tab" map to kTsv, everything else to kCsv.
DenseFormat DenseFormatForPath(const std::filesystem::path& path);

// Dense n x n grid with an optional header row and id column (detected by a
// non-numeric first cell). The result holds W = (M + M^T) / 2 with a zeroed
// diagonal.
Graph ParseDenseMatrix(std::istream& in, DenseFormat format,
                       std::string_view source = "<stream>");
Graph LoadDenseMatrix(const std::filesystem::path& path, DenseFormat format);

// Lines "id_a id_b [weight]" separated by spaces or tabs; '#' starts a
// comment line. Missing weight means 1 and repeated edges keep the last
// weight. When every id is a nonnegative integer, nodes are ordered
// numerically; otherwise by first appearance. `n_hint` (integer ids only)
// adds isolated nodes "0".."n_hint-1" that no edge mentions.
Graph ParseEdgeList(std::istream& in, std::optional<int> n_hint = std::nullopt,
                    std::string_view source = "<stream>");
Graph LoadEdgeList(const std::filesystem::path& path,
                   std::optional<int> n_hint = std::nullopt);

// Writes the positive-weight edges of `graph` in the edge-list format.
void WriteEdgeList(std::ostream& out, const Graph& graph);

// Lines "node_id label" with label in {1, 2, ?}. Nodes not listed are
// unknown. Unknown ids and contradictory duplicates are data errors.
LabelSet ParseLabels(std::istream& in, const Graph& graph,
                     std::string_view source = "<stream>");
LabelSet LoadLabels(const std::filesystem::path& path, const Graph& graph);
void WriteLabels(std::ostream& out, const Graph& graph, const LabelSet& labels);

struct PrunedGraph {
  Graph graph;
  std::vector<std::string> removed;
};

// Removes nodes whose row sum is zero. Idempotent.
PrunedGraph DropIsolated(const Graph& graph);

// Restricts labels to the node ids of `graph` (e.g. after DropIsolated).
LabelSet RestrictLabels(const LabelSet& labels, const Graph& from,
                        const Graph& to);

// W_out = sum_k weights[k] * W_k. All graphs must share node ids and order.
Graph BlendSimilarity(std::span<const Graph> graphs,
                      std::span<const double> weights);

// Permutes `graph` into the order given by `node_ids` (same id set).
Graph ReorderNodes(const Graph& graph, const std::vector<std::string>& node_ids);

LaplacianMatrix Laplacian(const Graph& graph);

struct SbmSpec {
  std::array<int, 2> sizes{};
  double p_in = 0.0;
  double p_out = 0.0;
  std::uint64_t seed = 0;
};

struct LabeledGraph {
  Graph graph;
  LabelSet labels;
};

// Two-block stochastic block model. Node ids are "0".."n-1", block 0 first;
// block 0 is class 1. Pairs i < j are visited in row-major order and each
// draws one Uniform01() value, connecting when it is below the block
// probability.
LabeledGraph GenerateSbm(const SbmSpec& spec);

}  // namespace dkm

#endif  // DKM_GRAPH_H_
