// Copyright 2026 The Shaplab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "shaplab/tree.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "shaplab/errors.h"
#include "text_util.h"

namespace shaplab {
namespace {

using internal::FormatDouble;
using internal::ParseDouble;
using internal::ParseInt;
using internal::Split;
using internal::Trim;

[[noreturn]] void Invalid(const std::string& what) {
  throw std::invalid_argument("DecisionTree: " + what);
}

}  // namespace

DecisionTree::DecisionTree(int arity, std::vector<TreeNode> nodes)
    : arity_(arity), nodes_(std::move(nodes)) {
  if (arity_ < 1) Invalid("arity must be positive");
  if (nodes_.empty()) Invalid("no nodes");
  const int n = static_cast<int>(nodes_.size());
  std::vector<int> parents(n, 0);
  for (int id = 0; id < n; ++id) {
    const TreeNode& node = nodes_[id];
    if (node.is_leaf()) {
      if (!std::isfinite(node.value)) {
        Invalid("leaf " + std::to_string(id) + " has a non-finite value");
      }
      continue;
    }
    if (node.feature >= arity_) {
      Invalid("node " + std::to_string(id) + " splits on feature " +
              std::to_string(node.feature) + " >= arity");
    }
    if (!std::isfinite(node.threshold)) {
      Invalid("node " + std::to_string(id) + " has a non-finite threshold");
    }
    for (int child : {node.left, node.right}) {
      if (child <= 0 || child >= n) {
        Invalid("node " + std::to_string(id) + " has bad child " +
                std::to_string(child));
      }
      ++parents[child];
    }
    if (node.left == node.right) Invalid("node " + std::to_string(id) + " repeats a child");
    if (nodes_[node.left].coverage + nodes_[node.right].coverage != node.coverage) {
      Invalid("coverage of node " + std::to_string(id) +
              " is not the sum of its children");
    }
  }
  for (int id = 1; id < n; ++id) {
    if (parents[id] != 1) {
      Invalid("node " + std::to_string(id) + " has " +
              std::to_string(parents[id]) + " parents");
    }
  }
  // Every non-root node has exactly one parent and the root has none, so
  // the structure is a tree iff everything is reachable from the root.
  std::vector<bool> seen(n, false);
  std::vector<int> stack = {0};
  int reached = 0;
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (seen[id]) Invalid("cycle through node " + std::to_string(id));
    seen[id] = true;
    ++reached;
    if (!nodes_[id].is_leaf()) {
      stack.push_back(nodes_[id].left);
      stack.push_back(nodes_[id].right);
    }
  }
  if (reached != n) Invalid("unreachable nodes");
}

double DecisionTree::Score(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != arity_) {
    throw std::invalid_argument("DecisionTree::Score: arity mismatch");
  }
  int id = 0;
  while (!nodes_[id].is_leaf()) {
    const TreeNode& node = nodes_[id];
    id = x[node.feature] < node.threshold ? node.left : node.right;
  }
  return nodes_[id].value;
}

int DecisionTree::depth() const {
  std::function<int(int)> rec = [&](int id) -> int {
    const TreeNode& node = nodes_[id];
    if (node.is_leaf()) return 0;
    return 1 + std::max(rec(node.left), rec(node.right));
  };
  return rec(0);
}

double DecisionTree::ConditionalExpectation(std::span<const double> x,
                                            const Coalition& s) const {
  if (static_cast<int>(x.size()) != arity_ || s.n_players() != arity_) {
    throw std::invalid_argument(
        "DecisionTree::ConditionalExpectation: arity mismatch");
  }
  return Descend(0, x, s);
}

double DecisionTree::Descend(int id, std::span<const double> x,
                             const Coalition& s) const {
  const TreeNode& node = nodes_[id];
  if (node.coverage == 0) {
    throw ComputationError("tree descent reached node " + std::to_string(id) +
                           " with zero training coverage");
  }
  if (node.is_leaf()) return node.value;
  if (s.contains(node.feature)) {
    return Descend(x[node.feature] < node.threshold ? node.left : node.right,
                   x, s);
  }
  double total = 0.0;
  for (int child : {node.left, node.right}) {
    const std::uint64_t cover = nodes_[child].coverage;
    if (cover == 0) continue;
    total += static_cast<double>(cover) * Descend(child, x, s);
  }
  return total / static_cast<double>(node.coverage);
}

TreeEnsemble::TreeEnsemble(std::vector<DecisionTree> trees)
    : trees_(std::move(trees)) {
  if (trees_.empty()) throw std::invalid_argument("TreeEnsemble: no trees");
  for (const DecisionTree& tree : trees_) {
    if (tree.arity() != trees_.front().arity()) {
      throw std::invalid_argument("TreeEnsemble: arity mismatch");
    }
  }
}

double TreeEnsemble::Score(std::span<const double> x) const {
  double total = 0.0;
  for (const DecisionTree& tree : trees_) total += tree.Score(x);
  return total;
}

double TreeEnsemble::ConditionalExpectation(std::span<const double> x,
                                            const Coalition& s) const {
  double total = 0.0;
  for (const DecisionTree& tree : trees_) {
    total += tree.ConditionalExpectation(x, s);
  }
  return total;
}

std::string TreeEnsemble::Serialize() const {
  std::ostringstream out;
  for (const DecisionTree& tree : trees_) {
    out << "tree " << tree.arity() << '\n';
    const auto& nodes = tree.nodes();
    for (std::size_t id = 0; id < nodes.size(); ++id) {
      const TreeNode& node = nodes[id];
      if (node.is_leaf()) {
        out << id << " leaf " << FormatDouble(node.value) << ' '
            << node.coverage << '\n';
      } else {
        out << id << " split " << node.feature << ' '
            << FormatDouble(node.threshold) << ' ' << node.left << ' '
            << node.right << ' ' << node.coverage << '\n';
      }
    }
  }
  return out.str();
}

TreeEnsemble TreeEnsemble::Parse(std::string_view text) {
  std::vector<DecisionTree> trees;
  int arity = 0;
  std::vector<TreeNode> nodes;
  int tree_line = 0;
  int line_no = 0;

  auto fail = [&](int line, const std::string& what) {
    throw DataError("tree text line " + std::to_string(line) + ": " + what);
  };
  auto flush = [&]() {
    if (arity == 0) return;
    try {
      trees.emplace_back(arity, std::move(nodes));
    } catch (const std::invalid_argument& e) {
      fail(tree_line, e.what());
    }
    nodes.clear();
  };

  for (std::string_view raw : Split(text, '\n')) {
    ++line_no;
    std::string_view line = raw.substr(0, raw.find('#'));
    line = Trim(line);
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    for (std::string_view f : Split(line, ' ')) {
      if (!Trim(f).empty()) fields.push_back(Trim(f));
    }
    if (fields[0] == "tree") {
      flush();
      std::optional<int> a;
      if (fields.size() != 2 || !(a = ParseInt<int>(fields[1])) || *a < 1) {
        fail(line_no, "expected 'tree <arity>'");
      }
      arity = *a;
      tree_line = line_no;
      continue;
    }
    if (arity == 0) fail(line_no, "node before any 'tree' header");
    const auto id = ParseInt<int>(fields[0]);
    if (!id || *id != static_cast<int>(nodes.size())) {
      fail(line_no, "node ids must be 0, 1, 2, ... in order");
    }
    TreeNode node;
    if (fields.size() == 4 && fields[1] == "leaf") {
      const auto value = ParseDouble(fields[2]);
      const auto cover = ParseInt<std::uint64_t>(fields[3]);
      if (!value || !cover) fail(line_no, "malformed leaf");
      node.value = *value;
      node.coverage = *cover;
    } else if (fields.size() == 7 && fields[1] == "split") {
      const auto feature = ParseInt<int>(fields[2]);
      const auto threshold = ParseDouble(fields[3]);
      const auto left = ParseInt<int>(fields[4]);
      const auto right = ParseInt<int>(fields[5]);
      const auto cover = ParseInt<std::uint64_t>(fields[6]);
      if (!feature || *feature < 0 || !threshold || !left || !right || !cover) {
        fail(line_no, "malformed split");
      }
      node.feature = *feature;
      node.threshold = *threshold;
      node.left = *left;
      node.right = *right;
      node.coverage = *cover;
    } else {
      fail(line_no, "expected '<id> leaf ...' or '<id> split ...'");
    }
    nodes.push_back(node);
  }
  flush();
  if (trees.empty()) throw DataError("tree text: no trees");
  return TreeEnsemble(std::move(trees));
}

TreeEnsemble TreeEnsemble::Load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open tree file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Parse(buffer.str());
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
}

namespace {

struct Builder {
  const TabularDataset& data;
  std::span<const double> targets;
  int max_depth;
  std::vector<TreeNode> nodes;

  static double Sse(std::span<const double> values) {
    if (values.empty()) return 0.0;
    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    double sse = 0.0;
    for (double v : values) sse += (v - mean) * (v - mean);
    return sse;
  }

  int Grow(std::vector<std::size_t> rows, int depth) {
    const int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    nodes[id].coverage = rows.size();

    std::vector<double> y;
    y.reserve(rows.size());
    for (std::size_t r : rows) y.push_back(targets[r]);
    const bool pure = std::all_of(y.begin(), y.end(),
                                  [&](double v) { return v == y.front(); });
    auto make_leaf = [&]() {
      nodes[id].value = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
      return id;
    };
    if (pure || depth >= max_depth) return make_leaf();

    int best_feature = -1;
    double best_threshold = 0.0;
    double best_sse = 0.0;
    std::vector<double> left_y, right_y;
    for (int j = 0; j < data.n_features(); ++j) {
      std::vector<double> values;
      for (std::size_t r : rows) values.push_back(data.at(r, j));
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());
      for (std::size_t k = 0; k + 1 < values.size(); ++k) {
        const double threshold = values[k] + (values[k + 1] - values[k]) / 2;
        left_y.clear();
        right_y.clear();
        for (std::size_t r : rows) {
          (data.at(r, j) < threshold ? left_y : right_y).push_back(targets[r]);
        }
        const double sse = Sse(left_y) + Sse(right_y);
        // Strict comparison keeps the first (lowest feature, lowest
        // threshold) candidate among ties.
        if (best_feature < 0 || sse < best_sse) {
          best_feature = j;
          best_threshold = threshold;
          best_sse = sse;
        }
      }
    }
    if (best_feature < 0) return make_leaf();  // all rows identical

    std::vector<std::size_t> left_rows, right_rows;
    for (std::size_t r : rows) {
      (data.at(r, best_feature) < best_threshold ? left_rows : right_rows)
          .push_back(r);
    }
    nodes[id].feature = best_feature;
    nodes[id].threshold = best_threshold;
    const int left = Grow(std::move(left_rows), depth + 1);
    const int right = Grow(std::move(right_rows), depth + 1);
    nodes[id].left = left;
    nodes[id].right = right;
    return id;
  }
};

}  // namespace

DecisionTree BuildTreeFromData(const TabularDataset& data,
                               std::span<const double> targets, int max_depth) {
  if (targets.size() != data.n_rows()) {
    throw std::invalid_argument("BuildTreeFromData: " +
                                std::to_string(targets.size()) +
                                " targets for " + std::to_string(data.n_rows()) +
                                " rows");
  }
  if (max_depth < 1) throw std::invalid_argument("BuildTreeFromData: max_depth < 1");
  for (double t : targets) {
    if (!std::isfinite(t)) {
      throw std::invalid_argument("BuildTreeFromData: non-finite target");
    }
  }
  Builder builder{data, targets, max_depth, {}};
  std::vector<std::size_t> rows(data.n_rows());
  std::iota(rows.begin(), rows.end(), 0);
  builder.Grow(std::move(rows), 0);
  return DecisionTree(data.n_features(), std::move(builder.nodes));
}

}  // namespace shaplab
