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

// Axis-aligned regression trees that remember how many training rows reached
// each node, and the path-dependent coverage descent that turns those counts
// into a conditional expectation estimate.
//
// Text format, one record per line ('#' starts a comment):
//
//   tree <arity>
//   <id> split <feature> <threshold> <left id> <right id> <coverage>
//   <id> leaf <value> <coverage>
//
// Node 0 is the root. A file may hold several "tree" blocks; the model is
// their sum. Doubles are written in shortest round-trip form, so
// Parse(Serialize(t)) reproduces t exactly.

#ifndef SHAPLAB_TREE_H_
#define SHAPLAB_TREE_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shaplab/coalition.h"
#include "shaplab/dataset.h"
#include "shaplab/model.h"

namespace shaplab {

// x[feature] < threshold goes left.
struct TreeNode {
  int feature = -1;  // -1 for a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaves only
  std::uint64_t coverage = 0;

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

class DecisionTree final : public PredictiveModel {
 public:
  // Throws std::invalid_argument unless the nodes form a tree rooted at 0
  // with in-range features, finite leaf values and thresholds, and every
  // split's coverage equal to the sum of its children's.
  DecisionTree(int arity, std::vector<TreeNode> nodes);

  int arity() const override { return arity_; }
  double Score(std::span<const double> x) const override;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int depth() const;

  // E[f(X) | X_S = x_S] estimated by descending the tree: splits on a
  // feature in S follow x, other splits average both children weighted by
  // training coverage. Children never reached in training get weight zero.
  // Throws ComputationError if the descent is forced into a node with zero
  // coverage.
  double ConditionalExpectation(std::span<const double> x,
                                const Coalition& s) const;

  bool operator==(const DecisionTree& other) const {
    return arity_ == other.arity_ && nodes_ == other.nodes_;
  }

 private:
  double Descend(int node, std::span<const double> x, const Coalition& s) const;

  int arity_;
  std::vector<TreeNode> nodes_;
};

class TreeEnsemble final : public PredictiveModel {
 public:
  // Throws std::invalid_argument if empty or the arities disagree.
  explicit TreeEnsemble(std::vector<DecisionTree> trees);

  int arity() const override { return trees_.front().arity(); }
  double Score(std::span<const double> x) const override;
  double ConditionalExpectation(std::span<const double> x,
                                const Coalition& s) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }

  std::string Serialize() const;
  // Throws DataError naming the offending line.
  static TreeEnsemble Parse(std::string_view text);
  static TreeEnsemble Load(const std::string& path);

 private:
  std::vector<DecisionTree> trees_;
};

// Greedy variance-reduction tree. Candidate thresholds are midpoints between
// consecutive distinct values; the split with the smallest summed squared
// error wins, ties going to the lowest feature and then the lowest
// threshold. Impure nodes are split even when no split reduces error, which
// is what lets depth 2 fit XOR. Constant targets yield a single leaf.
// Throws std::invalid_argument if targets.size() != n_rows or max_depth < 1.
DecisionTree BuildTreeFromData(const TabularDataset& data,
                               std::span<const double> targets, int max_depth);

}  // namespace shaplab

#endif  // SHAPLAB_TREE_H_
