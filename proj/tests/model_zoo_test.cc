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

#include <cmath>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "shaplab/coalition.h"
#include "shaplab/dataset.h"
#include "shaplab/errors.h"
#include "shaplab/models.h"
#include "shaplab/solvers.h"
#include "shaplab/tree.h"
#include "shaplab/value_functions.h"

namespace shaplab {
namespace {

using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::Pointwise;

using Rows = std::vector<std::vector<double>>;

TabularDataset Data(Rows rows) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < rows.front().size(); ++j) {
    names.push_back("f" + std::to_string(j));
  }
  return TabularDataset(std::move(names), std::move(rows));
}

Rows Factorial(int d, const std::vector<double>& support) {
  Rows rows = {{}};
  for (int j = 0; j < d; ++j) {
    Rows next;
    for (const auto& r : rows) {
      for (double v : support) {
        auto copy = r;
        copy.push_back(v);
        next.push_back(copy);
      }
    }
    rows = next;
  }
  return rows;
}

TEST(LinearModelTest, ClosedFormExamples) {
  const LinearModel model(0.0, {2, -1, 0});
  const Attribution a = LinearClosedForm(model, std::vector<double>{1, 3, 5},
                                         std::vector<double>{0, 0, 0});
  EXPECT_THAT(a.values, ElementsAre(2.0, -3.0, 0.0));
  EXPECT_EQ(a.base_value, 0.0);
  EXPECT_EQ(a.method, AttributionMethod::kClosedForm);

  const std::vector<double> means = {0.5, 1.5, -2};
  const Attribution zero = LinearClosedForm(model, means, means);
  EXPECT_THAT(zero.values, ElementsAre(0.0, 0.0, 0.0));
  EXPECT_EQ(zero.base_value, model.Score(means));
  EXPECT_THROW(LinearClosedForm(model, std::vector<double>{1, 2},
                                std::vector<double>{0, 0, 0}),
               std::invalid_argument);
}

TEST(LinearModelTest, AgreesWithFullPassGame) {
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> coef(-3, 3);
  const TabularDataset data = Data(Factorial(4, {-1, 0, 2}));
  const std::vector<double> means = data.ColumnMeans();
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> beta(4);
    for (double& b : beta) b = coef(gen);
    auto model = std::make_shared<LinearModel>(coef(gen), beta);
    const std::vector<double> x(data.row(trial * 7).begin(),
                                data.row(trial * 7).end());
    const Attribution game =
        ExactShapleySubsets(BuildInterventionalGame(model, data, x, {}));
    const Attribution closed = LinearClosedForm(*model, x, means);
    EXPECT_THAT(game.values, Pointwise(DoubleNear(1e-9), closed.values));
    EXPECT_NEAR(game.base_value, closed.base_value, 1e-9);
  }
}

TEST(MultiplicativeModelTest, ClosedFormExamples) {
  EXPECT_THAT(MultiplicativeClosedForm(MultiplicativeModel(2),
                                       std::vector<double>{3, 0.5})
                  .values,
              ElementsAre(0.75, 0.75));
  EXPECT_THAT(MultiplicativeClosedForm(MultiplicativeModel(3),
                                       std::vector<double>{1, 2, 3})
                  .values,
              ElementsAre(2.0, 2.0, 2.0));
  EXPECT_THAT(MultiplicativeClosedForm(MultiplicativeModel(3),
                                       std::vector<double>{4, 0, 3})
                  .values,
              ElementsAre(0.0, 0.0, 0.0));
}

TEST(MultiplicativeModelTest, ConditionalGameCollapsesToEvenSplit) {
  for (int d : {2, 3}) {
    for (const auto& support :
         {std::vector<double>{-1, 1}, std::vector<double>{-1, 0, 1}}) {
      const Rows rows = Factorial(d, support);
      const TabularDataset data = Data(rows);
      auto model = std::make_shared<MultiplicativeModel>(d);
      for (const auto& x : rows) {
        const CoalitionGame game = BuildConditionalGame(model, data, x);
        const std::uint64_t full = Coalition::FullMask(d);
        for (std::uint64_t s = 0; s < full; ++s) {
          EXPECT_NEAR(game.value(s), 0.0, 1e-12);
        }
        EXPECT_THAT(ExactShapleySubsets(game).values,
                    Pointwise(DoubleNear(1e-9),
                              MultiplicativeClosedForm(*model, x).values));
      }
    }
  }
}

TEST(QuadraticRecourseModelTest, PeakAtOne) {
  const QuadraticRecourseModel f;
  EXPECT_EQ(f.Score(std::vector<double>{1}), 2.0);
  EXPECT_EQ(f.Score(std::vector<double>{2}), 1.0);
  EXPECT_EQ(f.Score(std::vector<double>{0}), 1.0);
}

TEST(ScaffoldTest, BiasedOnDataInnocuousOff) {
  const TabularDataset data = Data({{1, 0.25}, {0, 0.75}});
  auto biased = std::make_shared<LinearModel>(0.0, std::vector<double>{1, 0});
  auto innocuous = std::make_shared<LinearModel>(0.5, std::vector<double>{0, 0});
  const auto scaffold = Scaffold(biased, innocuous, data);
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    EXPECT_EQ(scaffold->Score(data.row(r)), biased->Score(data.row(r)));
  }
  EXPECT_EQ(scaffold->Score(std::vector<double>{1, 0.75}), 0.5);
  EXPECT_THROW(Scaffold(biased, std::make_shared<MultiplicativeModel>(3), data),
               std::invalid_argument);
  EXPECT_THROW(Scaffold(std::make_shared<MultiplicativeModel>(3),
                        std::make_shared<MultiplicativeModel>(3), data),
               std::invalid_argument);
}

DecisionTree Stump2() {
  return DecisionTree(2, {{1, 0.0, 1, 2, 0.0, 7},
                          {-1, 0.0, -1, -1, -0.125, 3},
                          {-1, 0.0, -1, -1, 0.1, 4}});
}

DecisionTree Stump() {
  return DecisionTree(1, {{0, 0.5, 1, 2, 0.0, 100},
                          {-1, 0.0, -1, -1, 0.0, 50},
                          {-1, 0.0, -1, -1, 1.0, 50}});
}

TEST(DecisionTreeTest, StumpConditionalExpectation) {
  const DecisionTree tree = Stump();
  const std::vector<double> x = {0.7};
  EXPECT_EQ(tree.ConditionalExpectation(x, Coalition::Empty(1)), 0.5);
  EXPECT_EQ(tree.ConditionalExpectation(x, Coalition::Full(1)), 1.0);
  EXPECT_EQ(tree.Score(std::vector<double>{0.2}), 0.0);
  EXPECT_EQ(tree.depth(), 1);
}

TEST(DecisionTreeTest, RejectsMalformedTrees) {
  // Coverage does not add up.
  EXPECT_THROW(DecisionTree(1, {{0, 0.5, 1, 2, 0, 10},
                                {-1, 0, -1, -1, 0, 4},
                                {-1, 0, -1, -1, 1, 5}}),
               std::invalid_argument);
  // Shared child.
  EXPECT_THROW(DecisionTree(1, {{0, 0.5, 1, 1, 0, 2}, {-1, 0, -1, -1, 0, 1}}),
               std::invalid_argument);
  // Feature out of range.
  EXPECT_THROW(DecisionTree(1, {{3, 0.5, 1, 2, 0, 2},
                                {-1, 0, -1, -1, 0, 1},
                                {-1, 0, -1, -1, 0, 1}}),
               std::invalid_argument);
  // Unreachable node.
  EXPECT_THROW(DecisionTree(1, {{-1, 0, -1, -1, 0, 2}, {-1, 0, -1, -1, 0, 1}}),
               std::invalid_argument);
  EXPECT_THROW(DecisionTree(1, {{-1, 0, -1, -1, NAN, 1}}), std::invalid_argument);
}

TEST(DecisionTreeTest, ZeroCoverageOnlyFailsWhenForced) {
  const DecisionTree tree(1, {{0, 0.5, 1, 2, 0, 4},
                              {-1, 0, -1, -1, 3.0, 4},
                              {-1, 0, -1, -1, 9.0, 0}});
  EXPECT_EQ(tree.ConditionalExpectation(std::vector<double>{0.9},
                                        Coalition::Empty(1)),
            3.0);
  EXPECT_THROW(tree.ConditionalExpectation(std::vector<double>{0.9},
                                           Coalition::Full(1)),
               ComputationError);
}

TEST(DecisionTreeTest, BuilderSeparableConstantAndXor) {
  const TabularDataset line = Data({{0}, {1}, {2}, {3}});
  const std::vector<double> step = {0, 0, 5, 5};
  const DecisionTree stump = BuildTreeFromData(line, step, 3);
  EXPECT_EQ(stump.depth(), 1);
  EXPECT_EQ(stump.nodes()[0].threshold, 1.5);
  for (std::size_t r = 0; r < 4; ++r) EXPECT_EQ(stump.Score(line.row(r)), step[r]);

  const DecisionTree leaf = BuildTreeFromData(line, std::vector<double>(4, 2.5), 3);
  ASSERT_EQ(leaf.nodes().size(), 1u);
  EXPECT_EQ(leaf.nodes()[0].value, 2.5);

  const Rows xor_rows = Factorial(2, {0, 1});
  const TabularDataset xor_data = Data(xor_rows);
  std::vector<double> labels;
  for (const auto& r : xor_rows) labels.push_back(r[0] != r[1] ? 1.0 : 0.0);
  auto error = [&](const DecisionTree& t) {
    double sse = 0;
    for (std::size_t r = 0; r < xor_rows.size(); ++r) {
      sse += std::pow(t.Score(xor_data.row(r)) - labels[r], 2);
    }
    return sse;
  };
  const DecisionTree deep = BuildTreeFromData(xor_data, labels, 2);
  EXPECT_EQ(error(deep), 0.0);
  // Every stump on XOR leaves half the rows misfit: error 4 * 0.25.
  EXPECT_EQ(error(BuildTreeFromData(xor_data, labels, 1)), 1.0);
  // Ties resolve to the lowest feature at the root.
  EXPECT_EQ(deep.nodes()[0].feature, 0);
  EXPECT_EQ(deep.nodes()[0].coverage, 4u);
  EXPECT_THROW(BuildTreeFromData(xor_data, labels, 0), std::invalid_argument);
  EXPECT_THROW(BuildTreeFromData(xor_data, std::vector<double>(3), 2),
               std::invalid_argument);
}

TEST(DecisionTreeTest, CoverageDescentMatchesEmpiricalConditioning) {
  Rows rows;
  for (int k = 0; k < 3; ++k) rows.push_back({0, 0});
  for (int k = 0; k < 5; ++k) rows.push_back({1, 1});
  const TabularDataset data = Data(rows);
  const std::vector<double> targets = {0, 0, 0, 4, 4, 4, 4, 4};
  // Root splits on the second feature, so conditioning on it alone selects
  // exactly the matching rows, as empirical conditioning does.
  const DecisionTree tree(2, {{1, 0.5, 1, 4, 0, 8},
                              {0, 0.5, 2, 3, 0, 3},
                              {-1, 0, -1, -1, 0.0, 3},
                              {-1, 0, -1, -1, 7.0, 0},
                              {0, 0.5, 5, 6, 0, 5},
                              {-1, 0, -1, -1, -3.0, 0},
                              {-1, 0, -1, -1, 4.0, 5}});
  for (std::size_t r = 0; r < rows.size(); ++r) {
    EXPECT_EQ(tree.Score(data.row(r)), targets[r]);
  }
  auto model = std::make_shared<TreeEnsemble>(std::vector<DecisionTree>{tree});
  const std::vector<double> x = {1, 1};
  const CoalitionGame game = BuildConditionalGame(model, data, x);
  for (std::uint64_t s : {0b00, 0b10, 0b11}) {
    EXPECT_NEAR(tree.ConditionalExpectation(x, Coalition(2, s)), game.value(s),
                1e-9)
        << s;
  }
  EXPECT_NEAR(tree.ConditionalExpectation(x, Coalition::Of(2, {1})), 4.0, 1e-12);
  EXPECT_NEAR(tree.ConditionalExpectation(x, Coalition::Empty(2)), 2.5, 1e-12);
  // Conditioning on the first feature only is path dependent: the descent
  // averages at the root and is then forced into an empty branch.
  EXPECT_THROW(tree.ConditionalExpectation(x, Coalition::Of(2, {0})),
               ComputationError);
}

TEST(DecisionTreeTest, BuiltTreeFullAndEmptyConditioning) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> level(0, 3);
  Rows rows(80, std::vector<double>(3));
  std::vector<double> targets;
  for (auto& r : rows) {
    for (double& v : r) v = level(gen);
    targets.push_back(r[0] * r[1] - r[2]);
  }
  const TabularDataset data = Data(rows);
  const DecisionTree tree = BuildTreeFromData(data, targets, 4);
  double mean = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) mean += tree.Score(data.row(r));
  mean /= rows.size();
  for (std::size_t r = 0; r < rows.size(); r += 9) {
    EXPECT_EQ(tree.ConditionalExpectation(data.row(r), Coalition::Full(3)),
              tree.Score(data.row(r)));
    EXPECT_NEAR(tree.ConditionalExpectation(data.row(r), Coalition::Empty(3)),
                mean, 1e-9);
  }
}

TEST(TreeEnsembleTest, SumsTreesAndRoundTrips) {
  std::mt19937_64 gen(4);
  std::normal_distribution<double> normal;
  Rows rows(30, std::vector<double>(2));
  std::vector<double> targets;
  for (auto& r : rows) {
    r = {normal(gen), normal(gen)};
    targets.push_back(std::sin(r[0]) / 3 + r[1]);
  }
  const TabularDataset data = Data(rows);
  const TreeEnsemble ensemble({BuildTreeFromData(data, targets, 3), Stump2()});
  const std::vector<double> x = {0.1, -0.4};
  EXPECT_EQ(ensemble.Score(x),
            ensemble.trees()[0].Score(x) + ensemble.trees()[1].Score(x));
  const TreeEnsemble parsed = TreeEnsemble::Parse(ensemble.Serialize());
  EXPECT_EQ(parsed.trees(), ensemble.trees());
  EXPECT_EQ(parsed.Serialize(), ensemble.Serialize());
}

}  // namespace
}  // namespace shaplab
