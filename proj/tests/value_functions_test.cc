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
#include <filesystem>
#include <fstream>
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
#include "shaplab/game.h"
#include "shaplab/model.h"
#include "shaplab/solvers.h"
#include "shaplab/value_functions.h"
#include "testing/games.h"

namespace shaplab {
namespace {

using ::shaplab::testing::BruteForceShapley;
using ::testing::DoubleNear;
using ::testing::ElementsAre;
using ::testing::HasSubstr;
using ::testing::Pointwise;

using Rows = std::vector<std::vector<double>>;

TabularDataset Data(Rows rows) {
  std::vector<std::string> names;
  for (std::size_t j = 0; j < rows.front().size(); ++j) {
    names.push_back("x" + std::to_string(j + 1));
  }
  return TabularDataset(std::move(names), std::move(rows));
}

ModelPtr Sum2() {
  return MakeFunctionModel(2, [](std::span<const double> x) { return x[0] + x[1]; });
}
ModelPtr First2() {
  return MakeFunctionModel(2, [](std::span<const double> x) { return x[0]; });
}
ModelPtr Product2() {
  return MakeFunctionModel(2, [](std::span<const double> x) { return x[0] * x[1]; });
}

// Oracles working straight from the rows, with no library code involved.

double OracleConditional(const Rows& rows,
                         double (*f)(const std::vector<double>&),
                         const std::vector<double>& x, std::uint64_t s) {
  double sum = 0.0;
  int matches = 0;
  for (const auto& row : rows) {
    bool match = true;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if ((s >> j & 1) && row[j] != x[j]) match = false;
    }
    if (match) {
      sum += f(row);
      ++matches;
    }
  }
  return sum / matches;
}

double OracleMarginalJoint(const Rows& rows,
                           double (*f)(const std::vector<double>&),
                           const std::vector<double>& x, std::uint64_t s) {
  double sum = 0.0;
  for (const auto& row : rows) {
    std::vector<double> h = row;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (s >> j & 1) h[j] = x[j];
    }
    sum += f(h);
  }
  return sum / rows.size();
}

std::vector<double> Table(const CoalitionGame& game) {
  std::vector<double> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << game.n_players()); ++s) {
    out.push_back(game.value(s));
  }
  return out;
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

TEST(ConditionalGameTest, UniformSquareSum) {
  const TabularDataset data = Data(Factorial(2, {0, 1}));
  const CoalitionGame game = BuildConditionalGame(Sum2(), data, {1, 1});
  EXPECT_THAT(Table(game), ElementsAre(1.0, 1.5, 1.5, 2.0));
  EXPECT_THAT(ExactShapleySubsets(game).values,
              Pointwise(DoubleNear(1e-12), {0.5, 0.5}));
}

TEST(ConditionalGameTest, PerfectProxyGetsCredit) {
  const TabularDataset data = Data({{0, 0}, {1, 1}});
  const CoalitionGame game = BuildConditionalGame(First2(), data, {1, 1});
  EXPECT_EQ(game.empty_value(), 0.5);
  EXPECT_EQ(game.value(Coalition::Of(2, {1})), 1.0);
  EXPECT_GT(ExactShapleySubsets(game).values[1], 0.0);
}

TEST(ConditionalGameTest, RedundantCopyDegeneracies) {
  Rows rows;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) rows.push_back({a, b, b});
  }
  const TabularDataset data = Data(rows);
  auto f = MakeFunctionModel(3, [](std::span<const double> x) { return x[0] * x[1]; });
  const CoalitionGame game = BuildConditionalGame(f, data, {1, 1, 1});
  // Bits: A = 1, B = 2, C = 4.
  EXPECT_EQ(game.value(2), game.value(4));
  EXPECT_EQ(game.value(2), game.value(6));
  EXPECT_EQ(game.value(3), game.value(5));
  EXPECT_EQ(game.value(3), game.value(7));
}

TEST(ConditionalGameTest, MatchesRowOracleOnRandomDiscreteData) {
  std::mt19937_64 gen(11);
  std::uniform_int_distribution<int> level(0, 2);
  Rows rows(60, std::vector<double>(4));
  for (auto& r : rows) {
    for (double& v : r) v = level(gen);
    r[3] = r[0];  // a dependent column
  }
  const TabularDataset data = Data(rows);
  auto f = +[](const std::vector<double>& x) {
    return x[0] * x[1] - 2 * x[2] + 0.5 * x[3] * x[3];
  };
  auto model = MakeFunctionModel(4, [f](std::span<const double> x) {
    return f(std::vector<double>(x.begin(), x.end()));
  });
  const std::vector<double> x = rows[7];
  const CoalitionGame game = BuildConditionalGame(model, data, x);
  for (std::uint64_t s = 0; s + 1 < 16; ++s) {
    EXPECT_NEAR(game.value(s), OracleConditional(rows, f, x, s), 1e-12) << s;
  }
  EXPECT_EQ(game.grand_value(), f(x));
  EXPECT_THAT(ExactShapleySubsets(game).values,
              Pointwise(DoubleNear(1e-12), BruteForceShapley(Table(game))));
}

TEST(ConditionalGameTest, EmptyConditioningNamesCoalition) {
  const TabularDataset data(std::vector<std::string>{"age", "income", "zip"},
                            Rows{{0, 0, 0}, {1, 1, 1}});
  auto f = MakeFunctionModel(3, [](std::span<const double> x) { return x[0]; });
  const CoalitionGame game = BuildConditionalGame(f, data, {0, 1, 0});
  EXPECT_EQ(game.value(Coalition::Of(3, {1})), 1.0);
  try {
    game.value(Coalition::Of(3, {0, 1}));
    FAIL() << "expected EmptyConditioningError";
  } catch (const EmptyConditioningError& e) {
    EXPECT_THAT(e.what(), HasSubstr("{age,income}"));
    EXPECT_EQ(e.coalition_bits(), 3u);
  }
  EXPECT_THROW(ExactShapleySubsets(game), EmptyConditioningError);
}

TEST(ConditionalGameTest, ContinuousFeatureRejected) {
  const TabularDataset data = Data({{0.5, 1}, {1.25, 0}});
  EXPECT_EQ(data.kind(0), DomainKind::kContinuous);
  EXPECT_THROW(BuildConditionalGame(Sum2(), data, {0.5, 1}),
               ContinuousFeatureError);
}

TEST(InterventionalGameTest, SingleReferenceProduct) {
  const TabularDataset data = Data({{0, 0}, {1, 1}});
  ValueFunctionSpec spec;
  spec.kind = ValueFunctionKind::kSingleReference;
  spec.reference = std::vector<double>{0, 0};
  const CoalitionGame game = BuildInterventionalGame(Product2(), data, {1, 2}, spec);
  EXPECT_THAT(Table(game), ElementsAre(0.0, 0.0, 0.0, 2.0));
  EXPECT_THAT(ExactShapleySubsets(game).values,
              Pointwise(DoubleNear(1e-12), {1.0, 1.0}));
}

TEST(InterventionalGameTest, MarginalJointLinearLimit) {
  const TabularDataset data = Data(Factorial(2, {0, 1}));
  auto f = MakeFunctionModel(
      2, [](std::span<const double> x) { return 0.25 + 3 * x[0] - 2 * x[1]; });
  const CoalitionGame game = BuildInterventionalGame(f, data, {1, 0}, {});
  // v(S) = b0 + sum_{S} b_j x_j + sum_{Sbar} b_j * 0.5
  EXPECT_NEAR(game.value(0), 0.25 + 1.5 - 1.0, 1e-12);
  EXPECT_NEAR(game.value(1), 0.25 + 3.0 - 1.0, 1e-12);
  EXPECT_NEAR(game.value(2), 0.25 + 1.5, 1e-12);
  EXPECT_NEAR(game.value(3), 0.25 + 3.0, 1e-12);
}

TEST(InterventionalGameTest, MarginalJointMatchesRowOracle) {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> normal;
  Rows rows(40, std::vector<double>(3));
  for (auto& r : rows) {
    for (double& v : r) v = normal(gen);
  }
  auto f = +[](const std::vector<double>& x) {
    return std::sin(x[0]) + x[1] * x[2];
  };
  auto model = MakeFunctionModel(3, [f](std::span<const double> x) {
    return f(std::vector<double>(x.begin(), x.end()));
  });
  const std::vector<double> x = {0.3, -1.0, 2.0};
  const CoalitionGame game = BuildInterventionalGame(model, Data(rows), x, {});
  for (std::uint64_t s = 0; s + 1 < 8; ++s) {
    EXPECT_NEAR(game.value(s), OracleMarginalJoint(rows, f, x, s), 1e-12);
  }
  EXPECT_EQ(game.grand_value(), f(x));
}

std::vector<ValueFunctionSpec> InterventionalSpecs(std::size_t d) {
  std::vector<ValueFunctionSpec> specs(5);
  specs[0].kind = ValueFunctionKind::kMarginalJoint;  // full pass
  specs[1].kind = ValueFunctionKind::kMarginalJoint;
  specs[1].n_samples = 7;
  specs[1].seed = 3;
  specs[2].kind = ValueFunctionKind::kProductOfMarginals;
  specs[2].n_samples = 50;
  specs[2].seed = 9;
  specs[3].kind = ValueFunctionKind::kSingleReference;
  specs[3].reference = std::vector<double>(d, -4.0);
  specs[4].kind = ValueFunctionKind::kProductOfMarginals;
  specs[4].n_samples = 1;
  return specs;
}

TEST(InterventionalGameTest, InertFeatureGetsExactlyZero) {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> normal;
  Rows rows(25, std::vector<double>(3));
  for (auto& r : rows) {
    for (double& v : r) v = normal(gen);
  }
  // Feature 1 is ignored by the model.
  auto model = MakeFunctionModel(3, [](std::span<const double> x) {
    return x[0] * x[0] + std::exp(x[2]) * x[0];
  });
  for (const auto& spec : InterventionalSpecs(3)) {
    const CoalitionGame game =
        BuildInterventionalGame(model, Data(rows), {0.7, 5.0, -0.2}, spec);
    EXPECT_EQ(ExactShapleySubsets(game).values[1], 0.0)
        << ValueFunctionKindName(spec.kind) << " n=" << spec.n_samples;
  }
}

TEST(InterventionalGameTest, GrandCoalitionIsPrediction) {
  const TabularDataset data = Data(Factorial(2, {0, 1}));
  for (const auto& spec : InterventionalSpecs(2)) {
    EXPECT_EQ(BuildInterventionalGame(Product2(), data, {3, 4}, spec).grand_value(),
              12.0);
  }
  EXPECT_EQ(BuildConditionalGame(Product2(), data, {1, 1}).grand_value(), 1.0);
}

TEST(InterventionalGameTest, DeterministicAcrossBuildsAndOrder) {
  const TabularDataset data = Data(Factorial(3, {0, 1, 2}));
  auto model = MakeFunctionModel(3, [](std::span<const double> x) {
    return x[0] * x[1] + x[2];
  });
  ValueFunctionSpec spec;
  spec.kind = ValueFunctionKind::kProductOfMarginals;
  spec.n_samples = 13;
  spec.seed = 42;
  const CoalitionGame a = BuildInterventionalGame(model, data, {2, 1, 0}, spec);
  const CoalitionGame b = BuildInterventionalGame(model, data, {2, 1, 0}, spec);
  std::vector<double> forward, backward(8);
  for (std::uint64_t s = 0; s < 8; ++s) forward.push_back(a.value(s));
  for (std::uint64_t s = 8; s-- > 0;) backward[s] = b.value(s);
  EXPECT_EQ(forward, backward);
}

TEST(InterventionalGameTest, RejectsBadSpecs) {
  const TabularDataset data = Data({{0, 0}, {1, 1}});
  ValueFunctionSpec spec;
  spec.kind = ValueFunctionKind::kSingleReference;
  EXPECT_THROW(BuildInterventionalGame(Sum2(), data, {0, 0}, spec),
               std::invalid_argument);
  spec.kind = ValueFunctionKind::kMarginalJoint;
  spec.reference = std::vector<double>{0, 0};
  EXPECT_THROW(BuildInterventionalGame(Sum2(), data, {0, 0}, spec),
               std::invalid_argument);
  spec.reference.reset();
  spec.kind = ValueFunctionKind::kProductOfMarginals;
  EXPECT_THROW(BuildInterventionalGame(Sum2(), data, {0, 0}, spec),
               std::invalid_argument);
  spec.n_samples = 0;
  EXPECT_THROW(BuildInterventionalGame(Sum2(), data, {0, 0}, spec),
               std::invalid_argument);
  EXPECT_THROW(BuildInterventionalGame(Sum2(), data, {0, 0, 0}, {}),
               std::invalid_argument);
}

TEST(ValueFunctionKindTest, NamesRoundTrip) {
  for (auto kind : {ValueFunctionKind::kConditionalEmpirical,
                    ValueFunctionKind::kMarginalJoint,
                    ValueFunctionKind::kProductOfMarginals,
                    ValueFunctionKind::kSingleReference}) {
    EXPECT_EQ(ParseValueFunctionKind(ValueFunctionKindName(kind)), kind);
  }
  EXPECT_THROW(ParseValueFunctionKind("kernel"), std::invalid_argument);
}

TEST(HybridTest, FullCoalitionIsInstance) {
  const TabularDataset data = Data(Factorial(2, {0, 1}));
  const auto hybrids =
      GenerateHybrids(data, std::vector<double>{5, 6}, Coalition::Full(2), {});
  ASSERT_EQ(hybrids.size(), 1u);
  EXPECT_THAT(hybrids[0].values, ElementsAre(5.0, 6.0));
  EXPECT_EQ(hybrids[0].provenance.source, HybridProvenance::Source::kInstance);
}

TEST(HybridTest, EmptyCoalitionGivesDatasetRows) {
  const Rows rows = {{0, 3}, {1, 4}, {2, 5}};
  const TabularDataset data = Data(rows);
  const auto hybrids =
      GenerateHybrids(data, std::vector<double>{9, 9}, Coalition::Empty(2), {});
  ASSERT_EQ(hybrids.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(hybrids[k].values, rows[hybrids[k].provenance.row]);
  }
  EXPECT_EQ(OodFraction(data, hybrids, OodCriterion::RowMembership()), 0.0);
}

TEST(HybridTest, KeptCoordinatesAndProvenanceAgree) {
  const TabularDataset data = Data(Factorial(3, {0, 1, 2, 3}));
  const std::vector<double> x = {7, 8, 9};
  ValueFunctionSpec spec;
  spec.kind = ValueFunctionKind::kProductOfMarginals;
  spec.n_samples = 40;
  spec.seed = 2;
  const Coalition s = Coalition::Of(3, {1});
  for (const auto& h : GenerateHybrids(data, x, s, spec)) {
    EXPECT_EQ(h.values[1], 8.0);
    ASSERT_EQ(h.provenance.feature_rows.size(), 3u);
    EXPECT_EQ(h.provenance.feature_rows[1], -1);
    for (int j : {0, 2}) {
      EXPECT_EQ(h.values[j], data.at(h.provenance.feature_rows[j], j));
    }
  }
}

TEST(HybridTest, EngineeredProductIsBroken) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> normal;
  Rows rows(50, std::vector<double>(3));
  for (auto& r : rows) {
    r[0] = normal(gen);
    r[1] = normal(gen);
    r[2] = r[0] * r[1];
  }
  const TabularDataset data = Data(rows);
  const std::vector<double> x = {0.4, -1.1, 9.0};  // off-data x3
  const auto hybrids = GenerateHybrids(data, x, Coalition::Of(3, {0, 1}), {});
  auto product = OodCriterion::Constraint([](std::span<const double> v) {
    return std::abs(v[2] - v[0] * v[1]) <= 1e-9;
  });
  EXPECT_EQ(OodFraction(data, hybrids, product), 1.0);
  std::vector<HybridSample> as_rows;
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    as_rows.push_back({{rows[r]}, Coalition::Full(3), {}});
  }
  EXPECT_EQ(OodFraction(data, as_rows, product), 0.0);
}

TEST(HybridTest, ProxyPairProductOfMarginalsIsHalfOffData) {
  const TabularDataset data = Data({{0, 0}, {1, 1}});
  ValueFunctionSpec spec;
  spec.kind = ValueFunctionKind::kProductOfMarginals;
  spec.n_samples = 20000;
  spec.seed = 17;
  const auto hybrids =
      GenerateHybrids(data, std::vector<double>{1, 1}, Coalition::Of(2, {0}), spec);
  // Binomial(20000, 1/2): 4 standard errors is about 0.014.
  EXPECT_NEAR(OodFraction(data, hybrids, OodCriterion::RowMembership()), 0.5,
              0.014);
  EXPECT_THROW(OodFraction(data, std::span<const HybridSample>(),
                           OodCriterion::RowMembership()),
               std::invalid_argument);
}

TEST(IndirectInfluenceTest, ProxyDataset) {
  const TabularDataset data = Data({{0, 0}, {1, 1}});
  const IndirectInfluence gap = IndirectInfluenceGap(First2(), data, {1, 1}, 1);
  EXPECT_NEAR(gap.conditional_phi, 0.25, 1e-12);
  EXPECT_EQ(gap.interventional_phi, 0.0);
}

TEST(IndirectInfluenceTest, ConstantModelAndIndependentData) {
  auto constant = MakeFunctionModel(2, [](std::span<const double>) { return 3.0; });
  const IndirectInfluence a =
      IndirectInfluenceGap(constant, Data({{0, 0}, {1, 1}}), {1, 1}, 1);
  EXPECT_EQ(a.conditional_phi, 0.0);
  EXPECT_EQ(a.interventional_phi, 0.0);
  const IndirectInfluence b =
      IndirectInfluenceGap(First2(), Data(Factorial(2, {0, 1})), {1, 0}, 1);
  EXPECT_NEAR(b.conditional_phi, 0.0, 1e-12);
  EXPECT_EQ(b.interventional_phi, 0.0);
}

TEST(IndirectInfluenceTest, RejectsActiveFeature) {
  EXPECT_THROW(IndirectInfluenceGap(Sum2(), Data({{0, 0}, {1, 1}}), {1, 1}, 1),
               std::invalid_argument);
}

TEST(IndependenceCollapseTest, ConditionalEqualsMarginalJointOnFactorialData) {
  const Rows rows = Factorial(3, {-1, 0, 2});
  const TabularDataset data = Data(rows);
  auto model = MakeFunctionModel(3, [](std::span<const double> x) {
    return x[0] * x[1] * x[2] + x[1] * x[1] - x[0];
  });
  for (const auto& x : {rows[4], rows[17], rows[26]}) {
    const CoalitionGame cond = BuildConditionalGame(model, data, x);
    const CoalitionGame intv = BuildInterventionalGame(model, data, x, {});
    for (std::uint64_t s = 0; s < 8; ++s) {
      EXPECT_NEAR(cond.value(s), intv.value(s), 1e-9) << s;
    }
  }
}

TEST(DatasetTest, InfersKindsAndRejectsBadShapes) {
  const TabularDataset data = Data({{0, 0.5}, {1, 2}});
  EXPECT_EQ(data.kind(0), DomainKind::kDiscrete);
  EXPECT_EQ(data.kind(1), DomainKind::kContinuous);
  EXPECT_FALSE(data.all_discrete());
  EXPECT_THROW(Data({{0, 1}, {1}}), std::invalid_argument);
  EXPECT_THROW(TabularDataset({"a", "a"}, Rows{{0, 1}}), std::invalid_argument);
  EXPECT_THROW(TabularDataset({"a"}, Rows{}), std::invalid_argument);
  EXPECT_THROW(TabularDataset({"a"}, Rows{{NAN}}), std::invalid_argument);
}

TEST(DatasetTest, ParsesCsvWithSchema) {
  const TabularDataset data = TabularDataset::ParseCsv(
      "a, b\n1,2\n3,+4.5\n", std::string_view("# kinds\na: continuous\n"));
  EXPECT_EQ(data.n_rows(), 2u);
  EXPECT_THAT(data.feature_names(), ElementsAre("a", "b"));
  EXPECT_EQ(data.kind(0), DomainKind::kContinuous);
  EXPECT_EQ(data.kind(1), DomainKind::kContinuous);
  EXPECT_EQ(data.at(1, 1), 4.5);
  EXPECT_TRUE(data.ContainsRow(std::vector<double>{3, 4.5}));
  EXPECT_FALSE(data.ContainsRow(std::vector<double>{3, 4}));
  EXPECT_THAT(data.ColumnMeans(), ElementsAre(2.0, 3.25));
  EXPECT_EQ(data.FeatureIndex("b"), 1);
  EXPECT_EQ(data.FeatureIndex("z"), -1);
  EXPECT_EQ(data.Describe(Coalition::Of(2, {1})), "{b}");
  const TabularDataset again = TabularDataset::ParseCsv(data.ToCsv());
  EXPECT_EQ(again.at(1, 1), 4.5);
}

TEST(DatasetTest, CsvErrorsNameTheLine) {
  try {
    TabularDataset::ParseCsv("a,b\n1,2\n3,x\n");
    FAIL();
  } catch (const DataError& e) {
    EXPECT_THAT(e.what(), HasSubstr("line 3"));
  }
  EXPECT_THROW(TabularDataset::ParseCsv("a,b\n1\n"), DataError);
  EXPECT_THROW(TabularDataset::ParseCsv("a,b\n"), DataError);
  EXPECT_THROW(TabularDataset::ParseCsv("a,b\n1,2\n", std::string_view("c: discrete")),
               DataError);
  EXPECT_THROW(TabularDataset::ParseCsv("a,b\n1,2\n", std::string_view("a: fuzzy")),
               DataError);
}

TEST(DatasetTest, LoadsSidecarSchema) {
  const auto dir = std::filesystem::temp_directory_path() / "shaplab_vf_test";
  std::filesystem::create_directories(dir);
  const auto csv = dir / "d.csv";
  std::ofstream(csv) << "p,q\n0,1\n1,0\n";
  std::ofstream(csv.string() + ".schema") << "q: continuous\n";
  const TabularDataset data = TabularDataset::LoadCsv(csv.string());
  EXPECT_EQ(data.kind(0), DomainKind::kDiscrete);
  EXPECT_EQ(data.kind(1), DomainKind::kContinuous);
  EXPECT_THROW(TabularDataset::LoadCsv((dir / "missing.csv").string()), DataError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace shaplab
