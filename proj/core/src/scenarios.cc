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

#include "shaplab/scenarios.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "json.hpp"
#include "shaplab/attribution.h"
#include "shaplab/coalition.h"
#include "shaplab/dataset.h"
#include "shaplab/game.h"
#include "shaplab/model.h"
#include "shaplab/models.h"
#include "shaplab/precedence.h"
#include "shaplab/rng.h"
#include "shaplab/solvers.h"
#include "shaplab/value_functions.h"
#include "text_util.h"

namespace shaplab {
namespace {

using internal::FormatDouble;
using Rows = std::vector<std::vector<double>>;

constexpr double kExact = 1e-12;

// Stream tags so scenarios sharing a seed draw unrelated numbers.
constexpr std::uint64_t kLinearStream = 0x4c494e;
constexpr std::uint64_t kRecourseStream = 0x524543;
constexpr std::uint64_t kFigureStream = 0x464947;
constexpr std::uint64_t kEngineeredStream = 0x454e47;
constexpr std::uint64_t kAdversarialStream = 0x414456;

Rows Factorial(const std::vector<std::vector<double>>& supports) {
  Rows rows = {{}};
  for (const auto& support : supports) {
    Rows next;
    for (const auto& r : rows) {
      for (double v : support) {
        auto copy = r;
        copy.push_back(v);
        next.push_back(std::move(copy));
      }
    }
    rows = std::move(next);
  }
  return rows;
}

TabularDataset Named(std::vector<std::string> names, Rows rows) {
  return TabularDataset(std::move(names), std::move(rows));
}

double MaxAbsDiff(const std::vector<double>& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out = std::max(out, std::abs(a[i] - b[i]));
  }
  return out;
}

std::string Fraction(double v) { return FormatDouble(v); }

}  // namespace

std::string_view RelationName(Claim::Relation relation) {
  switch (relation) {
    case Claim::Relation::kNear:
      return "near";
    case Claim::Relation::kAtLeast:
      return "at_least";
    case Claim::Relation::kGreaterThan:
      return "greater_than";
  }
  return "unknown";
}

bool ScenarioReport::passed() const {
  return std::all_of(claims.begin(), claims.end(),
                     [](const Claim& c) { return c.pass; });
}

const Claim& ScenarioReport::Check(std::string description, double expected,
                                   double observed, double tolerance,
                                   Claim::Relation relation) {
  Claim c{std::move(description), expected, observed, tolerance, relation, false};
  switch (relation) {
    case Claim::Relation::kNear:
      c.pass = std::abs(observed - expected) <= tolerance;
      break;
    case Claim::Relation::kAtLeast:
      c.pass = observed >= expected - tolerance;
      break;
    case Claim::Relation::kGreaterThan:
      c.pass = observed > expected;
      break;
  }
  // NaN never passes.
  if (!std::isfinite(observed)) c.pass = false;
  claims.push_back(std::move(c));
  return claims.back();
}

ScenarioReport RunRedundancyScenario() {
  ScenarioReport report;
  report.id = "redundancy";

  // A, B independent and uniform on {-1, +1}; C is a copy of B.
  Rows triple_rows, pair_rows;
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) {
      triple_rows.push_back({a, b, b});
      pair_rows.push_back({a, b});
    }
  }
  const TabularDataset triple = Named({"A", "B", "C"}, triple_rows);
  const TabularDataset pair = Named({"A", "B"}, pair_rows);
  auto f = MakeFunctionModel(3, [](std::span<const double> x) { return x[0] * x[1]; });
  auto f_pair =
      MakeFunctionModel(2, [](std::span<const double> x) { return x[0] * x[1]; });

  const CoalitionGame v = BuildConditionalGame(f, triple, {1, 1, 1});
  const CoalitionGame v_pair = BuildConditionalGame(f_pair, pair, {1, 1});
  constexpr std::uint64_t A = 1, B = 2, C = 4;

  report.Check("v(B) = v(C)", v.value(B), v.value(C), kExact);
  report.Check("v(B) = v(BC)", v.value(B), v.value(B | C), kExact);
  report.Check("v(AB) = v(AC)", v.value(A | B), v.value(A | C), kExact);
  report.Check("v(AB) = v(ABC)", v.value(A | B), v.value(A | B | C), kExact);

  const Attribution phi = ExactShapleySubsets(v);
  const Attribution phi_pair = ExactShapleySubsets(v_pair);
  auto delta = [&](std::uint64_t i, std::uint64_t s) {
    return v.value(s | i) - v.value(s);
  };
  report.Check("phi(A) = 1/3 D(A,{}) + 2/3 D(A,BC)",
               delta(A, 0) / 3 + 2 * delta(A, B | C) / 3, phi.values[0], kExact);
  report.Check("phi(B) = 1/3 D(B,{}) + 1/6 D(B,A)",
               delta(B, 0) / 3 + delta(B, A) / 6, phi.values[1], kExact);

  report.Check("phi(A) at x=(1,1,1)", 2.0 / 3, phi.values[0], kExact);
  report.Check("phi(B) at x=(1,1,1)", 1.0 / 6, phi.values[1], kExact);
  report.Check("phi(C) at x=(1,1,1)", 1.0 / 6, phi.values[2], kExact);
  report.Check("two-feature phi'(A)", 0.5, phi_pair.values[0], kExact);
  report.Check("two-feature phi'(B)", 0.5, phi_pair.values[1], kExact);
  report.Check("|phi'(B) - phi(B)| >= 1/12", 1.0 / 12,
               std::abs(phi_pair.values[1] - phi.values[1]), kExact,
               Claim::Relation::kAtLeast);
  report.Check("|phi'(B) - (phi(B) + phi(C))| >= 1/12", 1.0 / 12,
               std::abs(phi_pair.values[1] - phi.values[1] - phi.values[2]),
               kExact, Claim::Relation::kAtLeast);

  const PrecedenceOrder b_before_c(3, {{1, 2}});
  const Attribution asv = AsymmetricShapley(v, b_before_c);
  report.Check("asymmetric phi(A), B->C", 2.0 / 3, asv.values[0], kExact);
  report.Check("asymmetric phi(B), B->C", 1.0 / 3, asv.values[1], kExact);
  report.Check("asymmetric phi(C) of the descendant", 0.0, asv.values[2], kExact);
  report.Check("asymmetric efficiency", v.grand_value() - v.empty_value(),
               asv.Total(), kExact);

  // With an additive model the asymmetric values of (A, B) coincide with the
  // Shapley values of the model that never saw C.
  auto g = MakeFunctionModel(3, [](std::span<const double> x) { return x[0] + x[1]; });
  auto g_pair =
      MakeFunctionModel(2, [](std::span<const double> x) { return x[0] + x[1]; });
  const Attribution asv_add =
      AsymmetricShapley(BuildConditionalGame(g, triple, {1, 1, 1}), b_before_c);
  const Attribution phi_add =
      ExactShapleySubsets(BuildConditionalGame(g_pair, pair, {1, 1}));
  report.Check("additive model: asymmetric phi(A) = two-feature phi'(A)",
               phi_add.values[0], asv_add.values[0], kExact);
  report.Check("additive model: asymmetric phi(B) = two-feature phi'(B)",
               phi_add.values[1], asv_add.values[1], kExact);
  report.Check("additive model: asymmetric phi(C) of the descendant", 0.0,
               asv_add.values[2], kExact);

  report.findings.push_back(
      "interaction model a*b: asymmetric values (A, B) = (" +
      Fraction(asv.values[0]) + ", " + Fraction(asv.values[1]) +
      ") differ from the two-feature Shapley values (" +
      Fraction(phi_pair.values[0]) + ", " + Fraction(phi_pair.values[1]) +
      "); equality holds only in the additive case");
  return report;
}

ScenarioReport RunLinearScenario(std::uint64_t seed) {
  ScenarioReport report;
  report.id = "linear";
  report.parameters["seed"] = static_cast<double>(seed);

  // Zero-mean independent design.
  const TabularDataset centered =
      Named({"x1", "x2"}, Factorial({{-1, 0, 1}, {-3, 0, 3}}));
  auto model = std::make_shared<LinearModel>(0.0, std::vector<double>{2, -1});
  const std::vector<double> x = {1, 3};
  const Attribution game = ExactShapleySubsets(
      BuildInterventionalGame(model, centered, x, {}));
  report.Check("phi_1 for beta=(2,-1), x=(1,3)", 2.0, game.values[0], 1e-9);
  report.Check("phi_2 for beta=(2,-1), x=(1,3)", -3.0, game.values[1], 1e-9);
  const Attribution at_mean = ExactShapleySubsets(
      BuildInterventionalGame(model, centered, {0, 0}, {}));
  report.Check("x at the mean: max |phi|", 0.0,
               std::max(std::abs(at_mean.values[0]), std::abs(at_mean.values[1])),
               1e-9);

  const TabularDataset design = Named(
      {"x1", "x2", "x3", "x4"},
      Factorial({{-1, 0, 2}, {0, 1}, {-2, 0.5, 3}, {1, 4}}));
  const std::vector<double> means = design.ColumnMeans();
  const CounterRng rng(seed);
  for (std::uint64_t trial = 0; trial < 5; ++trial) {
    std::vector<double> beta(4);
    for (std::size_t j = 0; j < beta.size(); ++j) {
      beta[j] = 6 * rng.Uniform(kLinearStream, trial, j) - 3;
    }
    const double intercept = rng.Normal(kLinearStream, trial, 99);
    auto random_model = std::make_shared<LinearModel>(intercept, beta);
    const auto row = design.row(rng.Index(design.n_rows(), kLinearStream, trial, 100));
    const std::vector<double> xr(row.begin(), row.end());
    const Attribution solved = ExactShapleySubsets(
        BuildInterventionalGame(random_model, design, xr, {}));
    const Attribution closed = LinearClosedForm(*random_model, xr, means);
    report.Check("random model " + std::to_string(trial) +
                     ": max |phi - beta*(x - mean)|",
                 0.0, MaxAbsDiff(solved.values, closed.values), 1e-9);
    report.Check("random model " + std::to_string(trial) + ": base = f(mean)",
                 closed.base_value, solved.base_value, 1e-9);
  }
  return report;
}

ScenarioReport RunMultiplicativeScenario() {
  ScenarioReport report;
  report.id = "multiplicative";

  struct Case {
    std::vector<std::vector<double>> supports;
    std::vector<double> x;
  };
  const std::vector<Case> cases = {
      {{{-1, 1}, {-1, 1}}, {1, 1}},
      {{{-1, 1}, {-1, 1}}, {1, -1}},
      {{{-1, 1}, {-1, 1}, {-1, 1}}, {-1, 1, 1}},
      // Unequal magnitudes: the second feature moves the product five times
      // as much, yet both still receive f(x) / 2.
      {{{-1, 1}, {-5, 5}}, {1, 5}},
  };
  for (const Case& c : cases) {
    const int d = static_cast<int>(c.x.size());
    std::vector<std::string> names;
    for (int j = 0; j < d; ++j) names.push_back("x" + std::to_string(j + 1));
    const TabularDataset data = Named(names, Factorial(c.supports));
    auto model = std::make_shared<MultiplicativeModel>(d);
    const CoalitionGame game = BuildConditionalGame(model, data, c.x);
    std::string label = "x=(";
    for (int j = 0; j < d; ++j) label += (j ? "," : "") + Fraction(c.x[j]);
    label += ")";

    double worst = 0.0;
    for (std::uint64_t s = 0; s < Coalition::FullMask(d); ++s) {
      worst = std::max(worst, std::abs(game.value(s)));
    }
    report.Check(label + ": max |v(S)| over S != D", 0.0, worst, kExact);
    const Attribution phi = ExactShapleySubsets(game);
    const double share = model->Score(c.x) / d;
    for (int j = 0; j < d; ++j) {
      report.Check(label + ": phi_" + std::to_string(j + 1) + " = f(x)/d", share,
                   phi.values[j], 1e-9);
    }
  }
  return report;
}

ScenarioReport RunRecourseScenario(std::uint64_t n_samples, std::uint64_t seed) {
  ScenarioReport report;
  report.id = "recourse";
  report.parameters["n_samples"] = static_cast<double>(n_samples);
  report.parameters["seed"] = static_cast<double>(seed);
  if (n_samples < 2) throw std::invalid_argument("recourse: n_samples < 2");

  const CounterRng rng(seed);
  Rows rows(n_samples);
  for (std::uint64_t k = 0; k < n_samples; ++k) {
    rows[k] = {rng.Normal(kRecourseStream, k)};
  }
  const TabularDataset data = Named({"x"}, std::move(rows));
  auto model = std::make_shared<QuadraticRecourseModel>();
  const CoalitionGame game = BuildInterventionalGame(model, data, {1.0}, {});
  const double phi = ExactShapleySubsets(game).values[0];

  // Var[f(X)] = Var[2X - X^2] = 4 + 2 = 6 for standard normal X.
  const double standard_error = std::sqrt(6.0 / static_cast<double>(n_samples));
  report.parameters["standard_error"] = standard_error;
  report.Check("phi(x=1) = f(1) - E[f(X)]", 2.0, phi, 0.05);
  report.Check("estimated E[f(X)]", 0.0, game.empty_value(), 0.05);
  const double f1 = model->Score(std::vector<double>{1.0});
  const double f2 = model->Score(std::vector<double>{2.0});
  report.Check("f(1) - f(2) > 0: raising x lowers the score", 0.0, f1 - f2, 0.0,
               Claim::Relation::kGreaterThan);
  report.findings.push_back(
      "phi is positive, yet increasing x from 1 lowers f from " +
      Fraction(f1) + " to " + Fraction(f2));
  return report;
}

ScenarioReport RunBeetleScenario() {
  ScenarioReport report;
  report.id = "beetle";
  // Players: T = 0, M1 = 1, M2 = 2. v(S) = 1 iff T in S and M1 or M2 in S.
  const CoalitionGame game(3, [](const Coalition& s) {
    return s.contains(0) && (s.contains(1) || s.contains(2)) ? 1.0 : 0.0;
  });
  const Attribution phi = ExactShapleySubsets(game);
  report.Check("phi(T)", 2.0 / 3, phi.values[0], kExact);
  report.Check("phi(M1)", 1.0 / 6, phi.values[1], kExact);
  report.Check("phi(M2)", 1.0 / 6, phi.values[2], kExact);
  report.Check("efficiency: sum = v(D)", 1.0, phi.Total(), kExact);
  report.Check("symmetry: phi(M1) - phi(M2)", 0.0, phi.values[1] - phi.values[2],
               0.0);
  report.Check("T is necessary: v(D without T)", 0.0,
               game.value(Coalition::Of(3, {1, 2})), 0.0);
  report.Check("M1 alone suffices with T: v({T,M1})", 1.0,
               game.value(Coalition::Of(3, {0, 1})), 0.0);
  report.findings.push_back(
      "T is necessary for the outcome yet receives only 2/3; the additive "
      "split cannot express necessity versus sufficiency");
  return report;
}

ScenarioReport RunOodFigureScenario(double rho, std::uint64_t n,
                                    std::uint64_t seed) {
  ScenarioReport report;
  report.id = "ood-figure";
  report.parameters["rho"] = rho;
  report.parameters["n"] = static_cast<double>(n);
  report.parameters["seed"] = static_cast<double>(seed);
  if (!(rho > -1 && rho < 1) || n < 2) {
    throw std::invalid_argument("ood-figure: need |rho| < 1 and n >= 2");
  }
  const double px = 1.0, py = 2.0;  // explained point
  const double cond_var = 1 - rho * rho;
  const double cond_sd = std::sqrt(cond_var);
  const CounterRng rng(seed);

  struct Cloud {
    std::string name;
    std::vector<double> draws;
    double mean;
    double variance;
  };
  std::vector<Cloud> clouds = {
      {"X | Y=2 (conditional)", {}, rho * py, cond_var},
      {"Y | X=1 (conditional)", {}, rho * px, cond_var},
      {"X (marginal)", {}, 0.0, 1.0},
      {"Y (marginal)", {}, 0.0, 1.0},
  };
  std::vector<std::pair<double, double>> joint(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double z1 = rng.Normal(kFigureStream, 0, k);
    const double z2 = rng.Normal(kFigureStream, 1, k);
    const double jx = z1;
    const double jy = rho * z1 + cond_sd * z2;
    joint[k] = {jx, jy};
    clouds[0].draws.push_back(rho * py + cond_sd * rng.Normal(kFigureStream, 2, k));
    clouds[1].draws.push_back(rho * px + cond_sd * rng.Normal(kFigureStream, 3, k));
    clouds[2].draws.push_back(jx);
    clouds[3].draws.push_back(jy);
  }

  const double dn = static_cast<double>(n);
  for (const Cloud& c : clouds) {
    double mean = 0.0;
    for (double v : c.draws) mean += v;
    mean /= dn;
    double var = 0.0;
    for (double v : c.draws) var += (v - mean) * (v - mean);
    var /= dn - 1;
    report.Check(c.name + ": mean within 4 standard errors", c.mean, mean,
                 4 * std::sqrt(c.variance / dn));
    report.Check(c.name + ": variance within 4 standard errors", c.variance,
                 var, 4 * c.variance * std::sqrt(2 / (dn - 1)));
  }

  std::ostringstream csv;
  csv << "panel,source,x,y\n";
  for (std::uint64_t k = 0; k < n; ++k) {
    csv << "fix_y,conditional," << FormatDouble(clouds[0].draws[k]) << ','
        << FormatDouble(py) << '\n';
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    csv << "fix_y,marginal," << FormatDouble(clouds[2].draws[k]) << ','
        << FormatDouble(py) << '\n';
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    csv << "fix_x,conditional," << FormatDouble(px) << ','
        << FormatDouble(clouds[1].draws[k]) << '\n';
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    csv << "fix_x,marginal," << FormatDouble(px) << ','
        << FormatDouble(clouds[3].draws[k]) << '\n';
  }
  for (const auto& [jx, jy] : joint) {
    csv << "background,joint," << FormatDouble(jx) << ',' << FormatDouble(jy)
        << '\n';
  }
  report.artifacts.push_back({"ood-figure.csv", csv.str()});
  report.findings.push_back(
      "marginal draws place hybrids such as (x, 2) with x near 0 where the "
      "joint density is low; conditional draws concentrate near x = " +
      Fraction(rho * py));
  return report;
}

ScenarioReport RunEngineeredFeatureScenario(std::uint64_t n, std::uint64_t seed) {
  ScenarioReport report;
  report.id = "engineered-feature";
  report.parameters["n"] = static_cast<double>(n);
  report.parameters["seed"] = static_cast<double>(seed);
  if (n < 1) throw std::invalid_argument("engineered-feature: n < 1");

  const CounterRng rng(seed);
  Rows rows(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    const double x1 = rng.Normal(kEngineeredStream, 0, k);
    const double x2 = rng.Normal(kEngineeredStream, 1, k);
    rows[k] = {x1, x2, x1 * x2};
  }
  const TabularDataset data = Named({"x1", "x2", "x3"}, std::move(rows));
  // A fresh point that satisfies the constraint but is not a dataset row.
  const double x1 = rng.Normal(kEngineeredStream, 2, 0);
  const double x2 = rng.Normal(kEngineeredStream, 3, 0);
  const std::vector<double> x = {x1, x2, x1 * x2};

  const OodCriterion product = OodCriterion::Constraint(
      [](std::span<const double> v) { return std::abs(v[2] - v[0] * v[1]) <= 1e-9; });
  const ValueFunctionSpec spec;  // full-pass marginal-joint
  auto fraction = [&](const Coalition& s) {
    return OodFraction(data, GenerateHybrids(data, x, s, spec), product);
  };
  report.Check("S={x1,x2}: fraction of hybrids violating x3 = x1*x2", 1.0,
               fraction(Coalition::Of(3, {0, 1})), 0.0);
  report.Check("S={x3}: fraction of hybrids violating x3 = x1*x2", 1.0,
               fraction(Coalition::Of(3, {2})), 0.0);
  report.Check("S=D: fraction violating", 0.0, fraction(Coalition::Full(3)), 0.0);
  report.Check("S={}: fraction violating (hybrids are dataset rows)", 0.0,
               fraction(Coalition::Empty(3)), 0.0);

  std::vector<HybridSample> as_hybrids;
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    const auto row = data.row(r);
    as_hybrids.push_back({{row.begin(), row.end()}, Coalition::Full(3), {}});
  }
  report.Check("dataset rows: fraction violating", 0.0,
               OodFraction(data, as_hybrids, product), 0.0);
  return report;
}

ScenarioReport RunAdversarialScenario(std::uint64_t seed) {
  ScenarioReport report;
  report.id = "adversarial";
  report.parameters["seed"] = static_cast<double>(seed);

  constexpr std::uint64_t kRows = 200;
  const CounterRng rng(seed);
  Rows rows(kRows);
  for (std::uint64_t k = 0; k < kRows; ++k) {
    rows[k] = {rng.Uniform(kAdversarialStream, 0, k) < 0.5 ? 1.0 : 0.0,
               rng.Normal(kAdversarialStream, 1, k),
               rng.Normal(kAdversarialStream, 2, k)};
  }
  // Make sure some row has P = 1 to explain.
  rows[0][0] = 1.0;
  const TabularDataset data = Named({"protected", "cover1", "cover2"}, rows);
  const double mean_p = data.ColumnMeans()[0];
  report.parameters["rows"] = static_cast<double>(kRows);
  report.parameters["mean_protected"] = mean_p;

  auto biased = std::make_shared<LinearModel>(0.0, std::vector<double>{1, 0, 0});
  auto innocuous = std::make_shared<LinearModel>(0.5, std::vector<double>{0, 0, 0});
  const auto scaffold = Scaffold(biased, innocuous, data);
  const std::vector<double> x = rows[0];

  const Attribution raw =
      ExactShapleySubsets(BuildInterventionalGame(biased, data, x, {}));
  const Attribution masked =
      ExactShapleySubsets(BuildInterventionalGame(scaffold, data, x, {}));

  report.Check("biased model: phi(protected) = 1 - mean(protected)", 1 - mean_p,
               raw.values[0], 1e-9);
  report.Check("scaffold: |phi(protected)| <= 0.02", 0.0, masked.values[0], 0.02);
  double disagreement = 0.0;
  for (std::size_t r = 0; r < data.n_rows(); ++r) {
    disagreement = std::max(
        disagreement,
        std::abs(scaffold->Score(data.row(r)) - biased->Score(data.row(r))));
  }
  report.Check("scaffold agrees with biased model on every row", 0.0,
               disagreement, 0.0);

  // Which hybrids stay on the dataset: S = {} (rows themselves), and any
  // hybrid that keeps both covers or only `protected` whenever the donor row
  // has protected = 1 (the hybrid then is x or the donor row). Working the
  // eight coalition values through gives phi(protected) = (1 - mean) / 3.
  report.Check("scaffold: phi(protected) matches the on-dataset hybrid count",
               (1 - mean_p) / 3, masked.values[0], 1e-9);
  report.findings.push_back(
      "with exact-row membership, hybrids that keep only `protected` or only "
      "the covers coincide with dataset rows whenever the donor has "
      "protected = 1, so the scaffold leaks phi(protected) = (1 - mean) / 3 = " +
      Fraction(masked.values[0]) + " rather than 0");
  return report;
}

const std::vector<std::string>& ScenarioNames() {
  static const std::vector<std::string> kNames = {
      "redundancy", "linear",           "multiplicative",     "recourse",
      "beetle",     "ood-figure",       "engineered-feature", "adversarial"};
  return kNames;
}

ScenarioReport RunScenario(std::string_view name, std::uint64_t seed) {
  if (name == "redundancy") return RunRedundancyScenario();
  if (name == "linear") return RunLinearScenario(seed);
  if (name == "multiplicative") return RunMultiplicativeScenario();
  if (name == "recourse") return RunRecourseScenario(100000, seed);
  if (name == "beetle") return RunBeetleScenario();
  if (name == "ood-figure") return RunOodFigureScenario(0.8, 2000, seed);
  if (name == "engineered-feature") return RunEngineeredFeatureScenario(500, seed);
  if (name == "adversarial") return RunAdversarialScenario(seed);
  throw std::invalid_argument("unknown scenario '" + std::string(name) + "'");
}

std::string ReportToJson(const ScenarioReport& report) {
  nlohmann::ordered_json j;
  j["id"] = report.id;
  j["parameters"] = nlohmann::ordered_json::object();
  for (const auto& [key, value] : report.parameters) j["parameters"][key] = value;
  j["claims"] = nlohmann::ordered_json::array();
  for (const Claim& c : report.claims) {
    j["claims"].push_back({{"description", c.description},
                           {"relation", RelationName(c.relation)},
                           {"expected", c.expected},
                           {"observed", c.observed},
                           {"tolerance", c.tolerance},
                           {"pass", c.pass}});
  }
  j["artifacts"] = nlohmann::ordered_json::array();
  for (const Artifact& a : report.artifacts) j["artifacts"].push_back(a.path);
  j["findings"] = report.findings;
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

void WriteFileAtomically(const std::string& path, std::string_view content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed for '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("cannot rename into '" + path + "'");
  }
}

std::vector<std::string> WriteReport(const ScenarioReport& report,
                                     const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir + "'");
  std::vector<std::string> written;
  for (const Artifact& a : report.artifacts) {
    const std::string path = (std::filesystem::path(dir) / a.path).string();
    WriteFileAtomically(path, a.content);
    written.push_back(path);
  }
  const std::string path =
      (std::filesystem::path(dir) / (report.id + ".json")).string();
  WriteFileAtomically(path, ReportToJson(report));
  written.push_back(path);
  return written;
}

}  // namespace shaplab
