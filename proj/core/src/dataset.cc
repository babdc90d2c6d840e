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

#include "shaplab/dataset.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "shaplab/errors.h"
#include "text_util.h"

namespace shaplab {

using internal::FormatDouble;
using internal::ParseDouble;
using internal::Split;
using internal::Trim;

struct TabularDataset::Impl {
  std::vector<std::string> names;
  std::vector<DomainKind> kinds;
  std::size_t n_rows = 0;
  int n_features = 0;
  std::vector<double> values;  // row-major
  std::vector<std::size_t> sorted;  // row indices in lexicographic order

  std::span<const double> Row(std::size_t r) const {
    return {values.data() + r * n_features, static_cast<std::size_t>(n_features)};
  }
};

std::string_view DomainKindName(DomainKind kind) {
  return kind == DomainKind::kDiscrete ? "discrete" : "continuous";
}

TabularDataset::TabularDataset(std::vector<std::string> feature_names,
                               std::vector<std::vector<double>> rows,
                               std::vector<DomainKind> kinds) {
  auto impl = std::make_shared<Impl>();
  const int d = static_cast<int>(feature_names.size());
  if (d == 0) throw std::invalid_argument("dataset: no features");
  if (d > kMaxPlayers) {
    throw std::invalid_argument("dataset: at most 64 features are supported");
  }
  if (rows.empty()) throw std::invalid_argument("dataset: no rows");
  std::set<std::string> seen;
  for (const auto& name : feature_names) {
    if (name.empty()) throw std::invalid_argument("dataset: empty feature name");
    if (!seen.insert(name).second) {
      throw std::invalid_argument("dataset: duplicate feature name '" + name +
                                  "'");
    }
  }
  if (!kinds.empty() && static_cast<int>(kinds.size()) != d) {
    throw std::invalid_argument("dataset: kinds has wrong length");
  }

  impl->names = std::move(feature_names);
  impl->n_features = d;
  impl->n_rows = rows.size();
  impl->values.reserve(rows.size() * d);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != d) {
      throw std::invalid_argument("dataset: row " + std::to_string(r) +
                                  " has " + std::to_string(rows[r].size()) +
                                  " values, expected " + std::to_string(d));
    }
    for (double v : rows[r]) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("dataset: non-finite value in row " +
                                    std::to_string(r));
      }
      impl->values.push_back(v);
    }
  }

  if (kinds.empty()) {
    kinds.resize(d);
    for (int j = 0; j < d; ++j) {
      bool integral = true;
      for (std::size_t r = 0; r < impl->n_rows && integral; ++r) {
        const double v = impl->values[r * d + j];
        integral = v == std::trunc(v);
      }
      kinds[j] = integral ? DomainKind::kDiscrete : DomainKind::kContinuous;
    }
  }
  impl->kinds = std::move(kinds);

  impl->sorted.resize(impl->n_rows);
  std::iota(impl->sorted.begin(), impl->sorted.end(), 0);
  const Impl& view = *impl;
  std::stable_sort(impl->sorted.begin(), impl->sorted.end(),
                   [&view](std::size_t a, std::size_t b) {
                     const auto ra = view.Row(a), rb = view.Row(b);
                     return std::lexicographical_compare(ra.begin(), ra.end(),
                                                         rb.begin(), rb.end());
                   });
  impl_ = std::move(impl);
}

TabularDataset TabularDataset::ParseCsv(
    std::string_view csv_text, std::optional<std::string_view> schema_text) {
  std::vector<std::string_view> lines = Split(csv_text, '\n');
  std::size_t line_no = 0;
  auto next_nonblank = [&]() -> std::optional<std::string_view> {
    while (line_no < lines.size()) {
      std::string_view line = Trim(lines[line_no++]);
      if (!line.empty()) return line;
    }
    return std::nullopt;
  };

  const auto header = next_nonblank();
  if (!header) throw DataError("csv: missing header line");
  std::vector<std::string> names;
  for (std::string_view cell : Split(*header, ',')) {
    names.emplace_back(Trim(cell));
  }

  std::vector<std::vector<double>> rows;
  while (auto line = next_nonblank()) {
    std::vector<double> row;
    for (std::string_view cell : Split(*line, ',')) {
      const auto value = ParseDouble(cell);
      if (!value || !std::isfinite(*value)) {
        throw DataError("csv: line " + std::to_string(line_no) +
                        ": cannot parse '" + std::string(Trim(cell)) +
                        "' as a finite real");
      }
      row.push_back(*value);
    }
    if (row.size() != names.size()) {
      throw DataError("csv: line " + std::to_string(line_no) + " has " +
                      std::to_string(row.size()) + " fields, header has " +
                      std::to_string(names.size()));
    }
    rows.push_back(std::move(row));
  }

  std::vector<DomainKind> kinds;
  if (schema_text) {
    std::map<std::string, DomainKind, std::less<>> declared;
    std::size_t schema_line = 0;
    for (std::string_view raw : Split(*schema_text, '\n')) {
      ++schema_line;
      std::string_view line = raw.substr(0, raw.find('#'));
      line = Trim(line);
      if (line.empty()) continue;
      const std::size_t colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw DataError("schema: line " + std::to_string(schema_line) +
                        ": expected 'name: discrete|continuous'");
      }
      const std::string name(Trim(line.substr(0, colon)));
      const std::string_view kind = Trim(line.substr(colon + 1));
      if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw DataError("schema: line " + std::to_string(schema_line) +
                        ": unknown feature '" + name + "'");
      }
      if (kind == "discrete") {
        declared[name] = DomainKind::kDiscrete;
      } else if (kind == "continuous") {
        declared[name] = DomainKind::kContinuous;
      } else {
        throw DataError("schema: line " + std::to_string(schema_line) +
                        ": unknown domain kind '" + std::string(kind) + "'");
      }
    }
    kinds.resize(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (auto it = declared.find(names[j]); it != declared.end()) {
        kinds[j] = it->second;
        continue;
      }
      bool integral = true;
      for (const auto& row : rows) integral = integral && row[j] == std::trunc(row[j]);
      kinds[j] = integral ? DomainKind::kDiscrete : DomainKind::kContinuous;
    }
  }

  try {
    return TabularDataset(std::move(names), std::move(rows), std::move(kinds));
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("csv: ") + e.what());
  }
}

namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TabularDataset TabularDataset::LoadCsv(const std::string& path,
                                       const std::string& schema_path) {
  const std::string csv = ReadFile(path);
  std::string resolved = schema_path;
  if (resolved.empty() && std::filesystem::exists(path + ".schema")) {
    resolved = path + ".schema";
  }
  if (resolved.empty()) return ParseCsv(csv);
  const std::string schema = ReadFile(resolved);
  return ParseCsv(csv, schema);
}

std::size_t TabularDataset::n_rows() const { return impl_->n_rows; }
int TabularDataset::n_features() const { return impl_->n_features; }
const std::vector<std::string>& TabularDataset::feature_names() const {
  return impl_->names;
}
DomainKind TabularDataset::kind(int feature) const {
  return impl_->kinds.at(feature);
}
bool TabularDataset::all_discrete() const {
  return std::all_of(impl_->kinds.begin(), impl_->kinds.end(),
                     [](DomainKind k) { return k == DomainKind::kDiscrete; });
}

std::span<const double> TabularDataset::row(std::size_t index) const {
  if (index >= impl_->n_rows) {
    throw std::out_of_range("dataset: row " + std::to_string(index) +
                            " out of range");
  }
  return impl_->Row(index);
}

double TabularDataset::at(std::size_t r, int feature) const {
  return row(r)[feature];
}

int TabularDataset::FeatureIndex(std::string_view name) const {
  for (int j = 0; j < impl_->n_features; ++j) {
    if (impl_->names[j] == name) return j;
  }
  return -1;
}

bool TabularDataset::ContainsRow(std::span<const double> values) const {
  if (static_cast<int>(values.size()) != impl_->n_features) return false;
  const Impl& impl = *impl_;
  auto less_row = [&impl](std::size_t r, std::span<const double> v) {
    const auto row = impl.Row(r);
    return std::lexicographical_compare(row.begin(), row.end(), v.begin(),
                                        v.end());
  };
  auto it = std::lower_bound(impl.sorted.begin(), impl.sorted.end(), values,
                             less_row);
  if (it == impl.sorted.end()) return false;
  const auto row = impl.Row(*it);
  return std::equal(row.begin(), row.end(), values.begin());
}

std::vector<double> TabularDataset::ColumnMeans() const {
  const int d = impl_->n_features;
  std::vector<double> means(d, 0.0);
  for (std::size_t r = 0; r < impl_->n_rows; ++r) {
    for (int j = 0; j < d; ++j) means[j] += impl_->values[r * d + j];
  }
  for (double& m : means) m /= static_cast<double>(impl_->n_rows);
  return means;
}

std::string TabularDataset::Describe(const Coalition& s) const {
  std::string out = "{";
  bool first = true;
  for (int m : s.members()) {
    if (!first) out += ",";
    out += m < impl_->n_features ? impl_->names[m] : std::to_string(m);
    first = false;
  }
  return out + "}";
}

std::string TabularDataset::ToCsv() const {
  std::string out;
  for (int j = 0; j < impl_->n_features; ++j) {
    if (j) out += ",";
    out += impl_->names[j];
  }
  out += "\n";
  for (std::size_t r = 0; r < impl_->n_rows; ++r) {
    const auto row = impl_->Row(r);
    for (int j = 0; j < impl_->n_features; ++j) {
      if (j) out += ",";
      out += FormatDouble(row[j]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace shaplab
