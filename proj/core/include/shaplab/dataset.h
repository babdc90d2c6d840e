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

#ifndef SHAPLAB_DATASET_H_
#define SHAPLAB_DATASET_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shaplab/coalition.h"

namespace shaplab {

enum class DomainKind { kDiscrete, kContinuous };

std::string_view DomainKindName(DomainKind kind);

// Immutable rows x named features. Copies share storage.
//
// CSV format: the first line holds comma-separated feature names, every
// following non-blank line holds one decimal value per feature. An optional
// schema declares the domain of each feature, one "name: discrete" or
// "name: continuous" per line ('#' starts a comment). Features the schema
// does not mention are discrete iff every value in the column is integral.
class TabularDataset {
 public:
  // Throws std::invalid_argument on empty data, ragged rows, duplicate or
  // empty names, non-finite values, or a kinds vector of the wrong size.
  // Missing kinds are inferred.
  TabularDataset(std::vector<std::string> feature_names,
                 std::vector<std::vector<double>> rows,
                 std::vector<DomainKind> kinds = {});

  // Throws DataError on malformed input, naming the offending line.
  static TabularDataset ParseCsv(std::string_view csv_text,
                                 std::optional<std::string_view> schema_text = {});

  // Reads `path`; if schema_path is empty, "<path>.schema" is used when it
  // exists. Throws DataError if a file cannot be read or parsed.
  static TabularDataset LoadCsv(const std::string& path,
                                const std::string& schema_path = "");

  std::size_t n_rows() const;
  int n_features() const;
  const std::vector<std::string>& feature_names() const;
  DomainKind kind(int feature) const;
  bool all_discrete() const;

  std::span<const double> row(std::size_t index) const;
  double at(std::size_t row, int feature) const;

  // Index of the feature called `name`, or -1.
  int FeatureIndex(std::string_view name) const;

  // Exact, element-wise membership test against the stored rows.
  bool ContainsRow(std::span<const double> values) const;

  std::vector<double> ColumnMeans() const;

  // Coalition rendered with feature names, e.g. "{age,income}".
  std::string Describe(const Coalition& s) const;

  std::string ToCsv() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace shaplab

#endif  // SHAPLAB_DATASET_H_
