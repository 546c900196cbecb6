#pragma once

#include "afcm/fuzzy_io.hpp"
#include "afcm/inference.hpp"
#include "afcm/model.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace afcm {

struct LabeledRecord
{
  Record attributes;
  DecisionClass label = DecisionClass::Healthy;
  int line = 0; ///< 1-based line in the source file (header is line 1)
  bool operator==(LabeledRecord const &) const = default;
};

struct Dataset
{
  std::vector<std::string> attributes;
  std::vector<LabeledRecord> records;
  bool operator==(Dataset const &) const = default;
};

/// Reads a comma-separated dataset whose header names every model input plus `label`.
/// Errors name the line and attribute, e.g. "row 3, A8: ...".
Dataset load_dataset(std::istream &in, FcmModel const &model);
Dataset load_dataset_file(std::string const &path, FcmModel const &model);
std::string to_csv(Dataset const &ds);

/// Positive class is Diseased.
struct ConfusionMatrix
{
  std::int64_t tp = 0;
  std::int64_t fp = 0;
  std::int64_t fn = 0;
  std::int64_t tn = 0;

  [[nodiscard]] std::int64_t total() const { return tp + fp + fn + tn; }
  bool operator==(ConfusionMatrix const &) const = default;
};

ConfusionMatrix confusion(std::vector<DecisionClass> const &predictions, std::vector<DecisionClass> const &truths);

/// Ratios in [0,1]; nullopt where the denominator is zero.
struct MetricsReport
{
  ConfusionMatrix counts;
  std::optional<double> accuracy;
  std::optional<double> sensitivity;
  std::optional<double> specificity;
  std::optional<double> ppv;
  std::optional<double> npv;
};

MetricsReport metrics(ConfusionMatrix const &cm);

struct RecordDecision
{
  int line = 0;
  DecisionClass truth = DecisionClass::Healthy;
  Decision decision;
  int iterations = 0;
  bool converged = false;
};

struct CaseReport
{
  CaseConfig config;
  MetricsReport metrics;
  std::vector<RecordDecision> decisions;
  int non_converged = 0;
};

CaseReport evaluate_case(CaseConfig const &cfg, Dataset const &ds, FcmModel const &model);

struct ComparisonRow
{
  std::string case_id;
  MetricsReport metrics;
  int non_converged = 0;
};

struct ComparisonTable
{
  std::vector<ComparisonRow> rows;
};

ComparisonTable compare_cases(std::vector<CaseConfig> const &cfgs, Dataset const &ds, FcmModel const &model);

/// Percentage with two decimals, or "n/a".
std::string format_percent(std::optional<double> ratio);

std::string render_text(ComparisonTable const &table);
std::string render_json(ComparisonTable const &table);
std::string render_text(CaseReport const &report, bool with_records);
std::string render_json(CaseReport const &report, bool with_records);
std::string describe(CaseConfig const &cfg);

} // namespace afcm
