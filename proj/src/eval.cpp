#include "afcm/eval.hpp"

#include "afcm/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace afcm {

using nlohmann::json;

namespace {

std::vector<std::string> split_csv_line(std::string line)
{
  if (!line.empty() && line.back() == '\r') { line.pop_back(); }
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) { cells.push_back(cell); }
  if (!line.empty() && line.back() == ',') { cells.emplace_back(); }
  return cells;
}

std::string trim(std::string const &s)
{
  auto const b = s.find_first_not_of(" \t");
  if (b == std::string::npos) { return {}; }
  auto const e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

DecisionClass parse_label(std::string const &raw, int line)
{
  std::string s;
  for (char c : raw) { s += static_cast<char>(std::tolower(static_cast<unsigned char>(c))); }
  if (s == "diseased" || s == "1") { return DecisionClass::Diseased; }
  if (s == "healthy" || s == "0") { return DecisionClass::Healthy; }
  throw ValidationError("row " + std::to_string(line) + ", label: expected Healthy or Diseased, got '" + raw + "'");
}

std::optional<double> ratio(std::int64_t num, std::int64_t den)
{
  if (den == 0) { return std::nullopt; }
  return static_cast<double>(num) / static_cast<double>(den);
}

json percent_json(std::optional<double> r)
{
  if (!r) { return nullptr; }
  return std::round(*r * 10000.0) / 100.0;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

std::string fixed(double v, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad_left(std::string s, std::size_t width)
{
  if (s.size() < width) { s.insert(0, width - s.size(), ' '); }
  return s;
}

std::string pad_right(std::string s, std::size_t width)
{
  if (s.size() < width) { s.append(width - s.size(), ' '); }
  return s;
}

json metrics_json(MetricsReport const &m)
{
  return {{"tp", m.counts.tp},
          {"fp", m.counts.fp},
          {"fn", m.counts.fn},
          {"tn", m.counts.tn},
          {"accuracy", percent_json(m.accuracy)},
          {"sensitivity", percent_json(m.sensitivity)},
          {"specificity", percent_json(m.specificity)},
          {"ppv", percent_json(m.ppv)},
          {"npv", percent_json(m.npv)}};
}

std::string join(std::vector<std::string> const &v, char const *sep)
{
  std::string out;
  for (auto const &s : v) {
    if (!out.empty()) { out += sep; }
    out += s;
  }
  return out;
}

} // namespace

Dataset load_dataset(std::istream &in, FcmModel const &model)
{
  auto const table = EncodingTable::of(model);
  std::string line;
  if (!std::getline(in, line) || trim(line).empty()) { throw ValidationError("no records: dataset is empty"); }

  auto header = split_csv_line(line);
  for (auto &h : header) { h = trim(h); }
  std::size_t labelCol = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == "label") {
      labelCol = i;
      continue;
    }
    if (!table.levels.count(header[i])) { throw ValidationError("bad header: unknown attribute '" + header[i] + "'"); }
  }
  if (labelCol == header.size()) { throw ValidationError("bad header: missing 'label' column"); }
  for (auto const &attr : table.attributes) {
    if (std::find(header.begin(), header.end(), attr) == header.end()) {
      throw ValidationError("bad header: missing attribute '" + attr + "'");
    }
  }

  Dataset ds;
  ds.attributes = table.attributes;
  int lineNo = 1;
  while (std::getline(in, line)) {
    ++lineNo;
    if (trim(line).empty()) { continue; }
    auto cells = split_csv_line(line);
    if (cells.size() != header.size()) {
      throw ValidationError("row " + std::to_string(lineNo) + ": expected " + std::to_string(header.size()) +
                            " fields, got " + std::to_string(cells.size()));
    }
    LabeledRecord rec;
    rec.line = lineNo;
    for (std::size_t i = 0; i < header.size(); ++i) {
      auto const value = trim(cells[i]);
      if (i == labelCol) {
        if (value.empty()) { throw ValidationError("row " + std::to_string(lineNo) + ", label: missing label"); }
        rec.label = parse_label(value, lineNo);
      } else {
        rec.attributes[header[i]] = value;
      }
    }
    try {
      check_record(rec.attributes, table);
    } catch (AttributeError const &e) {
      throw AttributeError(e.attribute(), "row " + std::to_string(lineNo) + ", " + e.attribute() + ": " + e.what());
    }
    ds.records.push_back(std::move(rec));
  }
  if (ds.records.empty()) { throw ValidationError("no records: dataset has a header but no rows"); }
  return ds;
}

Dataset load_dataset_file(std::string const &path, FcmModel const &model)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw ValidationError("cannot open dataset '" + path + "'"); }
  return load_dataset(in, model);
}

std::string to_csv(Dataset const &ds)
{
  std::string out = join(ds.attributes, ",") + ",label\n";
  for (auto const &r : ds.records) {
    for (auto const &a : ds.attributes) { out += r.attributes.at(a) + ","; }
    out += std::string(to_string(r.label)) + "\n";
  }
  return out;
}

ConfusionMatrix confusion(std::vector<DecisionClass> const &predictions, std::vector<DecisionClass> const &truths)
{
  if (predictions.size() != truths.size()) {
    throw DimensionError("confusion: " + std::to_string(predictions.size()) + " predictions vs " +
                         std::to_string(truths.size()) + " truths");
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    bool const predicted = predictions[i] == DecisionClass::Diseased;
    bool const actual = truths[i] == DecisionClass::Diseased;
    if (predicted && actual) {
      ++cm.tp;
    } else if (predicted) {
      ++cm.fp;
    } else if (actual) {
      ++cm.fn;
    } else {
      ++cm.tn;
    }
  }
  return cm;
}

MetricsReport metrics(ConfusionMatrix const &cm)
{
  return {cm,
          ratio(cm.tp + cm.tn, cm.total()),
          ratio(cm.tp, cm.tp + cm.fn),
          ratio(cm.tn, cm.tn + cm.fp),
          ratio(cm.tp, cm.tp + cm.fp),
          ratio(cm.tn, cm.tn + cm.fn)};
}

CaseReport evaluate_case(CaseConfig const &cfg, Dataset const &ds, FcmModel const &model)
{
  CaseReport report;
  report.config = cfg;
  std::vector<DecisionClass> predictions;
  std::vector<DecisionClass> truths;
  for (auto const &rec : ds.records) {
    RunRecord rr;
    try {
      rr = run(model, rec.attributes, cfg);
    } catch (AttributeError const &e) {
      throw AttributeError(e.attribute(), "row " + std::to_string(rec.line) + ", " + e.attribute() + ": " + e.what());
    }
    auto decision = classify(rr, cfg);
    predictions.push_back(decision.cls);
    truths.push_back(rec.label);
    if (!rr.converged) { ++report.non_converged; }
    report.decisions.push_back({rec.line, rec.label, std::move(decision), rr.iterations, rr.converged});
  }
  report.metrics = metrics(confusion(predictions, truths));
  return report;
}

ComparisonTable compare_cases(std::vector<CaseConfig> const &cfgs, Dataset const &ds, FcmModel const &model)
{
  if (cfgs.empty()) { throw ValidationError("compare_cases needs at least one case"); }
  ComparisonTable table;
  for (auto const &cfg : cfgs) {
    auto const report = evaluate_case(cfg, ds, model);
    table.rows.push_back({cfg.id, report.metrics, report.non_converged});
  }
  return table;
}

std::string format_percent(std::optional<double> r)
{
  if (!r) { return "n/a"; }
  return fixed(*r * 100.0, 2) + "%";
}

std::string describe(CaseConfig const &cfg)
{
  std::string s = std::string(to_string(cfg.engine));
  s += ", states [" + join(cfg.states, ",") + "]";
  s += ", " + cfg.activation.name();
  s += ", " + std::string(to_string(cfg.output_mode));
  s += cfg.rules_enabled ? ", rules on" : ", rules off";
  return s;
}

std::string render_text(ComparisonTable const &table)
{
  std::string out = pad_right("Case", 8) + pad_left("Accuracy", 10) + pad_left("Sensitivity", 13) +
                    pad_left("Specificity", 13) + pad_left("Non-converged", 15) + "\n";
  for (auto const &row : table.rows) {
    out += pad_right(row.case_id, 8) + pad_left(format_percent(row.metrics.accuracy), 10) +
           pad_left(format_percent(row.metrics.sensitivity), 13) +
           pad_left(format_percent(row.metrics.specificity), 13) + pad_left(std::to_string(row.non_converged), 15) +
           "\n";
  }
  return out;
}

std::string render_json(ComparisonTable const &table)
{
  json rows = json::array();
  for (auto const &row : table.rows) {
    json r = metrics_json(row.metrics);
    r["case"] = row.case_id;
    r["non_converged"] = row.non_converged;
    rows.push_back(std::move(r));
  }
  return json{{"cases", rows}}.dump(2) + "\n";
}

std::string render_text(CaseReport const &report, bool with_records)
{
  auto const &m = report.metrics;
  auto const &c = m.counts;
  std::string out = report.config.id + " (" + describe(report.config) + ")\n";
  out += "records " + std::to_string(c.total()) + ", non-converged " + std::to_string(report.non_converged) + "\n";
  out += pad_right("", 20) + pad_left("Diseased (D+)", 15) + pad_left("Healthy (D-)", 14) + "\n";
  out += pad_right("Predicted Diseased", 20) + pad_left(std::to_string(c.tp), 15) + pad_left(std::to_string(c.fp), 14) + "\n";
  out += pad_right("Predicted Healthy", 20) + pad_left(std::to_string(c.fn), 15) + pad_left(std::to_string(c.tn), 14) + "\n";
  out += pad_right("accuracy", 13) + pad_left(format_percent(m.accuracy), 8) + "\n";
  out += pad_right("sensitivity", 13) + pad_left(format_percent(m.sensitivity), 8) + "\n";
  out += pad_right("specificity", 13) + pad_left(format_percent(m.specificity), 8) + "\n";
  out += pad_right("ppv", 13) + pad_left(format_percent(m.ppv), 8) + "\n";
  out += pad_right("npv", 13) + pad_left(format_percent(m.npv), 8) + "\n";
  if (with_records) {
    out += "\n" + pad_right("line", 6) + pad_right("truth", 10) + pad_right("predicted", 11) + pad_left("score", 10) +
           pad_left("iterations", 12) + "  converged\n";
    for (auto const &d : report.decisions) {
      out += pad_right(std::to_string(d.line), 6) + pad_right(std::string(to_string(d.truth)), 10) +
             pad_right(std::string(to_string(d.decision.cls)), 11) + pad_left(fixed(d.decision.score, 6), 10) +
             pad_left(std::to_string(d.iterations), 12) + (d.converged ? "  yes" : "  no") + "\n";
    }
  }
  return out;
}

std::string render_json(CaseReport const &report, bool with_records)
{
  json j;
  j["case"] = report.config.id;
  j["config"] = describe(report.config);
  j["metrics"] = metrics_json(report.metrics);
  j["non_converged"] = report.non_converged;
  if (with_records) {
    json recs = json::array();
    for (auto const &d : report.decisions) {
      recs.push_back({{"line", d.line},
                      {"truth", to_string(d.truth)},
                      {"predicted", to_string(d.decision.cls)},
                      {"score", round6(d.decision.score)},
                      {"iterations", d.iterations},
                      {"converged", d.converged}});
    }
    j["records"] = std::move(recs);
  }
  return j.dump(2) + "\n";
}

} // namespace afcm
