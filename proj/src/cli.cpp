#include "afcm/cad.hpp"
#include "afcm/eval.hpp"
#include "afcm/service.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

namespace afcm {

using nlohmann::json;

namespace {

constexpr int kExitUsage = 2;

struct InferFlags
{
  std::string case_id = "Case9";
  std::string input;
  std::vector<std::string> sets;
  bool trajectory = false;
  std::string format = "table";
  std::optional<double> theta;
  std::optional<double> epsilon;
  std::optional<int> max_iterations;
  std::size_t top = 8;
};

struct EvaluateFlags
{
  std::string data;
  std::string cases;
  std::string format = "table";
  bool detail = false;
  bool records = false;
};

struct ServeFlags
{
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir = "ui/dist";
};

std::string model_path_of(std::string const &flag)
{
  if (!flag.empty()) { return flag; }
  if (char const *env = std::getenv("AFCM_MODEL"); env && *env) { return env; }
  return {};
}

FcmModel resolve_model(std::string const &flag)
{
  auto const path = model_path_of(flag);
  return path.empty() ? cad::builtin_model() : load_model_file(path);
}

std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw ParseError("cannot open model '" + path + "'"); }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_list(std::string const &s)
{
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) { out.push_back(item); }
  }
  return out;
}

std::string fixed(double v, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string signed_fixed(double v, int decimals)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.*f", decimals, v);
  return buf;
}

InferenceRequest build_request(InferFlags const &f)
{
  InferenceRequest req;
  if (!f.input.empty()) {
    std::ifstream in(f.input, std::ios::binary);
    if (!in) { throw RequestError("cannot open input '" + f.input + "'", {{"--input", "cannot open " + f.input}}); }
    json doc;
    try {
      doc = json::parse(in);
    } catch (json::exception const &e) {
      throw RequestError("input '" + f.input + "' is not valid JSON", {{"--input", e.what()}});
    }
    if (doc.is_object() && doc.contains("attributes")) {
      req = parse_inference_request(doc);
    } else {
      req = parse_inference_request(json{{"attributes", doc}});
    }
  }
  for (auto const &s : f.sets) {
    auto const eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw RequestError("--set expects ATTR=value, got '" + s + "'", {{"--set", s}});
    }
    req.attributes[s.substr(0, eq)] = s.substr(eq + 1);
  }
  if (f.input.empty() && f.sets.empty()) {
    throw RequestError("infer needs --input or --set", {{"--input", "either --input or --set is required"}});
  }
  req.case_id = f.case_id;
  if (f.theta) { req.theta = f.theta; }
  if (f.epsilon) { req.epsilon = f.epsilon; }
  if (f.max_iterations) { req.max_iterations = f.max_iterations; }
  req.trajectory = f.trajectory;
  req.top = f.top;
  return req;
}

std::string render_inference(json const &r)
{
  std::string out;
  auto const &d = r.at("decision");
  out += "case       " + r.at("case").get<std::string>() + "\n";
  out += "decision   " + d.at("class").get<std::string>() + "\n";
  out += "score      " + fixed(d.at("score").get<double>(), 6) + "\n";
  out += "label      " + d.at("label").get<std::string>() + "\n";
  out += "converged  " + std::string(r.at("converged").get<bool>() ? "yes" : "no") + " after " +
         std::to_string(r.at("iterations").get<int>()) + " iterations\n";
  std::string rules;
  for (auto const &id : r.at("fired_rules")) { rules += (rules.empty() ? "" : ", ") + id.get<std::string>(); }
  out += "rules      " + (rules.empty() ? std::string("none") : rules) + "\n";
  out += "contributions (total " + signed_fixed(r.at("contribution_total").get<double>(), 6) + ")\n";
  for (auto const &c : r.at("contributions")) {
    char line[160];
    std::snprintf(line, sizeof line, "  %-5s %-40s %s\n", c.at("concept").get<std::string>().c_str(),
                  c.at("label").get<std::string>().c_str(), signed_fixed(c.at("value").get<double>(), 6).c_str());
    out += line;
  }
  if (r.contains("trajectory")) {
    auto const &t = r.at("trajectory");
    out += "\ntrajectory\n  k   ";
    char cell[32];
    for (auto const &id : t.at("concepts")) {
      std::snprintf(cell, sizeof cell, "%9s", id.get<std::string>().c_str());
      out += cell;
    }
    out += "\n";
    for (auto const &s : t.at("steps")) {
      std::snprintf(cell, sizeof cell, "  %-4d", s.at("k").get<int>());
      out += cell;
      for (auto const &v : s.at("values")) {
        std::snprintf(cell, sizeof cell, "%9.5f", v.get<double>());
        out += cell;
      }
      out += "\n";
    }
  }
  return out;
}

std::vector<CaseConfig> select_cases(std::string const &list)
{
  if (list.empty()) { return cad::all_cases(); }
  std::vector<CaseConfig> out;
  for (auto const &id : split_list(list)) {
    try {
      out.push_back(cad::case_config(id));
    } catch (ValidationError const &e) {
      throw RequestError(e.what(), {{"--cases", "unknown case '" + id + "'"}});
    }
  }
  if (out.empty()) { throw RequestError("--cases is empty", {{"--cases", "no case ids"}}); }
  return out;
}

int cmd_validate(std::string const &flag, std::ostream &out, std::ostream &err)
{
  auto const path = model_path_of(flag);
  auto const model = path.empty() ? cad::builtin_model() : parse_model_document(read_file(path));
  auto const report = validate_model(model);
  if (!report.ok()) {
    for (auto const &v : report.violations) { err << "invalid: " << v.code << ": " << v.message << "\n"; }
    return kExitUsage;
  }
  out << "ok: " << model.meta.name << " " << model.meta.version << ", " << model.concepts.size() << " concepts, "
      << model.edges.size() << " edges, " << model.rules.size() << " rules\n";
  return 0;
}

int cmd_infer(FcmModel const &model, InferFlags const &f, std::ostream &out)
{
  Service const service(model);
  auto const response = service.infer(build_request(f));
  if (f.format == "json") {
    out << response.dump(2) << "\n";
  } else {
    out << render_inference(response);
  }
  return 0;
}

int cmd_evaluate(FcmModel const &model, EvaluateFlags const &f, std::ostream &out)
{
  auto const cases = select_cases(f.cases);
  auto const ds = load_dataset_file(f.data, model);
  bool const json_out = f.format == "json";
  if (!f.detail) {
    auto const table = compare_cases(cases, ds, model);
    out << (json_out ? render_json(table) : render_text(table));
    return 0;
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    auto const report = evaluate_case(cases[i], ds, model);
    if (i > 0 && !json_out) { out << "\n"; }
    out << (json_out ? render_json(report, f.records) : render_text(report, f.records));
  }
  return 0;
}

int cmd_compare(FcmModel const &model, InferFlags const &f, std::string const &case_list, std::ostream &out)
{
  Service const service(model);
  auto req = build_request(f);
  json rows = json::array();
  for (auto const &cfg : select_cases(case_list)) {
    req.case_id = cfg.id;
    auto r = service.infer(req);
    rows.push_back({{"case", cfg.id},
                    {"class", r.at("decision").at("class")},
                    {"score", r.at("decision").at("score")},
                    {"label", r.at("decision").at("label")},
                    {"iterations", r.at("iterations")},
                    {"converged", r.at("converged")},
                    {"fired_rules", r.at("fired_rules")}});
  }
  if (f.format == "json") {
    out << json{{"cases", rows}}.dump(2) << "\n";
    return 0;
  }
  char line[200];
  std::snprintf(line, sizeof line, "%-8s %-9s %9s %6s  %s\n", "Case", "Decision", "Score", "Iter", "Rules");
  out << line;
  for (auto const &r : rows) {
    std::string rules;
    for (auto const &id : r.at("fired_rules")) { rules += (rules.empty() ? "" : ",") + id.get<std::string>(); }
    std::snprintf(line, sizeof line, "%-8s %-9s %9.6f %6d  %s\n", r.at("case").get<std::string>().c_str(),
                  r.at("class").get<std::string>().c_str(), r.at("score").get<double>(), r.at("iterations").get<int>(),
                  rules.empty() ? "-" : rules.c_str());
    out << line;
  }
  return 0;
}

int cmd_serve(FcmModel const &model, ServeFlags const &f, std::ostream &out, std::ostream &err)
{
  Service const service(model);
  httplib::Server server;
  mount_routes(server, service, f.static_dir);
  out << "listening on http://" << f.host << ":" << f.port << "\n" << std::flush;
  if (!server.listen(f.host, f.port)) {
    err << "error: cannot listen on " << f.host << ":" << f.port << "\n";
    return 1;
  }
  return 0;
}

void add_infer_options(CLI::App &cmd, InferFlags &f, bool with_case)
{
  if (with_case) { cmd.add_option("--case", f.case_id, "Case configuration id")->capture_default_str(); }
  cmd.add_option("--input", f.input, "Patient record as JSON {\"A1\": \"yes\", ...}");
  cmd.add_option("--set", f.sets, "Attribute value, ATTR=value (repeatable)");
  cmd.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"table", "json"}))->capture_default_str();
  cmd.add_option("--theta", f.theta, "Decision threshold override");
  cmd.add_option("--epsilon", f.epsilon, "Convergence tolerance override");
  cmd.add_option("--max-iterations", f.max_iterations, "Iteration cap override");
}

} // namespace

int run_cli(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Fuzzy cognitive map engine for coronary artery disease assessment", "afcm"};
  app.require_subcommand(1);

  std::string model_path;
  app.add_option("--model", model_path, "Model document (falls back to $AFCM_MODEL, then the built-in CAD model)");

  auto *validate = app.add_subcommand("validate", "Check a model document against its invariants");
  validate->fallthrough();

  InferFlags infer_flags;
  auto *infer = app.add_subcommand("infer", "Classify one patient record");
  infer->fallthrough();
  add_infer_options(*infer, infer_flags, true);
  infer->add_flag("--trajectory", infer_flags.trajectory, "Append the per-iteration concept table");
  infer->add_option("--top", infer_flags.top, "Number of contributions shown")->capture_default_str();

  EvaluateFlags eval_flags;
  auto *evaluate = app.add_subcommand("evaluate", "Score case configurations on a labelled dataset");
  evaluate->fallthrough();
  evaluate->add_option("--data", eval_flags.data, "Dataset CSV")->required();
  evaluate->add_option("--cases", eval_flags.cases, "Comma-separated case ids (default: all)");
  evaluate->add_option("--format", eval_flags.format, "Output format")
    ->check(CLI::IsMember({"table", "json"}))
    ->capture_default_str();
  evaluate->add_flag("--detail", eval_flags.detail, "Per-case confusion matrices instead of the summary table");
  evaluate->add_flag("--records", eval_flags.records, "With --detail, list every record's decision");

  InferFlags compare_flags;
  std::string compare_cases_list;
  auto *compare = app.add_subcommand("compare", "Run one patient record through several case configurations");
  compare->fallthrough();
  add_infer_options(*compare, compare_flags, false);
  compare->add_option("--cases", compare_cases_list, "Comma-separated case ids (default: all)");

  ServeFlags serve_flags;
  auto *serve = app.add_subcommand("serve", "Run the HTTP API");
  serve->fallthrough();
  serve->add_option("--host", serve_flags.host, "Bind address")->capture_default_str();
  serve->add_option("--port", serve_flags.port, "TCP port")->check(CLI::Range(1, 65535))->capture_default_str();
  serve->add_option("--static", serve_flags.static_dir, "UI asset directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const &e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (validate->parsed()) { return cmd_validate(model_path, out, err); }
    auto const model = resolve_model(model_path);
    if (infer->parsed()) { return cmd_infer(model, infer_flags, out); }
    if (evaluate->parsed()) { return cmd_evaluate(model, eval_flags, out); }
    if (compare->parsed()) { return cmd_compare(model, compare_flags, compare_cases_list, out); }
    if (serve->parsed()) { return cmd_serve(model, serve_flags, out, err); }
  } catch (RequestError const &e) {
    err << "error: " << e.what() << "\n";
    for (auto const &[field, msg] : e.fields()) { err << "  " << field << ": " << msg << "\n"; }
    return kExitUsage;
  } catch (Error const &e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

} // namespace afcm
