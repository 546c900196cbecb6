#include "afcm/service.hpp"

#include "afcm/cad.hpp"
#include "afcm/fuzzy_io.hpp"

#include <filesystem>

#include <httplib.h>

namespace afcm {

using nlohmann::json;

namespace {

Record parse_attributes(json const &j, std::string const &where)
{
  if (!j.is_object()) { throw RequestError(where + " must be an object of attribute -> value", {{where, "expected an object"}}); }
  Record r;
  for (auto const &[k, v] : j.items()) {
    if (!v.is_string()) { throw RequestError("attribute '" + k + "' must be a string", {{k, "expected a string value"}}); }
    r[k] = v.get<std::string>();
  }
  return r;
}

json activation_json(ActivationSpec const &a)
{
  json j{{"kind", a.name()}, {"lo", a.lo()}, {"hi", a.hi()}};
  if (a.kind == ActivationKind::SigmoidN) {
    j["params"] = {{"m", a.params.lower}, {"M", a.params.upper}, {"r", a.params.slope}, {"t0", a.params.center}};
  }
  return j;
}

json trajectory_json(RunRecord const &rr)
{
  auto const &layout = rr.weights.layout;
  json ids = json::array();
  for (Index i = 0; i < layout.size(); ++i) { ids.push_back(layout.id_at(i)); }
  json steps = json::array();
  for (auto const &cv : rr.trajectory) {
    steps.push_back({{"k", cv.k}, {"values", std::vector<double>(cv.values.data(), cv.values.data() + cv.size())}});
  }
  return {{"concepts", std::move(ids)}, {"steps", std::move(steps)}};
}

} // namespace

InferenceRequest parse_inference_request(json const &body)
{
  if (!body.is_object()) { throw RequestError("request body must be a JSON object", {{"body", "expected an object"}}); }
  InferenceRequest req;
  try {
    for (auto const &[key, _] : body.items()) {
      if (key != "attributes" && key != "case_id" && key != "overrides" && key != "trajectory" && key != "top") {
        throw RequestError("unknown request field '" + key + "'", {{key, "unknown field"}});
      }
    }
    if (!body.contains("attributes")) { throw RequestError("missing 'attributes'", {{"attributes", "required"}}); }
    req.attributes = parse_attributes(body.at("attributes"), "attributes");
    if (body.contains("case_id")) { req.case_id = body.at("case_id").get<std::string>(); }
    if (body.contains("trajectory")) { req.trajectory = body.at("trajectory").get<bool>(); }
    if (body.contains("top")) { req.top = body.at("top").get<std::size_t>(); }
    if (body.contains("overrides")) {
      auto const &o = body.at("overrides");
      if (!o.is_object()) { throw RequestError("'overrides' must be an object", {{"overrides", "expected an object"}}); }
      for (auto const &[key, value] : o.items()) {
        if (key == "theta") {
          req.theta = value.get<double>();
        } else if (key == "epsilon") {
          req.epsilon = value.get<double>();
        } else if (key == "max_iterations") {
          req.max_iterations = value.get<int>();
        } else {
          throw RequestError("unknown override '" + key + "'", {{key, "unknown override"}});
        }
      }
    }
  } catch (json::exception const &e) {
    throw RequestError(std::string("malformed request: ") + e.what(), {{"body", e.what()}});
  }
  return req;
}

Service::Service(FcmModel model) : model_(std::move(model))
{
  auto report = validate_model(model_);
  if (!report.ok()) { throw ValidationError(report.str()); }
}

CaseConfig Service::resolve_case(InferenceRequest const &request) const
{
  CaseConfig cfg;
  try {
    cfg = cad::case_config(request.case_id);
  } catch (ValidationError const &e) {
    throw RequestError(e.what(), {{"case_id", "unknown case '" + request.case_id + "'"}});
  }
  if (request.theta) { cfg.threshold = *request.theta; }
  if (request.epsilon) { cfg.epsilon = *request.epsilon; }
  if (request.max_iterations) { cfg.max_iterations = *request.max_iterations; }
  try {
    cfg.check();
  } catch (ValidationError const &e) {
    throw RequestError(e.what(), {{"overrides", e.what()}});
  }
  return cfg;
}

json Service::infer(InferenceRequest const &request) const
{
  auto const cfg = resolve_case(request);
  RunRecord rr;
  try {
    rr = run(model_, request.attributes, cfg);
  } catch (AttributeError const &e) {
    throw RequestError(e.what(), {{e.attribute(), e.what()}});
  } catch (ValidationError const &e) {
    throw RequestError(e.what(), {{"case_id", e.what()}});
  }
  auto const decision = classify(rr, cfg);
  auto const contrib = contributions(rr, rr.weights);

  json out;
  out["case"] = cfg.id;
  out["decision"] = {{"class", to_string(decision.cls)},
                     {"score", decision.score},
                     {"label", label_output(decision.score, model_.labels)}};
  out["raw_outputs"] = decision.raw_outputs;
  out["fired_rules"] = rr.fired_rules;
  json entries = json::array();
  for (auto const &c : contrib.top(request.top)) {
    auto const *spec = model_.find(c.concept_id);
    entries.push_back({{"concept", c.concept_id}, {"label", spec ? spec->label : ""}, {"value", c.value}});
  }
  out["contributions"] = std::move(entries);
  out["contribution_total"] = contrib.total;
  out["iterations"] = rr.iterations;
  out["converged"] = rr.converged;
  if (request.trajectory) { out["trajectory"] = trajectory_json(rr); }
  return out;
}

json Service::whatif(json const &body) const
{
  if (!body.is_object() || !body.contains("base") || !body.contains("deltas")) {
    throw RequestError("what-if body needs 'base' and 'deltas'", {{"body", "expected {base, deltas}"}});
  }
  auto const base = parse_inference_request(body.at("base"));
  auto const &deltas = body.at("deltas");
  if (!deltas.is_array()) { throw RequestError("'deltas' must be an array", {{"deltas", "expected an array"}}); }

  json results = json::array();
  for (auto const &delta : deltas) {
    try {
      auto req = base;
      for (auto const &[k, v] : parse_attributes(delta, "delta")) { req.attributes[k] = v; }
      results.push_back(infer(req));
    } catch (RequestError const &e) {
      results.push_back(error_body(e));
    }
  }
  return {{"results", std::move(results)}};
}

json Service::describe_model() const
{
  json concepts = json::array();
  for (auto const &c : model_.concepts) {
    json jc{{"id", c.id}, {"label", c.label}, {"kind", to_string(c.kind)}, {"active", c.active}};
    if (!c.group.empty()) { jc["group"] = c.group; }
    if (!c.section.empty()) { jc["section"] = c.section; }
    if (!c.domain.empty()) {
      json values = json::array();
      for (auto const &l : c.domain) { values.push_back({{"value", l.value}, {"crisp", l.crisp}}); }
      jc["values"] = std::move(values);
    }
    concepts.push_back(std::move(jc));
  }
  json edges = json::array();
  for (auto const &e : model_.edges) {
    edges.push_back({{"from", e.source},
                     {"to", e.target},
                     {"weight", e.weight.str()},
                     {"numeric", numeric_weight(e, model_.scale)},
                     {"gate", to_string(e.gate)},
                     {"provenance", e.provenance}});
  }
  json rules = json::array();
  for (auto const &r : model_.rules) { rules.push_back({{"id", r.id}, {"description", r.description}}); }
  json labels = json::array();
  for (auto const &b : model_.labels) { labels.push_back({{"upper", b.upper}, {"label", b.label}}); }
  return {{"meta", {{"name", model_.meta.name}, {"version", model_.meta.version}}},
          {"concepts", std::move(concepts)},
          {"edges", std::move(edges)},
          {"rules", std::move(rules)},
          {"labels", std::move(labels)}};
}

json Service::describe_cases() const
{
  json cases = json::array();
  for (auto const &c : cad::all_cases()) {
    cases.push_back({{"id", c.id},
                     {"engine", to_string(c.engine)},
                     {"rules_enabled", c.rules_enabled},
                     {"states", c.states},
                     {"activation", activation_json(c.activation)},
                     {"output_mode", to_string(c.output_mode)},
                     {"threshold", c.threshold},
                     {"epsilon", c.epsilon},
                     {"max_iterations", c.max_iterations}});
  }
  return cases;
}

json error_body(RequestError const &e) { return {{"error", e.what()}, {"fields", e.fields()}}; }

void mount_routes(httplib::Server &server, Service const &service, std::string const &static_dir)
{
  auto reply = [](httplib::Response &res, json const &body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
  };
  auto handle = [reply](auto &&fn) {
    return [reply, fn](httplib::Request const &req, httplib::Response &res) {
      try {
        json body;
        try {
          body = json::parse(req.body);
        } catch (json::exception const &e) {
          throw RequestError(std::string("invalid JSON: ") + e.what(), {{"body", "invalid JSON"}});
        }
        reply(res, fn(body));
      } catch (RequestError const &e) {
        reply(res, error_body(e), 400);
      } catch (std::exception const &e) {
        reply(res, json{{"error", e.what()}}, 500);
      }
    };
  };

  server.Post("/api/infer", handle([&service](json const &body) { return service.infer(parse_inference_request(body)); }));
  server.Post("/api/whatif", handle([&service](json const &body) { return service.whatif(body); }));
  server.Get("/api/model", [&service, reply](httplib::Request const &, httplib::Response &res) {
    reply(res, service.describe_model());
  });
  server.Get("/api/cases", [&service, reply](httplib::Request const &, httplib::Response &res) {
    reply(res, service.describe_cases());
  });
  server.Get("/healthz", [reply](httplib::Request const &, httplib::Response &res) { reply(res, json{{"status", "ok"}}); });

  std::error_code ec;
  if (!static_dir.empty() && std::filesystem::is_directory(static_dir, ec)) {
    server.set_mount_point("/", static_dir);
  } else {
    server.Get("/", [](httplib::Request const &, httplib::Response &res) {
      res.set_content("<!doctype html><title>afcm</title><p>UI assets are not installed. The JSON API is under /api/.</p>",
                      "text/html");
    });
  }
  server.set_error_handler([reply](httplib::Request const &req, httplib::Response &res) {
    if (res.status == 404) { reply(res, json{{"error", "no route for " + req.method + " " + req.path}}, 404); }
  });
}

} // namespace afcm
