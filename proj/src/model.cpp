#include "afcm/model.hpp"

#include "afcm/error.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace afcm {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 5> kMagnitudeNames{"VW", "W", "M", "S", "VS"};

bool contains(std::vector<std::string> const &v, std::string_view s)
{
  return std::find(v.begin(), v.end(), s) != v.end();
}

bool edge_kind_allowed(ConceptKind from, ConceptKind to)
{
  using K = ConceptKind;
  if (from == K::Output) { return false; }
  if (from == K::Input) { return true; }
  return to == K::State || to == K::Output; // from state
}

} // namespace

std::string_view to_string(ConceptKind kind)
{
  switch (kind) {
  case ConceptKind::Input: return "input";
  case ConceptKind::State: return "state";
  case ConceptKind::Output: return "output";
  }
  return "?";
}

std::string_view to_string(Gate gate)
{
  switch (gate) {
  case Gate::Always: return "always";
  case Gate::PositiveSource: return "positive";
  case Gate::NegativeSource: return "negative";
  }
  return "?";
}

LinguisticWeight LinguisticWeight::parse(std::string_view text)
{
  LinguisticWeight w;
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    w.negative = body.front() == '-';
    body.remove_prefix(1);
  }
  for (std::size_t i = 0; i < kMagnitudeNames.size(); ++i) {
    if (body == kMagnitudeNames[i]) {
      w.magnitude = static_cast<Magnitude>(i);
      return w;
    }
  }
  throw ParseError("unknown weight term '" + std::string(text) + "'");
}

std::string LinguisticWeight::str() const
{
  return (negative ? "-" : "") + std::string(kMagnitudeNames[static_cast<std::size_t>(magnitude)]);
}

double numeric_weight(Edge const &edge, WeightScale const &scale)
{
  double const w = (edge.weight.negative ? -1.0 : 1.0) * scale[edge.weight.magnitude] * edge.multiplier;
  return std::clamp(w, -1.0, 1.0);
}

OutputLabelScale default_label_scale()
{
  return {{0.2, "Normal Situation"},
          {0.4, "Doubtful Situation"},
          {0.6, "Little Abnormal Situation"},
          {0.8, "Abnormal Situation"},
          {1.0, "Definitely Abnormal Situation"}};
}

ConceptSpec const *FcmModel::find(std::string_view id) const
{
  auto it = std::find_if(concepts.begin(), concepts.end(), [&](auto const &c) { return c.id == id; });
  return it == concepts.end() ? nullptr : &*it;
}

ConceptSpec const &FcmModel::at(std::string_view id) const
{
  if (auto const *c = find(id)) { return *c; }
  throw ValidationError("unknown concept '" + std::string(id) + "'");
}

std::vector<std::string> FcmModel::ids_of(ConceptKind kind) const
{
  std::vector<std::string> ids;
  for (auto const &c : concepts) {
    if (c.kind == kind) { ids.push_back(c.id); }
  }
  return ids;
}

bool FcmModel::has_incoming(std::string_view id) const
{
  return std::any_of(edges.begin(), edges.end(), [&](auto const &e) { return e.target == id; });
}

std::string ValidationReport::str() const
{
  std::string out;
  for (auto const &v : violations) {
    if (!out.empty()) { out += "; "; }
    out += v.code + ": " + v.message;
  }
  return out;
}

// Validation ---------------------------------------------------------------

ValidationReport validate_model(FcmModel const &model)
{
  ValidationReport report;
  auto flag = [&](std::string code, std::string message) {
    report.violations.push_back({std::move(code), std::move(message)});
  };

  if (model.concepts.empty()) { flag("no concepts", "model declares no concepts"); }

  std::unordered_map<std::string, ConceptSpec const *> byId;
  for (auto const &c : model.concepts) {
    if (c.id.empty()) { flag("empty id", "concept with empty id"); }
    if (!byId.emplace(c.id, &c).second) { flag("duplicate id", "concept id '" + c.id + "' declared twice"); }
    if (c.kind == ConceptKind::Input) {
      if (c.domain.empty()) { flag("input without domain", "input '" + c.id + "' has no value domain"); }
    } else if (!c.domain.empty()) {
      flag("state with value domain", std::string(to_string(c.kind)) + " '" + c.id + "' declares a value domain");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < c.domain.size(); ++i) {
      auto const &lvl = c.domain[i];
      if (!(lvl.crisp >= 0.0 && lvl.crisp <= 1.0)) {
        flag("crisp out of range", "'" + c.id + "' value '" + lvl.value + "' encodes outside [0,1]");
      }
      if (!seen.insert(lvl.value).second) {
        flag("duplicate value", "'" + c.id + "' lists value '" + lvl.value + "' twice");
      }
      if (i > 0 && !(lvl.crisp > c.domain[i - 1].crisp)) {
        flag("encoding not increasing", "'" + c.id + "' encodings are not strictly increasing");
      }
    }
  }
  for (auto const &c : model.concepts) {
    if (c.group.empty()) { continue; }
    auto it = byId.find(c.group);
    if (it == byId.end() || it->second->kind != ConceptKind::State) {
      flag("unknown group", "'" + c.id + "' names group '" + c.group + "' which is not a state concept");
    }
  }

  std::set<std::tuple<std::string, std::string, Gate>> edgeKeys;
  for (auto const &e : model.edges) {
    auto s = byId.find(e.source);
    auto t = byId.find(e.target);
    if (s == byId.end()) { flag("unknown concept", "edge references unknown concept '" + e.source + "'"); }
    if (t == byId.end()) { flag("unknown concept", "edge references unknown concept '" + e.target + "'"); }
    if (e.source == e.target) { flag("self-edge", "self-edge on '" + e.source + "'"); }
    if (!(e.multiplier > 0.0)) {
      flag("non-positive multiplier", "edge " + e.source + "->" + e.target + " has multiplier <= 0");
    }
    if (!edgeKeys.emplace(e.source, e.target, e.gate).second) {
      flag("duplicate edge", "edge " + e.source + "->" + e.target + " declared twice");
    }
    if (s == byId.end() || t == byId.end()) { continue; }
    auto const sk = s->second->kind;
    auto const tk = t->second->kind;
    if (!edge_kind_allowed(sk, tk)) {
      flag("illegal edge kind", e.source + " (" + std::string(to_string(sk)) + ") -> " + e.target + " (" +
                                  std::string(to_string(tk)) + ")");
    }
    if (e.gate != Gate::Always && !(sk == ConceptKind::State && tk == ConceptKind::Output)) {
      flag("gate outside state->output", "edge " + e.source + "->" + e.target + " is gated");
    }
    if (!s->second->active || !t->second->active) {
      flag("edge on inactive concept", "edge " + e.source + "->" + e.target + " touches an inactive concept");
    }
  }

  auto const &sv = model.scale.values;
  for (std::size_t i = 0; i < sv.size(); ++i) {
    if (!(sv[i] > 0.0 && sv[i] <= 1.0) || (i > 0 && !(sv[i] > sv[i - 1]))) {
      flag("scale not increasing", "weight scale must satisfy 0 < VW < W < M < S < VS <= 1");
      break;
    }
  }

  if (model.labels.empty()) {
    flag("label scale", "output label scale is empty");
  } else {
    for (std::size_t i = 0; i < model.labels.size(); ++i) {
      double const ub = model.labels[i].upper;
      if (!(ub > 0.0 && ub <= 1.0) || (i > 0 && !(ub > model.labels[i - 1].upper))) {
        flag("label scale", "label bounds must be strictly increasing within (0,1]");
        break;
      }
    }
    if (model.labels.back().upper != 1.0) { flag("label scale", "final label bound must be 1"); }
  }

  std::set<std::string> ruleIds;
  auto checkAttr = [&](Rule const &r, std::string const &attr, std::vector<std::string> const &values) {
    auto it = byId.find(attr);
    if (it == byId.end() || it->second->kind != ConceptKind::Input) {
      flag("unknown attribute", "rule '" + r.id + "' references undeclared attribute '" + attr + "'");
      return;
    }
    for (auto const &v : values) {
      auto const &dom = it->second->domain;
      if (std::none_of(dom.begin(), dom.end(), [&](auto const &l) { return l.value == v; })) {
        flag("unknown value", "rule '" + r.id + "' uses value '" + v + "' outside the domain of '" + attr + "'");
      }
    }
  };
  auto checkIds = [&](Rule const &r, std::vector<std::string> const &ids) {
    for (auto const &id : ids) {
      if (!byId.count(id)) { flag("unknown concept", "rule '" + r.id + "' references unknown concept '" + id + "'"); }
    }
  };
  for (auto const &r : model.rules) {
    if (!ruleIds.insert(r.id).second) { flag("duplicate rule", "rule id '" + r.id + "' declared twice"); }
    if (r.actions.empty()) { flag("rule without actions", "rule '" + r.id + "' has no actions"); }
    for (auto const &p : r.condition.all) {
      if (p.attributes.empty()) { flag("empty predicate", "rule '" + r.id + "' has a predicate with no attribute"); }
      for (auto const &a : p.attributes) { checkAttr(r, a, p.values); }
    }
    for (auto const &a : r.actions) {
      bool const scales = a.kind == Action::Kind::ScaleEdges || a.kind == Action::Kind::ScaleEdgesWhere;
      if (scales && !(a.factor > 0.0)) { flag("non-positive factor", "rule '" + r.id + "' scales by a factor <= 0"); }
      checkIds(r, a.select.sources);
      checkIds(r, a.select.targets);
      checkIds(r, a.select.source_groups);
      checkIds(r, a.concepts);
    }
  }
  return report;
}

// JSON ---------------------------------------------------------------------

namespace {

void reject_unknown_keys(json const &obj, std::initializer_list<std::string_view> allowed, std::string const &where)
{
  if (!obj.is_object()) { throw ParseError(where + ": expected an object"); }
  for (auto const &[key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ParseError(where + ": unknown key '" + key + "'");
    }
  }
}

template <typename T> T get_or(json const &obj, char const *key, T fallback)
{
  auto it = obj.find(key);
  return it == obj.end() ? fallback : it->get<T>();
}

ConceptKind parse_kind(std::string const &s)
{
  if (s == "input") { return ConceptKind::Input; }
  if (s == "state") { return ConceptKind::State; }
  if (s == "output") { return ConceptKind::Output; }
  throw ParseError("unknown concept kind '" + s + "'");
}

Gate parse_gate(std::string const &s)
{
  if (s == "always") { return Gate::Always; }
  if (s == "positive") { return Gate::PositiveSource; }
  if (s == "negative") { return Gate::NegativeSource; }
  throw ParseError("unknown gate '" + s + "'");
}

EdgeSelector parse_selector(json const &j)
{
  reject_unknown_keys(j, {"source", "target", "source_group"}, "selector");
  EdgeSelector s;
  s.sources = get_or(j, "source", std::vector<std::string>{});
  s.targets = get_or(j, "target", std::vector<std::string>{});
  s.source_groups = get_or(j, "source_group", std::vector<std::string>{});
  return s;
}

json dump_selector(EdgeSelector const &s)
{
  json j = json::object();
  if (!s.sources.empty()) { j["source"] = s.sources; }
  if (!s.targets.empty()) { j["target"] = s.targets; }
  if (!s.source_groups.empty()) { j["source_group"] = s.source_groups; }
  return j;
}

Predicate parse_predicate(json const &j)
{
  reject_unknown_keys(j, {"attr", "equals", "in", "not_in", "count", "at_least"}, "predicate");
  Predicate p;
  if (j.contains("count")) {
    p.attributes = j.at("count").get<std::vector<std::string>>();
    p.at_least = get_or(j, "at_least", 1);
    if (j.contains("in")) {
      p.kind = Predicate::Kind::CountIn;
      p.values = j.at("in").get<std::vector<std::string>>();
    } else if (j.contains("not_in")) {
      p.kind = Predicate::Kind::CountNotIn;
      p.values = j.at("not_in").get<std::vector<std::string>>();
    } else {
      throw ParseError("count predicate needs 'in' or 'not_in'");
    }
    return p;
  }
  if (!j.contains("attr")) { throw ParseError("predicate needs 'attr' or 'count'"); }
  p.attributes = {j.at("attr").get<std::string>()};
  if (j.contains("equals")) {
    p.kind = Predicate::Kind::Equals;
    p.values = {j.at("equals").get<std::string>()};
  } else if (j.contains("in")) {
    p.kind = Predicate::Kind::In;
    p.values = j.at("in").get<std::vector<std::string>>();
  } else if (j.contains("not_in")) {
    p.kind = Predicate::Kind::NotIn;
    p.values = j.at("not_in").get<std::vector<std::string>>();
  } else {
    throw ParseError("predicate on '" + p.attributes[0] + "' needs 'equals', 'in' or 'not_in'");
  }
  return p;
}

json dump_predicate(Predicate const &p)
{
  json j;
  switch (p.kind) {
  case Predicate::Kind::Equals:
    j["attr"] = p.attributes.at(0);
    j["equals"] = p.values.at(0);
    break;
  case Predicate::Kind::In:
    j["attr"] = p.attributes.at(0);
    j["in"] = p.values;
    break;
  case Predicate::Kind::NotIn:
    j["attr"] = p.attributes.at(0);
    j["not_in"] = p.values;
    break;
  case Predicate::Kind::CountIn:
  case Predicate::Kind::CountNotIn:
    j["count"] = p.attributes;
    j[p.kind == Predicate::Kind::CountIn ? "in" : "not_in"] = p.values;
    j["at_least"] = p.at_least;
    break;
  }
  return j;
}

Action parse_action(json const &j)
{
  reject_unknown_keys(j, {"scale", "select", "where_source_in", "remove", "deactivate"}, "action");
  Action a;
  if (j.contains("scale")) {
    a.factor = j.at("scale").get<double>();
    a.select = parse_selector(j.at("select"));
    if (j.contains("where_source_in")) {
      a.kind = Action::Kind::ScaleEdgesWhere;
      a.source_values = j.at("where_source_in").get<std::vector<std::string>>();
    } else {
      a.kind = Action::Kind::ScaleEdges;
    }
  } else if (j.contains("remove")) {
    a.kind = Action::Kind::RemoveEdges;
    a.select = parse_selector(j.at("remove"));
  } else if (j.contains("deactivate")) {
    a.kind = Action::Kind::DeactivateConcepts;
    a.concepts = j.at("deactivate").get<std::vector<std::string>>();
  } else {
    throw ParseError("action needs one of 'scale', 'remove', 'deactivate'");
  }
  return a;
}

json dump_action(Action const &a)
{
  json j;
  switch (a.kind) {
  case Action::Kind::ScaleEdges:
    j["scale"] = a.factor;
    j["select"] = dump_selector(a.select);
    break;
  case Action::Kind::ScaleEdgesWhere:
    j["scale"] = a.factor;
    j["select"] = dump_selector(a.select);
    j["where_source_in"] = a.source_values;
    break;
  case Action::Kind::RemoveEdges: j["remove"] = dump_selector(a.select); break;
  case Action::Kind::DeactivateConcepts: j["deactivate"] = a.concepts; break;
  }
  return j;
}

FcmModel parse_model(json const &doc)
{
  reject_unknown_keys(doc, {"meta", "scale", "concepts", "encodings", "edges", "rules", "labels"}, "model");
  FcmModel m;

  if (doc.contains("meta")) {
    auto const &meta = doc.at("meta");
    reject_unknown_keys(meta, {"name", "version"}, "meta");
    m.meta.name = get_or(meta, "name", std::string{});
    m.meta.version = get_or(meta, "version", std::string{});
  }

  if (doc.contains("scale")) {
    auto const &sc = doc.at("scale");
    reject_unknown_keys(sc, {"VW", "W", "M", "S", "VS"}, "scale");
    for (std::size_t i = 0; i < kMagnitudeNames.size(); ++i) {
      std::string const key(kMagnitudeNames[i]);
      if (!sc.contains(key)) { throw ParseError("scale: missing term '" + key + "'"); }
      m.scale.values[i] = sc.at(key).get<double>();
    }
  }

  for (auto const &c : doc.at("concepts")) {
    reject_unknown_keys(c, {"id", "label", "kind", "group", "section", "active"}, "concept");
    ConceptSpec spec;
    spec.id = c.at("id").get<std::string>();
    spec.label = get_or(c, "label", std::string{});
    spec.kind = parse_kind(c.at("kind").get<std::string>());
    spec.group = get_or(c, "group", std::string{});
    spec.section = get_or(c, "section", std::string{});
    spec.active = get_or(c, "active", true);
    m.concepts.push_back(std::move(spec));
  }

  if (doc.contains("encodings")) {
    for (auto const &[id, levels] : doc.at("encodings").items()) {
      auto it = std::find_if(m.concepts.begin(), m.concepts.end(), [&](auto const &c) { return c.id == id; });
      if (it == m.concepts.end()) { throw ParseError("encodings: unknown concept '" + id + "'"); }
      for (auto const &lvl : levels) {
        if (!lvl.is_array() || lvl.size() != 2) { throw ParseError("encodings: '" + id + "' expects [value, crisp] pairs"); }
        it->domain.push_back({lvl[0].get<std::string>(), lvl[1].get<double>()});
      }
    }
  }

  if (doc.contains("edges")) {
    for (auto const &e : doc.at("edges")) {
      reject_unknown_keys(e, {"from", "to", "weight", "gate", "multiplier", "provenance"}, "edge");
      Edge edge;
      edge.source = e.at("from").get<std::string>();
      edge.target = e.at("to").get<std::string>();
      edge.weight = LinguisticWeight::parse(e.at("weight").get<std::string>());
      edge.gate = parse_gate(get_or(e, "gate", std::string("always")));
      edge.multiplier = get_or(e, "multiplier", 1.0);
      edge.provenance = get_or(e, "provenance", std::string{});
      m.edges.push_back(std::move(edge));
    }
  }

  if (doc.contains("rules")) {
    for (auto const &r : doc.at("rules")) {
      reject_unknown_keys(r, {"id", "description", "when", "then"}, "rule");
      Rule rule;
      rule.id = r.at("id").get<std::string>();
      rule.description = get_or(r, "description", std::string{});
      for (auto const &p : r.at("when")) { rule.condition.all.push_back(parse_predicate(p)); }
      for (auto const &a : r.at("then")) { rule.actions.push_back(parse_action(a)); }
      m.rules.push_back(std::move(rule));
    }
  }

  if (doc.contains("labels")) {
    m.labels.clear();
    for (auto const &b : doc.at("labels")) {
      if (!b.is_array() || b.size() != 2) { throw ParseError("labels: expects [upper, label] pairs"); }
      m.labels.push_back({b[0].get<double>(), b[1].get<std::string>()});
    }
  }
  return m;
}

} // namespace

FcmModel parse_model_document(std::string_view document)
{
  try {
    return parse_model(json::parse(document));
  } catch (json::exception const &e) {
    throw ParseError(std::string("model document: ") + e.what());
  }
}

FcmModel load_model(std::string_view document)
{
  FcmModel model = parse_model_document(document);
  auto report = validate_model(model);
  if (!report.ok()) { throw ValidationError(report.str()); }
  return model;
}

FcmModel load_model_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw ParseError("cannot open model file '" + path + "'"); }
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string serialize_model(FcmModel const &model)
{
  json doc;
  doc["meta"] = {{"name", model.meta.name}, {"version", model.meta.version}};
  json scale;
  for (std::size_t i = 0; i < kMagnitudeNames.size(); ++i) {
    scale[std::string(kMagnitudeNames[i])] = model.scale.values[i];
  }
  doc["scale"] = scale;

  doc["concepts"] = json::array();
  json encodings = json::object();
  for (auto const &c : model.concepts) {
    json jc{{"id", c.id}, {"label", c.label}, {"kind", to_string(c.kind)}};
    if (!c.group.empty()) { jc["group"] = c.group; }
    if (!c.section.empty()) { jc["section"] = c.section; }
    if (!c.active) { jc["active"] = false; }
    doc["concepts"].push_back(std::move(jc));
    if (!c.domain.empty()) {
      json levels = json::array();
      for (auto const &l : c.domain) { levels.push_back(json::array({l.value, l.crisp})); }
      encodings[c.id] = std::move(levels);
    }
  }
  doc["encodings"] = std::move(encodings);

  doc["edges"] = json::array();
  for (auto const &e : model.edges) {
    json je{{"from", e.source}, {"to", e.target}, {"weight", e.weight.str()}};
    if (e.gate != Gate::Always) { je["gate"] = to_string(e.gate); }
    if (e.multiplier != 1.0) { je["multiplier"] = e.multiplier; }
    if (!e.provenance.empty()) { je["provenance"] = e.provenance; }
    doc["edges"].push_back(std::move(je));
  }

  doc["rules"] = json::array();
  for (auto const &r : model.rules) {
    json jr{{"id", r.id}, {"description", r.description}, {"when", json::array()}, {"then", json::array()}};
    for (auto const &p : r.condition.all) { jr["when"].push_back(dump_predicate(p)); }
    for (auto const &a : r.actions) { jr["then"].push_back(dump_action(a)); }
    doc["rules"].push_back(std::move(jr));
  }

  doc["labels"] = json::array();
  for (auto const &b : model.labels) { doc["labels"].push_back(json::array({b.upper, b.label})); }
  return doc.dump(2) + "\n";
}

// Topology -----------------------------------------------------------------

FcmModel with_states(FcmModel const &model, std::vector<std::string> const &keep)
{
  for (auto const &id : keep) {
    if (model.at(id).kind != ConceptKind::State) { throw ValidationError("'" + id + "' is not a state concept"); }
  }
  std::unordered_set<std::string> dropped;
  for (auto const &c : model.concepts) {
    if (c.kind == ConceptKind::State && !contains(keep, c.id)) { dropped.insert(c.id); }
  }
  auto const outputs = model.ids_of(ConceptKind::Output);

  FcmModel out = model;
  out.concepts.clear();
  for (auto c : model.concepts) {
    if (dropped.count(c.id)) { continue; }
    if (dropped.count(c.group)) { c.group.clear(); }
    out.concepts.push_back(std::move(c));
  }
  out.edges.clear();
  for (auto const &e : model.edges) {
    if (dropped.count(e.source)) { continue; }
    if (!dropped.count(e.target)) {
      out.edges.push_back(e);
      continue;
    }
    if (model.at(e.source).kind != ConceptKind::Input) { continue; }
    for (auto const &o : outputs) {
      Edge direct = e;
      direct.target = o;
      direct.gate = Gate::Always;
      out.edges.push_back(std::move(direct));
    }
  }
  return out;
}

FcmModel with_two_outputs(FcmModel const &model)
{
  auto const outputs = model.ids_of(ConceptKind::Output);
  if (outputs.size() != 1) { throw ValidationError("two-output split needs exactly one output concept"); }
  std::string const &single = outputs.front();

  FcmModel out = model;
  out.concepts.clear();
  for (auto const &c : model.concepts) {
    if (c.id != single) {
      out.concepts.push_back(c);
      continue;
    }
    ConceptSpec healthy = c;
    healthy.id = std::string(kHealthyOutput);
    healthy.label = "out_healthy";
    ConceptSpec diseased = c;
    diseased.id = std::string(kDiseasedOutput);
    diseased.label = "out_diseased";
    out.concepts.push_back(std::move(healthy));
    out.concepts.push_back(std::move(diseased));
  }

  out.edges.clear();
  for (auto const &e : model.edges) {
    if (e.target != single) {
      out.edges.push_back(e);
      continue;
    }
    Edge base = e;
    base.weight.negative = false;
    if (model.at(e.source).kind == ConceptKind::Input) {
      base.target = std::string(e.weight.negative ? kHealthyOutput : kDiseasedOutput);
      out.edges.push_back(std::move(base));
      continue;
    }
    if (e.gate != Gate::Always) { throw ValidationError("edge " + e.source + "->" + e.target + " is already gated"); }
    // A positive weight pushes toward "diseased" when the state is positive.
    Edge healthy = base;
    healthy.target = std::string(kHealthyOutput);
    healthy.gate = e.weight.negative ? Gate::PositiveSource : Gate::NegativeSource;
    Edge diseased = base;
    diseased.target = std::string(kDiseasedOutput);
    diseased.gate = e.weight.negative ? Gate::NegativeSource : Gate::PositiveSource;
    out.edges.push_back(std::move(healthy));
    out.edges.push_back(std::move(diseased));
  }
  return out;
}

} // namespace afcm
