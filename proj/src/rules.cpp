#include "afcm/rules.hpp"

#include "afcm/error.hpp"

#include <algorithm>

namespace afcm {

namespace {

bool contains(std::vector<std::string> const &v, std::string const &s)
{
  return std::find(v.begin(), v.end(), s) != v.end();
}

std::string const &value_of(Record const &record, std::string const &attr)
{
  auto it = record.find(attr);
  if (it == record.end()) { throw AttributeError(attr, "rule references attribute '" + attr + "' missing from record"); }
  return it->second;
}

bool holds(Predicate const &p, Record const &record)
{
  using K = Predicate::Kind;
  switch (p.kind) {
  case K::Equals: return value_of(record, p.attributes.at(0)) == p.values.at(0);
  case K::In: return contains(p.values, value_of(record, p.attributes.at(0)));
  case K::NotIn: return !contains(p.values, value_of(record, p.attributes.at(0)));
  case K::CountIn:
  case K::CountNotIn: {
    int n = 0;
    for (auto const &a : p.attributes) {
      bool const in = contains(p.values, value_of(record, a));
      n += (in == (p.kind == K::CountIn)) ? 1 : 0;
    }
    return n >= p.at_least;
  }
  }
  return false;
}

EdgeKey key_of(Edge const &e) { return {e.source, e.target, e.gate}; }

bool same_edge(Edge const &e, EdgeKey const &k) { return e.source == k.source && e.target == k.target && e.gate == k.gate; }

void deactivate(FcmModel &model, std::vector<std::string> const &ids)
{
  for (auto &c : model.concepts) {
    if (contains(ids, c.id)) { c.active = false; }
  }
}

} // namespace

std::vector<std::string> FiredRuleLog::rule_ids() const
{
  std::vector<std::string> ids;
  for (auto const &e : entries) {
    if (!contains(ids, e.rule_id)) { ids.push_back(e.rule_id); }
  }
  return ids;
}

bool selector_matches(EdgeSelector const &selector, Edge const &edge, FcmModel const &model)
{
  if (!selector.sources.empty() && !contains(selector.sources, edge.source)) { return false; }
  if (!selector.targets.empty() && !contains(selector.targets, edge.target)) { return false; }
  if (!selector.source_groups.empty()) {
    auto const *src = model.find(edge.source);
    if (src == nullptr || !contains(selector.source_groups, src->group)) { return false; }
  }
  return true;
}

bool evaluate_condition(Rule const &rule, Record const &record)
{
  // Every predicate is evaluated so a missing attribute always surfaces.
  bool result = true;
  for (auto const &p : rule.condition.all) { result = holds(p, record) && result; }
  return result;
}

RuleOutcome apply_rules(std::vector<Rule> const &rules, FcmModel const &model, Record const &record)
{
  std::vector<bool> fires;
  fires.reserve(rules.size());
  for (auto const &r : rules) { fires.push_back(evaluate_condition(r, record)); }

  RuleOutcome out{model, {}};
  FcmModel &m = out.model;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (!fires[i]) { continue; }
    auto const &rule = rules[i];
    for (auto const &a : rule.actions) {
      FiredAction fired{rule.id, a.kind, {}, {}, 1.0};
      switch (a.kind) {
      case Action::Kind::ScaleEdges:
      case Action::Kind::ScaleEdgesWhere:
        fired.factor = a.factor;
        for (auto &e : m.edges) {
          if (!selector_matches(a.select, e, m)) { continue; }
          if (a.kind == Action::Kind::ScaleEdgesWhere) {
            auto it = record.find(e.source);
            if (it == record.end() || !contains(a.source_values, it->second)) { continue; }
          }
          e.multiplier *= a.factor;
          fired.edges.push_back(key_of(e));
        }
        break;
      case Action::Kind::RemoveEdges: {
        auto kept = std::vector<Edge>{};
        for (auto &e : m.edges) {
          if (selector_matches(a.select, e, m)) {
            fired.edges.push_back(key_of(e));
          } else {
            kept.push_back(std::move(e));
          }
        }
        m.edges = std::move(kept);
        break;
      }
      case Action::Kind::DeactivateConcepts: {
        fired.concepts = a.concepts;
        auto kept = std::vector<Edge>{};
        for (auto &e : m.edges) {
          if (contains(a.concepts, e.source) || contains(a.concepts, e.target)) {
            fired.edges.push_back(key_of(e));
          } else {
            kept.push_back(std::move(e));
          }
        }
        m.edges = std::move(kept);
        deactivate(m, a.concepts);
        break;
      }
      }
      out.log.entries.push_back(std::move(fired));
    }
  }
  return out;
}

FcmModel replay_log(FcmModel const &model, FiredRuleLog const &log)
{
  FcmModel m = model;
  for (auto const &entry : log.entries) {
    switch (entry.kind) {
    case Action::Kind::ScaleEdges:
    case Action::Kind::ScaleEdgesWhere:
      for (auto const &k : entry.edges) {
        for (auto &e : m.edges) {
          if (same_edge(e, k)) { e.multiplier *= entry.factor; }
        }
      }
      break;
    case Action::Kind::RemoveEdges:
    case Action::Kind::DeactivateConcepts:
      std::erase_if(m.edges, [&](Edge const &e) {
        return std::any_of(entry.edges.begin(), entry.edges.end(), [&](auto const &k) { return same_edge(e, k); });
      });
      deactivate(m, entry.concepts);
      break;
    }
  }
  return m;
}

} // namespace afcm
