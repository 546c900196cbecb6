#pragma once

#include "afcm/fuzzy_io.hpp"
#include "afcm/model.hpp"

#include <string>
#include <vector>

namespace afcm {

/// Identifies an edge within a validated model (duplicates are rejected there).
struct EdgeKey
{
  std::string source;
  std::string target;
  Gate gate = Gate::Always;
  bool operator==(EdgeKey const &) const = default;
};

/// One mutation performed by a fired rule.
struct FiredAction
{
  std::string rule_id;
  Action::Kind kind = Action::Kind::ScaleEdges;
  std::vector<EdgeKey> edges;        ///< edges scaled or removed
  std::vector<std::string> concepts; ///< concepts deactivated
  double factor = 1.0;               ///< 1 for removals and deactivations
  bool operator==(FiredAction const &) const = default;
};

struct FiredRuleLog
{
  std::vector<FiredAction> entries;
  /// Rule ids in firing order, each once.
  [[nodiscard]] std::vector<std::string> rule_ids() const;
  bool operator==(FiredRuleLog const &) const = default;
};

struct RuleOutcome
{
  FcmModel model;
  FiredRuleLog log;
};

/// Pure predicate evaluation. Throws AttributeError when the record lacks an attribute
/// the rule references.
bool evaluate_condition(Rule const &rule, Record const &record);

/// Fires rules in order against the untouched record and returns the rewritten model.
/// Scaling multiplies edge multipliers; deactivation clears the concept and drops its edges.
RuleOutcome apply_rules(std::vector<Rule> const &rules, FcmModel const &model, Record const &record);

/// Re-applies the mutations recorded in `log` to `model`.
FcmModel replay_log(FcmModel const &model, FiredRuleLog const &log);

bool selector_matches(EdgeSelector const &selector, Edge const &edge, FcmModel const &model);

} // namespace afcm
