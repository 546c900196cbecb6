#pragma once

#include "afcm/eval.hpp"
#include "afcm/inference.hpp"
#include "afcm/model.hpp"

#include <string>
#include <vector>

namespace afcm::cad {

/// Coronary artery disease model: 31 inputs, states A32-A35, one output "OUT",
/// and the six expert rules.
FcmModel builtin_model();

/// "Case1" ... "Case10".
std::vector<std::string> case_ids();

/// Throws ValidationError for an unknown id.
CaseConfig case_config(std::string const &id);

std::vector<CaseConfig> all_cases();

inline constexpr std::uint64_t kFixtureSeed = 303;
inline constexpr std::size_t kFixtureSize = 60;

/// Deterministic synthetic records over the model's attribute schema. Labels come
/// from a hand-written risk score that never touches the engine.
Dataset fixture_dataset();

/// Record with every attribute at its first (least severe) value.
Record baseline_record(FcmModel const &model);

} // namespace afcm::cad
