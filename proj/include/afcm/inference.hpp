#pragma once

#include "afcm/activation.hpp"
#include "afcm/fuzzy_io.hpp"
#include "afcm/rules.hpp"
#include "afcm/weights.hpp"

#include <string>
#include <utility>
#include <vector>

namespace afcm {

/// Concept values at iteration k, ordered [u; x; y] as in the weight layout.
template <typename Scalar> struct ConceptVector
{
  Index k = 0;
  Vector<Scalar> values;
  Eigen::Array<bool, Eigen::Dynamic, 1> active;
  Index n_inputs = 0;
  Index n_states = 0;
  Index n_outputs = 0;

  static ConceptVector zeros(Layout const &layout)
  {
    ConceptVector cv;
    cv.values = Vector<Scalar>::Zero(layout.size());
    cv.active = Eigen::Array<bool, Eigen::Dynamic, 1>::Constant(layout.size(), true);
    cv.n_inputs = layout.n_inputs();
    cv.n_states = layout.n_states();
    cv.n_outputs = layout.n_outputs();
    return cv;
  }

  [[nodiscard]] Index size() const { return values.size(); }
  auto u() { return values.segment(0, n_inputs); }
  auto x() { return values.segment(n_inputs, n_states); }
  auto y() { return values.segment(n_inputs + n_states, n_outputs); }
  [[nodiscard]] auto u() const { return values.segment(0, n_inputs); }
  [[nodiscard]] auto x() const { return values.segment(n_inputs, n_states); }
  [[nodiscard]] auto y() const { return values.segment(n_inputs + n_states, n_outputs); }

  /// Values with deactivated concepts forced to zero.
  [[nodiscard]] Vector<Scalar> masked() const { return (values.array() * active.template cast<Scalar>()).matrix(); }

  bool operator==(ConceptVector const &o) const
  {
    return k == o.k && n_inputs == o.n_inputs && n_states == o.n_states && n_outputs == o.n_outputs &&
           values == o.values && (active == o.active).all();
  }
};

/// Raw (unnormalised) variation caused by the current values.
template <typename Scalar> struct UpdateDelta
{
  Vector<Scalar> du;
  Vector<Scalar> dx;
  Vector<Scalar> dy;
};

template <typename Scalar>
void check_dimensions(ConceptVector<Scalar> const &cv, WeightMatrices<Scalar> const &w)
{
  if (cv.n_inputs != w.layout.n_inputs() || cv.n_states != w.layout.n_states() ||
      cv.n_outputs != w.layout.n_outputs() || cv.values.size() != w.layout.size() ||
      cv.active.size() != w.layout.size()) {
    throw DimensionError("concept vector does not match the weight layout");
  }
}

/// Deltas of the state-space law: du = ii'u, dx = ss'x + is'u, dy = io'u + so'x (+ gated terms).
template <typename Scalar>
UpdateDelta<Scalar> compute_delta(ConceptVector<Scalar> const &cv, WeightMatrices<Scalar> const &w)
{
  check_dimensions(cv, w);
  Vector<Scalar> const v = cv.masked();
  auto const u = v.segment(0, cv.n_inputs);
  auto const x = v.segment(cv.n_inputs, cv.n_states);
  Vector<Scalar> const xPos = x.cwiseMax(Scalar(0));
  Vector<Scalar> const xNeg = (-x).cwiseMax(Scalar(0));

  UpdateDelta<Scalar> d;
  d.du = w.ii.transpose() * u;
  d.dx = w.ss.transpose() * x + w.is.transpose() * u;
  d.dy = w.io.transpose() * u + w.so.transpose() * x + w.so_positive.transpose() * xPos +
         w.so_negative.transpose() * xNeg;
  return d;
}

/// One state-space step: v[k+1] = act(v[k] + delta / incoming_abs_sum) for every active
/// concept with incoming edges; others keep their value (inactive ones hold 0).
/// Inputs move only when `update_inputs` is set.
template <typename Scalar>
std::pair<ConceptVector<Scalar>, UpdateDelta<Scalar>> afcm_step(ConceptVector<Scalar> const &cv,
                                                                WeightMatrices<Scalar> const &w,
                                                                ActivationSpec const &act, bool update_inputs = true)
{
  auto d = compute_delta(cv, w);
  ConceptVector<Scalar> next = cv;
  next.k = cv.k + 1;

  Vector<Scalar> delta(cv.size());
  delta << d.du, d.dx, d.dy;
  for (Index i = 0; i < cv.size(); ++i) {
    if (!cv.active(i)) {
      next.values(i) = Scalar(0);
      continue;
    }
    if (!update_inputs && i < cv.n_inputs) { continue; }
    Scalar const den = w.incoming_abs_sum(i);
    if (den == Scalar(0)) { continue; }
    next.values(i) = act(cv.values(i) + delta(i) / den);
  }
  return {std::move(next), std::move(d)};
}

/// Classic update over an unpartitioned matrix: v[k+1] = act(v[k] + W'v[k]).
template <typename Scalar>
ConceptVector<Scalar> classic_step(ConceptVector<Scalar> const &cv, Matrix<Scalar> const &flat,
                                   ActivationSpec const &act)
{
  if (flat.rows() != cv.size() || flat.cols() != cv.size()) {
    throw DimensionError("classic weight matrix does not match the concept vector");
  }
  Vector<Scalar> const v = cv.masked();
  Vector<Scalar> const pre = v + flat.transpose() * v;
  ConceptVector<Scalar> next = cv;
  next.k = cv.k + 1;
  for (Index i = 0; i < cv.size(); ++i) { next.values(i) = cv.active(i) ? act(pre(i)) : Scalar(0); }
  return next;
}

// Case configuration and runs ------------------------------------------------

enum class EngineKind
{
  Classic,
  Afcm
};

enum class OutputMode
{
  Single,
  TwoClassSoftmax
};

/// How input->input edges act on inputs.
enum class InputMode
{
  OneShot, ///< adjusted once before iterating, then held as exogenous constants
  PerStep  ///< updated every step like any other concept
};

struct CaseConfig
{
  std::string id;
  EngineKind engine = EngineKind::Afcm;
  bool rules_enabled = false;
  std::vector<std::string> states;
  ActivationSpec activation;
  OutputMode output_mode = OutputMode::Single;
  double threshold = 0.5;
  double epsilon = 1e-4;
  int max_iterations = 100;
  InputMode input_mode = InputMode::OneShot;
  /// Equal class scores classify as Diseased when set.
  bool ties_diseased = true;

  /// Throws ValidationError on an inconsistent configuration.
  void check() const;
};

std::string_view to_string(EngineKind engine);
std::string_view to_string(OutputMode mode);

struct RunRecord
{
  std::vector<ConceptVector<double>> trajectory;
  bool converged = false;
  int iterations = 0;
  std::vector<std::string> fired_rules;
  FiredRuleLog rule_log;
  /// Weights the run actually iterated (after rules and topology rewrites).
  WeightMatrices<double> weights;
  ActivationSpec activation;
  OutputMode output_mode = OutputMode::Single;

  [[nodiscard]] ConceptVector<double> const &final() const { return trajectory.back(); }
};

/// The model the given case iterates for a record: rules (if enabled), then the
/// state subset, then the optional two-output split.
struct PreparedModel
{
  FcmModel model;
  FiredRuleLog rule_log;
};
PreparedModel prepare_model(FcmModel const &model, Record const &record, CaseConfig const &cfg);

/// Encodes, rewrites, builds matrices and iterates to convergence or max_iterations.
/// Non-convergence is reported in the record, not thrown.
RunRecord run(FcmModel const &model, Record const &record, CaseConfig const &cfg);

enum class DecisionClass
{
  Healthy,
  Diseased
};

std::string_view to_string(DecisionClass c);

struct Decision
{
  DecisionClass cls = DecisionClass::Healthy;
  double score = 0.0;
  std::vector<double> raw_outputs;
};

Decision classify(RunRecord const &rr, CaseConfig const &cfg);

struct Contribution
{
  std::string concept_id;
  double value = 0.0;
};

/// Signed shares of the final output displacement. Input entries carry their direct
/// edge plus their proportional part of each state's term; a state whose drive is
/// zero keeps its own entry so the entries always sum to `total`.
struct ContributionReport
{
  std::vector<Contribution> entries;
  double total = 0.0;

  /// Entries sorted by |value| descending (stable), truncated to n.
  [[nodiscard]] std::vector<Contribution> top(std::size_t n) const;
};

ContributionReport contributions(RunRecord const &rr, WeightMatrices<double> const &w);

} // namespace afcm
