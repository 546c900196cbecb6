#include "afcm/inference.hpp"

#include "afcm/error.hpp"

#include <algorithm>
#include <cmath>

namespace afcm {

std::string_view to_string(EngineKind engine) { return engine == EngineKind::Classic ? "classic" : "afcm"; }

std::string_view to_string(OutputMode mode) { return mode == OutputMode::Single ? "single" : "two_class_softmax"; }

std::string_view to_string(DecisionClass c) { return c == DecisionClass::Diseased ? "Diseased" : "Healthy"; }

void CaseConfig::check() const
{
  if (engine == EngineKind::Classic && !states.empty()) {
    throw ValidationError("case '" + id + "': the classic engine takes no state concepts");
  }
  if (!(epsilon > 0.0)) { throw ValidationError("case '" + id + "': epsilon must be positive"); }
  if (max_iterations < 0) { throw ValidationError("case '" + id + "': max_iterations must be >= 0"); }
  if (!(threshold >= 0.0 && threshold <= 1.0)) { throw ValidationError("case '" + id + "': threshold outside [0,1]"); }
  if (activation.kind == ActivationKind::SigmoidN && !activation.params.valid()) {
    throw ValidationError("case '" + id + "': invalid sigmoidN parameters");
  }
}

PreparedModel prepare_model(FcmModel const &model, Record const &record, CaseConfig const &cfg)
{
  PreparedModel prep{model, {}};
  if (cfg.rules_enabled) {
    auto outcome = apply_rules(model.rules, model, record);
    prep.model = std::move(outcome.model);
    prep.rule_log = std::move(outcome.log);
  }
  prep.model = with_states(prep.model, cfg.states);
  if (cfg.output_mode == OutputMode::TwoClassSoftmax) { prep.model = with_two_outputs(prep.model); }
  return prep;
}

RunRecord run(FcmModel const &model, Record const &record, CaseConfig const &cfg)
{
  cfg.check();
  auto const table = EncodingTable::of(model);
  Vector<double> const encoded = encode_record(record, table);

  auto prep = prepare_model(model, record, cfg);
  RunRecord rr;
  rr.rule_log = std::move(prep.rule_log);
  rr.fired_rules = rr.rule_log.rule_ids();
  rr.weights = defuzzify_weights<double>(prep.model);
  rr.activation = cfg.activation;
  rr.output_mode = cfg.output_mode;

  auto const &w = rr.weights;
  auto const &act = cfg.activation;
  auto cv = ConceptVector<double>::zeros(w.layout);
  for (Index i = 0; i < w.layout.size(); ++i) {
    cv.active(i) = prep.model.at(w.layout.id_at(i)).active;
  }
  for (std::size_t a = 0; a < table.attributes.size(); ++a) {
    auto const idx = w.layout.flat_index(table.attributes[a]);
    if (idx && cv.active(*idx)) { cv.values(*idx) = encoded(static_cast<Index>(a)); }
  }

  if (cfg.input_mode == InputMode::OneShot) {
    auto const d = compute_delta(cv, w);
    Vector<double> adjusted = cv.u();
    for (Index i = 0; i < cv.n_inputs; ++i) {
      double const den = w.incoming_abs_sum(i);
      // An input whose sources are all absent keeps its crisp encoding.
      if (cv.active(i) && den != 0.0 && d.du(i) != 0.0) { adjusted(i) = act(cv.values(i) + d.du(i) / den); }
    }
    cv.u() = adjusted;
  }
  rr.trajectory.push_back(cv);

  Matrix<double> flat;
  if (cfg.engine == EngineKind::Classic) { flat = flat_matrix(w); }

  for (int it = 0; it < cfg.max_iterations; ++it) {
    ConceptVector<double> next;
    if (cfg.engine == EngineKind::Afcm) {
      next = afcm_step(cv, w, act, cfg.input_mode == InputMode::PerStep).first;
    } else {
      next = classic_step(cv, flat, act);
      // Inputs stay exogenous; in per-step mode only those with incoming edges move.
      for (Index i = 0; i < cv.n_inputs; ++i) {
        bool const moves = cfg.input_mode == InputMode::PerStep && w.incoming_abs_sum(i) != 0.0;
        if (!moves) { next.values(i) = cv.values(i); }
      }
    }
    double const change = (next.values - cv.values).lpNorm<Eigen::Infinity>();
    rr.trajectory.push_back(next);
    ++rr.iterations;
    cv = std::move(next);
    if (change < cfg.epsilon) {
      rr.converged = true;
      break;
    }
  }
  return rr;
}

Decision classify(RunRecord const &rr, CaseConfig const &cfg)
{
  auto const y = rr.final().y();
  Decision d;
  d.raw_outputs.assign(y.data(), y.data() + y.size());

  if (cfg.output_mode == OutputMode::Single) {
    if (y.size() != 1) { throw DimensionError("single-output case but the run has " + std::to_string(y.size()) + " outputs"); }
    double const lo = cfg.activation.lo();
    double const hi = cfg.activation.hi();
    double p = y(0);
    if (std::isfinite(lo) && std::isfinite(hi)) { p = (y(0) - lo) / (hi - lo); }
    d.score = std::clamp(p, 0.0, 1.0);
    d.cls = d.score >= cfg.threshold ? DecisionClass::Diseased : DecisionClass::Healthy;
    return d;
  }

  if (y.size() != 2) { throw DimensionError("two-class case but the run has " + std::to_string(y.size()) + " outputs"); }
  Vector<double> const p = softmax(Vector<double>(y));
  double const healthy = p(0);
  double const diseased = p(1);
  d.score = diseased;
  bool const sick = diseased > healthy || (diseased == healthy && cfg.ties_diseased);
  d.cls = sick ? DecisionClass::Diseased : DecisionClass::Healthy;
  return d;
}

std::vector<Contribution> ContributionReport::top(std::size_t n) const
{
  auto sorted = entries;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](auto const &a, auto const &b) { return std::abs(a.value) > std::abs(b.value); });
  if (sorted.size() > n) { sorted.resize(n); }
  return sorted;
}

ContributionReport contributions(RunRecord const &rr, WeightMatrices<double> const &w)
{
  auto const &cv = rr.final();
  check_dimensions(cv, w);
  auto const &layout = w.layout;
  Vector<double> const v = cv.masked();
  auto const nu = layout.n_inputs();
  auto const nx = layout.n_states();
  Vector<double> const u = v.segment(0, nu);
  Vector<double> const x = v.segment(nu, nx);

  // (output column, sign) pairs; two-class reports diseased minus healthy.
  std::vector<std::pair<Index, double>> targets;
  if (layout.n_outputs() == 1) {
    targets = {{0, 1.0}};
  } else if (layout.n_outputs() == 2) {
    Index healthy = 0;
    Index diseased = 1;
    if (layout.outputs[0] == kDiseasedOutput) { std::swap(healthy, diseased); }
    targets = {{healthy, -1.0}, {diseased, 1.0}};
  }

  Vector<double> perInput = Vector<double>::Zero(nu);
  Vector<double> perState = Vector<double>::Zero(nx);
  ContributionReport report;

  for (auto const &[o, sign] : targets) {
    double const den = w.incoming_abs_sum(nu + nx + o);
    if (den == 0.0) { continue; }
    perInput += sign * w.io.col(o).cwiseProduct(u) / den;
    for (Index s = 0; s < nx; ++s) {
      double const xs = x(s);
      double const term =
        sign * (w.so(s, o) * xs + w.so_positive(s, o) * std::max(xs, 0.0) + w.so_negative(s, o) * std::max(-xs, 0.0)) / den;
      if (term == 0.0) { continue; }
      Vector<double> const fromInputs = w.is.col(s).cwiseProduct(u);
      Vector<double> const fromStates = w.ss.col(s).cwiseProduct(x);
      double const drive = fromInputs.sum() + fromStates.sum();
      if (drive == 0.0) {
        perState(s) += term;
        continue;
      }
      perInput += term * fromInputs / drive;
      perState += term * fromStates / drive;
    }
  }

  for (Index i = 0; i < nu; ++i) { report.entries.push_back({layout.inputs[static_cast<std::size_t>(i)], perInput(i)}); }
  for (Index s = 0; s < nx; ++s) {
    if (perState(s) != 0.0) { report.entries.push_back({layout.states[static_cast<std::size_t>(s)], perState(s)}); }
  }
  for (auto const &[o, sign] : targets) {
    double const den = w.incoming_abs_sum(nu + nx + o);
    if (den == 0.0) { continue; }
    double dy = w.io.col(o).dot(u) + w.so.col(o).dot(x) + w.so_positive.col(o).dot(x.cwiseMax(0.0)) +
                w.so_negative.col(o).dot((-x).cwiseMax(0.0));
    report.total += sign * dy / den;
  }
  return report;
}

} // namespace afcm
