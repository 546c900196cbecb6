#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

double activate(Act act, double x)
{
  switch (act) {
  case Act::Sigmoid: return 1.0 / (1.0 + std::exp(-x));
  case Act::SigmoidN: return -1.0 + 2.0 / (1.0 + std::exp(-x));
  case Act::Tanh: return std::tanh(x);
  case Act::Identity: break;
  }
  return x;
}

std::string DenseModel::id(int i) const
{
  if (i < n_inputs) { return "U" + std::to_string(i); }
  if (i < n_inputs + n_states) { return "X" + std::to_string(i - n_inputs); }
  return "Y" + std::to_string(i - n_inputs - n_states);
}

afcm::FcmModel DenseModel::to_model() const
{
  afcm::FcmModel m;
  m.meta = {"oracle", "0"};
  m.scale.values = {0.2, 0.4, 0.6, 0.8, 1.0};
  for (int i = 0; i < size(); ++i) {
    afcm::ConceptSpec c;
    c.id = id(i);
    c.label = c.id;
    c.active = active[static_cast<std::size_t>(i)];
    if (i < n_inputs) {
      c.kind = afcm::ConceptKind::Input;
      c.domain = {{"no", 0.0}, {"yes", 1.0}};
    } else {
      c.kind = i < n_inputs + n_states ? afcm::ConceptKind::State : afcm::ConceptKind::Output;
    }
    m.concepts.push_back(std::move(c));
  }
  for (auto const &e : edges) {
    afcm::Edge edge;
    edge.source = id(e.source);
    edge.target = id(e.target);
    edge.weight = {afcm::Magnitude::VeryStrong, e.weight < 0.0};
    edge.multiplier = std::abs(e.weight);
    edge.gate = e.gate;
    m.edges.push_back(std::move(edge));
  }
  return m;
}

DenseModel random_model(std::mt19937_64 &rng, int max_concepts)
{
  std::uniform_int_distribution<int> total(3, max_concepts);
  std::uniform_real_distribution<double> weight(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  DenseModel m;
  int const n = total(rng);
  m.n_inputs = std::uniform_int_distribution<int>(1, n - 2)(rng);
  m.n_states = std::uniform_int_distribution<int>(0, n - 1 - m.n_inputs)(rng);
  m.n_outputs = n - m.n_inputs - m.n_states;
  m.active.assign(static_cast<std::size_t>(n), true);
  for (int i = 0; i < n; ++i) {
    if (unit(rng) < 0.1) { m.active[static_cast<std::size_t>(i)] = false; }
  }

  auto is_input = [&](int i) { return i < m.n_inputs; };
  auto is_state = [&](int i) { return i >= m.n_inputs && i < m.n_inputs + m.n_states; };
  auto is_output = [&](int i) { return i >= m.n_inputs + m.n_states; };
  double const density = unit(rng);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t || !m.active[static_cast<std::size_t>(s)] || !m.active[static_cast<std::size_t>(t)]) { continue; }
      bool const legal = is_input(s) || (is_state(s) && !is_input(t));
      if (!legal || unit(rng) > density) { continue; }
      auto nonzero = [&] {
        double const w = weight(rng);
        return w == 0.0 ? 0.5 : w;
      };
      double const w = nonzero();
      if (is_state(s) && is_output(t) && unit(rng) < 0.5) {
        m.edges.push_back({s, t, w, afcm::Gate::PositiveSource});
        m.edges.push_back({s, t, nonzero(), afcm::Gate::NegativeSource});
      } else {
        m.edges.push_back({s, t, w, afcm::Gate::Always});
      }
    }
  }
  return m;
}

std::vector<double> step(DenseModel const &m, std::vector<double> const &v, Act act, bool update_inputs)
{
  auto const n = static_cast<std::size_t>(m.size());
  std::vector<double> masked(n);
  for (std::size_t i = 0; i < n; ++i) { masked[i] = m.active[i] ? v[i] : 0.0; }

  std::vector<double> next = v;
  for (std::size_t t = 0; t < n; ++t) {
    if (!m.active[t]) {
      next[t] = 0.0;
      continue;
    }
    if (!update_inputs && static_cast<int>(t) < m.n_inputs) { continue; }
    double den = 0.0;
    double delta = 0.0;
    for (auto const &e : m.edges) {
      if (static_cast<std::size_t>(e.target) != t) { continue; }
      double const src = masked[static_cast<std::size_t>(e.source)];
      den += std::abs(e.weight);
      switch (e.gate) {
      case afcm::Gate::Always: delta += e.weight * src; break;
      case afcm::Gate::PositiveSource: delta += src > 0.0 ? std::abs(e.weight) * src : 0.0; break;
      case afcm::Gate::NegativeSource: delta += src < 0.0 ? std::abs(e.weight) * -src : 0.0; break;
      }
    }
    if (den == 0.0) { continue; }
    next[t] = activate(act, v[t] + delta / den);
  }
  return next;
}

Rates rates(long tp, long fp, long fn, long tn)
{
  auto const d = [](long a, long b) { return static_cast<double>(a) / static_cast<double>(b); };
  return {d(tp + tn, tp + fp + fn + tn), d(tp, tp + fn), d(tn, tn + fp), d(tp, tp + fp), d(tn, tn + fn)};
}

} // namespace oracle
