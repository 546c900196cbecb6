// Reference implementations used to check the engine. None of these call into the
// engine's numeric code.
#pragma once

#include "afcm/model.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

enum class Act
{
  Sigmoid,
  SigmoidN,
  Tanh,
  Identity
};

double activate(Act act, double x);

struct DenseEdge
{
  int source = 0;
  int target = 0;
  double weight = 0.0;
  afcm::Gate gate = afcm::Gate::Always;
};

/// Concepts 0..n_inputs-1 are inputs, then states, then outputs.
struct DenseModel
{
  int n_inputs = 0;
  int n_states = 0;
  int n_outputs = 0;
  std::vector<DenseEdge> edges;
  std::vector<bool> active;

  [[nodiscard]] int size() const { return n_inputs + n_states + n_outputs; }
  [[nodiscard]] std::string id(int i) const;
  /// Engine model with scale {0.2,...,1.0} so every weight resolves exactly as 1.0 * |w|.
  [[nodiscard]] afcm::FcmModel to_model() const;
};

/// At most `max_concepts` concepts with random legal edges and weights in [-1, 1].
DenseModel random_model(std::mt19937_64 &rng, int max_concepts);

/// Explicit loop over every target and every edge.
std::vector<double> step(DenseModel const &m, std::vector<double> const &v, Act act, bool update_inputs);

/// Binary metrics from raw counts.
struct Rates
{
  double accuracy, sensitivity, specificity, ppv, npv;
};
Rates rates(long tp, long fp, long fn, long tn);

} // namespace oracle
