#pragma once

#include "afcm/error.hpp"
#include "afcm/model.hpp"

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

namespace afcm {

template <typename Scalar> using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
using Index = Eigen::Index;

/// Concept ordering shared by weight matrices and concept vectors: [inputs; states; outputs].
struct Layout
{
  std::vector<std::string> inputs;
  std::vector<std::string> states;
  std::vector<std::string> outputs;

  [[nodiscard]] Index n_inputs() const { return static_cast<Index>(inputs.size()); }
  [[nodiscard]] Index n_states() const { return static_cast<Index>(states.size()); }
  [[nodiscard]] Index n_outputs() const { return static_cast<Index>(outputs.size()); }
  [[nodiscard]] Index size() const { return n_inputs() + n_states() + n_outputs(); }

  /// Position in the concatenated ordering, or nullopt.
  [[nodiscard]] std::optional<Index> flat_index(std::string_view id) const;
  [[nodiscard]] std::string const &id_at(Index flat) const;

  static Layout of(FcmModel const &model);
  bool operator==(Layout const &) const = default;
};

/// Numeric weight blocks partitioned by (source kind, target kind). Rows index the
/// source concept and columns the target, so deltas read `block.transpose() * source`.
template <typename Scalar> struct WeightMatrices
{
  Layout layout;
  Matrix<Scalar> ii; ///< input -> input
  Matrix<Scalar> is; ///< input -> state
  Matrix<Scalar> ss; ///< state -> state
  Matrix<Scalar> io; ///< input -> output
  Matrix<Scalar> so; ///< state -> output, ungated
  Matrix<Scalar> so_positive; ///< |w| where the edge fires only for positive sources
  Matrix<Scalar> so_negative; ///< |w| where the edge fires only for negative sources
  /// Sum of |w| over all incoming edges, indexed like `layout`.
  Vector<Scalar> incoming_abs_sum;

  template <typename Other> [[nodiscard]] WeightMatrices<Other> cast() const
  {
    return {layout,
            ii.template cast<Other>(),
            is.template cast<Other>(),
            ss.template cast<Other>(),
            io.template cast<Other>(),
            so.template cast<Other>(),
            so_positive.template cast<Other>(),
            so_negative.template cast<Other>(),
            incoming_abs_sum.template cast<Other>()};
  }

  [[nodiscard]] bool has_gates() const { return !so_positive.isZero(0) || !so_negative.isZero(0); }
};

/// Replaces every linguistic weight by its number and partitions the result.
template <typename Scalar = double> WeightMatrices<Scalar> defuzzify_weights(FcmModel const &model)
{
  WeightMatrices<Scalar> w;
  w.layout = Layout::of(model);
  auto const nu = w.layout.n_inputs();
  auto const nx = w.layout.n_states();
  auto const ny = w.layout.n_outputs();
  w.ii = Matrix<Scalar>::Zero(nu, nu);
  w.is = Matrix<Scalar>::Zero(nu, nx);
  w.ss = Matrix<Scalar>::Zero(nx, nx);
  w.io = Matrix<Scalar>::Zero(nu, ny);
  w.so = Matrix<Scalar>::Zero(nx, ny);
  w.so_positive = Matrix<Scalar>::Zero(nx, ny);
  w.so_negative = Matrix<Scalar>::Zero(nx, ny);
  w.incoming_abs_sum = Vector<Scalar>::Zero(w.layout.size());

  for (auto const &e : model.edges) {
    auto const src = w.layout.flat_index(e.source);
    auto const dst = w.layout.flat_index(e.target);
    if (!src || !dst) { throw ValidationError("edge " + e.source + "->" + e.target + " names an unknown concept"); }
    auto const value = static_cast<Scalar>(numeric_weight(e, model.scale));
    Index const s = *src;
    Index const t = *dst;
    bool const fromInput = s < nu;
    bool const fromState = !fromInput && s < nu + nx;
    bool const toInput = t < nu;
    bool const toState = !toInput && t < nu + nx;
    bool const toOutput = t >= nu + nx;

    if (fromInput && toInput) {
      w.ii(s, t) = value;
    } else if (fromInput && toState) {
      w.is(s, t - nu) = value;
    } else if (fromInput && toOutput) {
      w.io(s, t - nu - nx) = value;
    } else if (fromState && toState) {
      w.ss(s - nu, t - nu) = value;
    } else if (fromState && toOutput) {
      auto const r = s - nu;
      auto const c = t - nu - nx;
      switch (e.gate) {
      case Gate::Always: w.so(r, c) = value; break;
      case Gate::PositiveSource: w.so_positive(r, c) = std::abs(value); break;
      case Gate::NegativeSource: w.so_negative(r, c) = std::abs(value); break;
      }
    } else {
      throw ValidationError("illegal edge kind " + e.source + "->" + e.target);
    }
    w.incoming_abs_sum(t) += std::abs(value);
  }
  return w;
}

/// Assembles the unpartitioned n x n matrix used by the classic update. Gated edges
/// have no classic meaning and are rejected.
template <typename Scalar> Matrix<Scalar> flat_matrix(WeightMatrices<Scalar> const &w)
{
  if (w.has_gates()) { throw ValidationError("classic update cannot use sign-gated edges"); }
  auto const nu = w.layout.n_inputs();
  auto const nx = w.layout.n_states();
  auto const ny = w.layout.n_outputs();
  Matrix<Scalar> flat = Matrix<Scalar>::Zero(w.layout.size(), w.layout.size());
  flat.block(0, 0, nu, nu) = w.ii;
  flat.block(0, nu, nu, nx) = w.is;
  flat.block(0, nu + nx, nu, ny) = w.io;
  flat.block(nu, nu, nx, nx) = w.ss;
  flat.block(nu, nu + nx, nx, ny) = w.so;
  return flat;
}

} // namespace afcm
