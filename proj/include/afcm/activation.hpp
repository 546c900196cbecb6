#pragma once

#include "afcm/error.hpp"

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <string>

namespace afcm {

/// Generalised logistic curve with asymptotes `lower`/`upper`, slope and center.
template <typename Scalar> struct SigmoidNParams
{
  Scalar lower = Scalar(-1);
  Scalar upper = Scalar(1);
  Scalar slope = Scalar(1);
  Scalar center = Scalar(0);

  [[nodiscard]] bool valid() const { return upper > lower && slope > Scalar(0); }
  bool operator==(SigmoidNParams const &) const = default;
};

template <typename Scalar> Scalar sigmoid(Scalar x)
{
  using std::exp;
  return Scalar(1) / (Scalar(1) + exp(-x));
}

template <typename Scalar> Scalar sigmoid_n(Scalar x, SigmoidNParams<Scalar> const &p)
{
  return p.lower + (p.upper - p.lower) * sigmoid(p.slope * (x - p.center));
}

template <typename Scalar> Scalar tanh_act(Scalar x)
{
  using std::tanh;
  return tanh(x);
}

/// Shift-stable softmax. Throws on an empty vector.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> softmax(Eigen::MatrixBase<Derived> const &scores)
{
  using Scalar = typename Derived::Scalar;
  if (scores.size() == 0) { throw ValidationError("softmax of an empty vector"); }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e = (scores.array() - scores.maxCoeff()).exp().matrix();
  return e / e.sum();
}

enum class ActivationKind
{
  Sigmoid,
  SigmoidN,
  Tanh,
  Identity
};

/// Activation applied to updated concept values, plus the open range it maps into.
struct ActivationSpec
{
  ActivationKind kind = ActivationKind::SigmoidN;
  SigmoidNParams<double> params{};

  static ActivationSpec make_sigmoid() { return {ActivationKind::Sigmoid, {}}; }
  static ActivationSpec make_sigmoid_n(SigmoidNParams<double> p = {})
  {
    if (!p.valid()) { throw ValidationError("sigmoidN needs upper > lower and slope > 0"); }
    return {ActivationKind::SigmoidN, p};
  }
  static ActivationSpec make_tanh() { return {ActivationKind::Tanh, {}}; }
  static ActivationSpec make_identity() { return {ActivationKind::Identity, {}}; }

  [[nodiscard]] double lo() const
  {
    switch (kind) {
    case ActivationKind::Sigmoid: return 0.0;
    case ActivationKind::SigmoidN: return params.lower;
    case ActivationKind::Tanh: return -1.0;
    case ActivationKind::Identity: break;
    }
    return -std::numeric_limits<double>::infinity();
  }

  [[nodiscard]] double hi() const
  {
    switch (kind) {
    case ActivationKind::Sigmoid: return 1.0;
    case ActivationKind::SigmoidN: return params.upper;
    case ActivationKind::Tanh: return 1.0;
    case ActivationKind::Identity: break;
    }
    return std::numeric_limits<double>::infinity();
  }

  template <typename Scalar> Scalar operator()(Scalar x) const
  {
    switch (kind) {
    case ActivationKind::Sigmoid: return sigmoid(x);
    case ActivationKind::SigmoidN:
      return sigmoid_n(x, SigmoidNParams<Scalar>{Scalar(params.lower), Scalar(params.upper), Scalar(params.slope),
                                                 Scalar(params.center)});
    case ActivationKind::Tanh: return tanh_act(x);
    case ActivationKind::Identity: break;
    }
    return x;
  }

  [[nodiscard]] std::string name() const
  {
    switch (kind) {
    case ActivationKind::Sigmoid: return "sigmoid";
    case ActivationKind::SigmoidN: return "sigmoidN";
    case ActivationKind::Tanh: return "tanh";
    case ActivationKind::Identity: break;
    }
    return "identity";
  }

  bool operator==(ActivationSpec const &) const = default;
};

} // namespace afcm
