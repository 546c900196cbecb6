#include "afcm/activation.hpp"

#include <doctest.h>

#include <cmath>

using namespace afcm;

TEST_CASE("sigmoid reference values")
{
  CHECK(sigmoid(0.0) == 0.5);
  CHECK(sigmoid(1.0) == doctest::Approx(0.7310585786).epsilon(1e-10));
  CHECK(sigmoid(2.0) == doctest::Approx(0.8807970780).epsilon(1e-10));
  CHECK(sigmoid(-1.0) == doctest::Approx(1.0 - sigmoid(1.0)).epsilon(1e-15));
}

TEST_CASE("sigmoid_n maps onto its asymptotes")
{
  SigmoidNParams<double> const p{};
  CHECK(sigmoid_n(0.0, p) == 0.0);
  CHECK(sigmoid_n(1.0, p) == doctest::Approx(2.0 * 0.7310585786 - 1.0).epsilon(1e-10));
  SigmoidNParams<double> const shifted{2.0, 6.0, 0.5, 3.0};
  CHECK(sigmoid_n(3.0, shifted) == 4.0);
  CHECK(sigmoid_n(-1e6, shifted) == 2.0);
  CHECK(sigmoid_n(1e6, shifted) == 6.0);
}

TEST_CASE("sigmoid_n with unit bounds is the sigmoid")
{
  SigmoidNParams<double> const unit{0.0, 1.0, 1.0, 0.0};
  for (double x = -20.0; x <= 20.0; x += 0.37) { CHECK(std::abs(sigmoid_n(x, unit) - sigmoid(x)) <= 1e-15); }
}

TEST_CASE("tanh is odd and matches its closed form")
{
  CHECK(tanh_act(0.0) == 0.0);
  CHECK(tanh_act(1.0) == doctest::Approx(0.7615941560).epsilon(1e-10));
  for (double x = 0.1; x < 5.0; x += 0.3) { CHECK(tanh_act(-x) == -tanh_act(x)); }
}

TEST_CASE("softmax")
{
  Eigen::Vector2d const tie(0.0, 0.0);
  auto const p = softmax(tie);
  CHECK(p(0) == 0.5);
  CHECK(p(1) == 0.5);

  Eigen::Vector2d const v(0.0, std::log(2.0));
  CHECK(softmax(v)(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  Eigen::Vector3d const big(1000.0, 1001.0, 999.0);
  auto const q = softmax(big);
  CHECK(q.allFinite());
  CHECK(q.sum() == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::VectorXd const empty(0);
  CHECK_THROWS_AS(softmax(empty), ValidationError);
}

TEST_CASE("activation spec ranges")
{
  CHECK(ActivationSpec::make_sigmoid().lo() == 0.0);
  CHECK(ActivationSpec::make_sigmoid().hi() == 1.0);
  CHECK(ActivationSpec::make_tanh().lo() == -1.0);
  auto const n = ActivationSpec::make_sigmoid_n({-2.0, 3.0, 1.0, 0.0});
  CHECK(n.lo() == -2.0);
  CHECK(n.hi() == 3.0);
  CHECK(std::isinf(ActivationSpec::make_identity().hi()));
  CHECK(ActivationSpec::make_identity()(3.5) == 3.5);
  CHECK_THROWS_AS(ActivationSpec::make_sigmoid_n({1.0, 1.0, 1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(ActivationSpec::make_sigmoid_n({0.0, 1.0, 0.0, 0.0}), ValidationError);
}

TEST_CASE("activations are generic in the scalar type")
{
  CHECK(sigmoid(1.0f) == doctest::Approx(0.7310586f));
  CHECK(static_cast<double>(sigmoid(1.0L)) == doctest::Approx(sigmoid(1.0)));
  CHECK(ActivationSpec::make_tanh()(0.5f) == doctest::Approx(std::tanh(0.5f)));
}

TEST_CASE("monotone and bounded below saturation")
{
  for (auto const &act : {ActivationSpec::make_sigmoid(), ActivationSpec::make_sigmoid_n(), ActivationSpec::make_tanh()}) {
    double prev = act(-15.0);
    for (double x = -14.9; x <= 15.0; x += 0.1) {
      double const f = act(x);
      CHECK(f > prev);
      CHECK(f > act.lo());
      CHECK(f < act.hi());
      prev = f;
    }
    CHECK(act(1e300) <= act.hi());
    CHECK(act(-1e300) >= act.lo());
  }
}
