#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>

#include "gradcheck_util.hpp"
#include "ssc/crnn.hpp"
#include "ssc/loss.hpp"

using namespace ssc::nn;
using ssc::Rng;
using testutil::check_layer_gradients;

namespace {

Tensor<double> random_tensor(std::vector<int> shape, Rng& rng, double lo = -1.0,
                             double hi = 1.0) {
  Tensor<double> t(std::move(shape));
  for (double& v : t.values) v = rng.uniform(lo, hi);
  return t;
}

/// Keeps |x| away from relu/pool kinks so finite differences stay valid.
Tensor<double> random_tensor_off_kinks(std::vector<int> shape, Rng& rng) {
  Tensor<double> t(std::move(shape));
  for (double& v : t.values) {
    const double magnitude = rng.uniform(0.1, 1.0);
    v = rng.uniform() < 0.5 ? -magnitude : magnitude;
  }
  return t;
}

}  // namespace

TEST_CASE("conv2d gradients match central finite differences") {
  Rng rng(101);
  Conv2d<double> conv("c", 3, 1, 2, 3);
  for (Param<double>* p : conv.params()) {
    for (double& v : p->value.values) v = rng.uniform(-0.7, 0.7);
  }
  const auto result = check_layer_gradients(conv, random_tensor({5, 6, 2}, rng), rng);
  CHECK(result.checked > 0);
  CHECK(result.max_rel_err < 1e-5);
}

TEST_CASE("maxpool2d gradients match central finite differences") {
  Rng rng(102);
  MaxPool2d<double> pool("p", 2, 2);
  const auto result = check_layer_gradients(pool, random_tensor_off_kinks({5, 6, 3}, rng), rng);
  CHECK(result.checked > 0);
  CHECK(result.max_rel_err < 1e-5);
}

TEST_CASE("relu gradients match central finite differences") {
  Rng rng(103);
  Relu<double> relu("r");
  const auto result = check_layer_gradients(relu, random_tensor_off_kinks({4, 4, 2}, rng), rng);
  CHECK(result.checked > 0);
  CHECK(result.max_rel_err < 1e-5);
}

TEST_CASE("bigru gradients match central finite differences") {
  Rng rng(104);
  BiGru<double> gru("g", 2, 2);
  Rng seed(105);
  gru.init(seed);
  const auto result = check_layer_gradients(gru, random_tensor({3, 2}, rng), rng);
  CHECK(result.checked > 0);
  CHECK(result.max_rel_err < 1e-5);
}

TEST_CASE("dense gradients match central finite differences") {
  Rng rng(106);
  Dense<double> dense("d", 7, 4);
  Rng seed(107);
  dense.init(seed);
  const auto result = check_layer_gradients(dense, random_tensor({7}, rng), rng);
  CHECK(result.checked > 0);
  CHECK(result.max_rel_err < 1e-5);
}

TEST_CASE("map_to_sequence and temporal_mean gradients") {
  Rng rng(108);
  MapToSequence<double> seq("s");
  auto r1 = check_layer_gradients(seq, random_tensor({3, 4, 2}, rng), rng);
  CHECK(r1.max_rel_err < 1e-5);
  TemporalMean<double> mean("m");
  auto r2 = check_layer_gradients(mean, random_tensor({5, 3}, rng), rng);
  CHECK(r2.max_rel_err < 1e-5);
}

TEST_CASE("single dense layer gradient matches the analytic formula exactly") {
  // loss = sum(c . (W x + b)): dW = c x^T, db = c, dx = W^T c.
  Rng rng(109);
  Dense<double> dense("d", 3, 2);
  Rng seed(110);
  dense.init(seed);
  Tensor<double> x({3});
  x.values = {0.5, -1.25, 2.0};
  Tensor<double> c({2});
  c.values = {1.5, -0.5};

  for (Param<double>* p : dense.params()) p->value.zero_grad();
  dense.forward(x);
  const auto dx = dense.backward(c);

  const auto& w = dense.params()[0]->value;
  for (int o = 0; o < 2; ++o) {
    for (int i = 0; i < 3; ++i) {
      CHECK(dense.params()[0]->value.grad[o * 3 + i] == doctest::Approx(c.values[o] * x.values[i])
                                                            .epsilon(1e-15));
    }
    CHECK(dense.params()[1]->value.grad[o] == c.values[o]);
  }
  for (int i = 0; i < 3; ++i) {
    double expected = 0.0;
    for (int o = 0; o < 2; ++o) expected += w.values[o * 3 + i] * c.values[o];
    CHECK(dx.values[i] == doctest::Approx(expected).epsilon(1e-15));
  }
}

TEST_CASE("two runs with the same seed produce bitwise-identical gradients") {
  auto run = [](std::uint64_t seed) {
    Network<float> net = build_network<float>(NetworkKind::kCrnn, 5);
    Rng init(seed);
    net.init_params(init);
    Rng data(seed + 1);
    Tensor<float> x({60, 60, 3});
    for (float& v : x.values) v = static_cast<float>(data.uniform(-1.0, 1.0));
    std::vector<float> target(5, 0.0f);
    target[2] = 1.0f;
    net.zero_grad();
    const auto logits = net.forward(x);
    const auto ce = softmax_cross_entropy(logits.values, target);
    Tensor<float> dlogits({5});
    const auto grad = softmax_cross_entropy_grad(ce.probs, target);
    for (int i = 0; i < 5; ++i) dlogits.at(i) = grad[i];
    net.backward(dlogits);
    std::vector<float> flat;
    for (Param<float>* p : net.params()) {
      flat.insert(flat.end(), p->value.grad.begin(), p->value.grad.end());
    }
    return flat;
  };
  const auto a = run(77);
  const auto b = run(77);
  REQUIRE(a.size() == b.size());
  CHECK(std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0);
}

TEST_CASE("backward before forward is a state error") {
  Network<float> net = build_network<float>(NetworkKind::kCrnn, 5);
  Tensor<float> dlogits({5});
  CHECK_THROWS_AS(net.backward(dlogits), ssc::Error);
}
