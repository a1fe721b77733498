#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "foilgen/errors.hpp"
#include "foilgen/nn.hpp"
#include "foilgen/rng.hpp"

using namespace foilgen;
using namespace foilgen::nn;

namespace {

MlpModel random_model(const std::vector<int>& dims, Activation out_act, std::uint64_t seed) {
    rng::SplitMix64 gen(seed);
    return init_model(dims, out_act, gen);
}

std::vector<double> random_vector(int n, rng::SplitMix64& gen) {
    std::vector<double> v(n);
    for (double& x : v) x = gen.next_uniform(-1.0, 1.0);
    return v;
}

// Scalar objective used by the finite-difference checks: a fixed random
// linear functional of the network output.
double probe_loss(const MlpModel& m, std::span<const double> input,
                  const std::vector<double>& probe) {
    const std::vector<double> out = forward(m, input);
    double loss = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) loss += probe[i] * out[i];
    return loss;
}

double relative_error(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-8});
    return std::abs(a - b) / scale;
}

}  // namespace

TEST_CASE("forward: identity weights pass the input through") {
    MlpModel m;
    m.layer_dims = {3, 3};
    m.weights.emplace_back(3, 3);
    for (int i = 0; i < 3; ++i) m.weights[0].at(i, i) = 1.0;
    m.biases.push_back({0.0, 0.0, 0.0});
    m.output_activation = Activation::identity;

    const std::vector<double> in = {0.5, -2.0, 3.25};
    const std::vector<double> out = forward(m, in);
    CHECK(out == in);
}

TEST_CASE("forward: zero weights with bias reach sigmoid of the bias") {
    MlpModel m;
    m.layer_dims = {4, 2};
    m.weights.emplace_back(2, 4);
    m.biases.push_back({1.5, -0.5});
    m.output_activation = Activation::sigmoid;

    const std::vector<double> out = forward(m, std::vector<double>{9.0, 9.0, 9.0, 9.0});
    CHECK(out[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.5))).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(1.0 / (1.0 + std::exp(0.5))).epsilon(1e-15));
}

TEST_CASE("forward matches an independent dense-math oracle") {
    const MlpModel m = random_model({5, 7, 3}, Activation::identity, 77);
    rng::SplitMix64 gen(78);
    const std::vector<double> in = random_vector(5, gen);

    // straightforward reimplementation: affine, relu, affine
    std::vector<double> h(7, 0.0);
    for (int r = 0; r < 7; ++r) {
        double z = m.biases[0][r];
        for (int c = 0; c < 5; ++c) z += m.weights[0].at(r, c) * in[c];
        h[r] = z > 0.0 ? z : 0.0;
    }
    std::vector<double> expect(3, 0.0);
    for (int r = 0; r < 3; ++r) {
        double z = m.biases[1][r];
        for (int c = 0; c < 7; ++c) z += m.weights[1].at(r, c) * h[c];
        expect[r] = z;
    }

    const std::vector<double> out = forward(m, in);
    for (int r = 0; r < 3; ++r) CHECK(out[r] == doctest::Approx(expect[r]).epsilon(1e-12));
}

TEST_CASE("forward rejects inputs of the wrong length") {
    const MlpModel m = random_model({5, 3}, Activation::identity, 1);
    CHECK_THROWS_AS(forward(m, std::vector<double>{1.0, 2.0}), ShapeError);
}

TEST_CASE("backward: zero output gradient produces zero everywhere") {
    const MlpModel m = random_model({4, 6, 2}, Activation::sigmoid, 5);
    rng::SplitMix64 gen(6);
    ForwardCache cache;
    forward(m, random_vector(4, gen), &cache);
    const Gradients g = backward(m, cache, std::vector<double>{0.0, 0.0});
    for (const Matrix& w : g.weights) {
        for (double v : w.data) CHECK(v == 0.0);
    }
    for (const auto& b : g.biases) {
        for (double v : b) CHECK(v == 0.0);
    }
    for (double v : g.input) CHECK(v == 0.0);
}

TEST_CASE("backward: single linear layer has closed-form gradients") {
    const MlpModel m = random_model({3, 2}, Activation::identity, 9);
    rng::SplitMix64 gen(10);
    const std::vector<double> in = random_vector(3, gen);
    const std::vector<double> og = {0.7, -1.3};

    ForwardCache cache;
    forward(m, in, &cache);
    const Gradients g = backward(m, cache, og);

    for (int r = 0; r < 2; ++r) {
        CHECK(g.biases[0][r] == og[r]);
        for (int c = 0; c < 3; ++c) {
            CHECK(g.weights[0].at(r, c) == doctest::Approx(og[r] * in[c]).epsilon(1e-15));
        }
    }
    for (int c = 0; c < 3; ++c) {
        const double expect = og[0] * m.weights[0].at(0, c) + og[1] * m.weights[0].at(1, c);
        CHECK(g.input[c] == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("backward matches central finite differences on every parameter") {
    struct Case {
        std::vector<int> dims;
        Activation act;
    };
    const std::vector<Case> cases = {{{5, 7, 4, 2}, Activation::sigmoid},
                                     {{6, 8, 3}, Activation::identity},
                                     {{3, 5, 1}, Activation::sigmoid}};
    const double h = 1e-6;

    for (std::size_t ci = 0; ci < cases.size(); ++ci) {
        MlpModel m = random_model(cases[ci].dims, cases[ci].act, 100 + ci);
        rng::SplitMix64 gen(200 + ci);
        const std::vector<double> in = random_vector(cases[ci].dims.front(), gen);
        std::vector<double> probe(cases[ci].dims.back());
        for (double& p : probe) p = gen.next_uniform(-1.0, 1.0);

        ForwardCache cache;
        forward(m, in, &cache);
        const Gradients g = backward(m, cache, probe);

        for (std::size_t layer = 0; layer < m.layer_count(); ++layer) {
            for (std::size_t k = 0; k < m.weights[layer].data.size(); ++k) {
                const double orig = m.weights[layer].data[k];
                m.weights[layer].data[k] = orig + h;
                const double up = probe_loss(m, in, probe);
                m.weights[layer].data[k] = orig - h;
                const double down = probe_loss(m, in, probe);
                m.weights[layer].data[k] = orig;
                CHECK(relative_error(g.weights[layer].data[k], (up - down) / (2 * h)) < 1e-5);
            }
            for (std::size_t k = 0; k < m.biases[layer].size(); ++k) {
                const double orig = m.biases[layer][k];
                m.biases[layer][k] = orig + h;
                const double up = probe_loss(m, in, probe);
                m.biases[layer][k] = orig - h;
                const double down = probe_loss(m, in, probe);
                m.biases[layer][k] = orig;
                CHECK(relative_error(g.biases[layer][k], (up - down) / (2 * h)) < 1e-5);
            }
        }

        // and with respect to the input
        std::vector<double> in_mut = in;
        for (std::size_t k = 0; k < in_mut.size(); ++k) {
            const double orig = in_mut[k];
            in_mut[k] = orig + h;
            const double up = probe_loss(m, in_mut, probe);
            in_mut[k] = orig - h;
            const double down = probe_loss(m, in_mut, probe);
            in_mut[k] = orig;
            CHECK(relative_error(g.input[k], (up - down) / (2 * h)) < 1e-5);
        }
    }
}

TEST_CASE("binary cross-entropy values and clamping") {
    const BceResult mid = bce_loss(0.5, 1.0);
    CHECK(mid.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    const BceResult good = bce_loss(1.0 - 1e-7, 1.0);
    CHECK(good.loss == doctest::Approx(1e-7).epsilon(1e-2));

    // out-of-range probabilities clamp instead of exploding
    const BceResult clamped = bce_loss(0.0, 1.0);
    CHECK(clamped.loss == doctest::Approx(-std::log(1e-7)).epsilon(1e-12));
    CHECK(std::isfinite(clamped.dloss_dp));
    // 1 - (1 - 1e-7) is not exactly 1e-7 in binary64, so allow the
    // cancellation error of the complement path.
    const BceResult clamped1 = bce_loss(1.0, 0.0);
    CHECK(clamped1.loss == doctest::Approx(-std::log(1e-7)).epsilon(1e-9));
}

TEST_CASE("binary cross-entropy gradient matches finite differences") {
    rng::SplitMix64 gen(55);
    const double h = 1e-7;
    for (int trial = 0; trial < 50; ++trial) {
        const double p = gen.next_uniform(0.01, 0.99);
        const double t = (trial % 2 == 0) ? 1.0 : 0.0;
        const BceResult r = bce_loss(p, t);
        const double fd = (bce_loss(p + h, t).loss - bce_loss(p - h, t).loss) / (2 * h);
        CHECK(relative_error(r.dloss_dp, fd) < 1e-6);
    }
}

TEST_CASE("adam: first step moves by about the learning rate") {
    MlpModel m;
    m.layer_dims = {1, 1};
    m.weights.emplace_back(1, 1);
    m.weights[0].at(0, 0) = 1.0;
    m.biases.push_back({0.0});

    AdamState state = AdamState::for_model(m, AdamConfig{.lr = 0.01});
    Gradients g = Gradients::zeros_like(m);
    g.weights[0].at(0, 0) = 0.3;
    adam_step(state, m, g);
    CHECK(state.step == 1);
    // bias-corrected first step: lr * g / (|g| + eps) = lr within ~1e-7
    CHECK(m.weights[0].at(0, 0) == doctest::Approx(1.0 - 0.01).epsilon(1e-6));
}

TEST_CASE("adam: zero gradients leave parameters untouched") {
    MlpModel m = random_model({3, 4, 2}, Activation::identity, 8);
    const MlpModel before = m;
    AdamState state = AdamState::for_model(m);
    const Gradients g = Gradients::zeros_like(m);
    for (int i = 0; i < 5; ++i) adam_step(state, m, g);
    CHECK(m == before);
    CHECK(state.step == 5);
}

TEST_CASE("adam drives a quadratic toward its minimum") {
    MlpModel m;
    m.layer_dims = {1, 1};
    m.weights.emplace_back(1, 1);
    m.weights[0].at(0, 0) = 1.0;
    m.biases.push_back({0.0});
    AdamState state = AdamState::for_model(m, AdamConfig{.lr = 0.1});

    double prev = 1.0;
    for (int i = 0; i < 10; ++i) {
        Gradients g = Gradients::zeros_like(m);
        g.weights[0].at(0, 0) = 2.0 * m.weights[0].at(0, 0);  // d/dw of w^2
        adam_step(state, m, g);
        const double w = m.weights[0].at(0, 0);
        CHECK(w < prev);
        prev = w;
    }
    CHECK(prev > 0.0);  // 10 steps of lr 0.1 cannot overshoot below zero
    CHECK(prev < 1.0);
}

TEST_CASE("adam refuses to write non-finite parameters") {
    MlpModel m = random_model({2, 2}, Activation::identity, 3);
    AdamState state = AdamState::for_model(m);
    Gradients g = Gradients::zeros_like(m);
    g.weights[0].at(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(adam_step(state, m, g), NumericError);
}

TEST_CASE("initialization is deterministic per seed") {
    const MlpModel a = random_model({44, 256, 1}, Activation::sigmoid, 42);
    const MlpModel b = random_model({44, 256, 1}, Activation::sigmoid, 42);
    const MlpModel c = random_model({44, 256, 1}, Activation::sigmoid, 43);
    CHECK(a == b);
    CHECK(a != c);
}

TEST_CASE("initialization scale follows the fan-in rule") {
    const MlpModel m = random_model({44, 256, 1}, Activation::sigmoid, 4242);
    // first layer: 256x44 = 11264 samples, expected std sqrt(2/44)
    double sum = 0.0, sumsq = 0.0;
    for (double w : m.weights[0].data) {
        sum += w;
        sumsq += w * w;
    }
    const double n = static_cast<double>(m.weights[0].data.size());
    const double mean = sum / n;
    const double std = std::sqrt(sumsq / n - mean * mean);
    const double expected = std::sqrt(2.0 / 44.0);
    CHECK(std > 0.8 * expected);
    CHECK(std < 1.2 * expected);
    // biases start at zero
    for (double b : m.biases[0]) CHECK(b == 0.0);
    // and every weight respects the uniform bound
    const double limit = std::sqrt(6.0 / 44.0);
    for (double w : m.weights[0].data) CHECK(std::abs(w) <= limit);
}

TEST_CASE("init_model validates its dimensions") {
    rng::SplitMix64 gen(1);
    CHECK_THROWS_AS(init_model({5}, Activation::identity, gen), ShapeError);
    CHECK_THROWS_AS(init_model({5, 0, 3}, Activation::identity, gen), ShapeError);
}

TEST_CASE("parameter_count adds up weights and biases") {
    const MlpModel m = random_model({5, 7, 3}, Activation::identity, 2);
    CHECK(m.parameter_count() == 5 * 7 + 7 + 7 * 3 + 3);
}

TEST_CASE("gradient accumulation is a scaled elementwise sum") {
    const MlpModel m = random_model({3, 4, 2}, Activation::identity, 60);
    rng::SplitMix64 gen(61);

    ForwardCache c1, c2;
    forward(m, random_vector(3, gen), &c1);
    forward(m, random_vector(3, gen), &c2);
    const Gradients g1 = backward(m, c1, std::vector<double>{1.0, 0.5});
    const Gradients g2 = backward(m, c2, std::vector<double>{-0.25, 2.0});

    Gradients acc = Gradients::zeros_like(m);
    acc.accumulate(g1, 0.5);
    acc.accumulate(g2, 0.5);
    for (std::size_t layer = 0; layer < m.layer_count(); ++layer) {
        for (std::size_t k = 0; k < acc.weights[layer].data.size(); ++k) {
            const double expect =
                0.5 * g1.weights[layer].data[k] + 0.5 * g2.weights[layer].data[k];
            CHECK(acc.weights[layer].data[k] == doctest::Approx(expect).epsilon(1e-15));
        }
    }
}
