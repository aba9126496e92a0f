#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "culab/nn/adam.hpp"
#include "culab/nn/net.hpp"
#include "culab/nn/params.hpp"
#include "culab/rng.hpp"
#include "support/oracles.hpp"

using namespace culab;

namespace {

NetArch small_arch() {
    NetArch a;
    a.data_dim = 2;
    a.time_dim = 4;
    a.cond_dim = 3;
    a.hidden = {5, 4};
    return a;
}

DenoiseSample random_sample(const NetArch& a, Rng& rng) {
    DenoiseSample s;
    s.z.resize(static_cast<std::size_t>(a.data_dim));
    s.cond.resize(static_cast<std::size_t>(a.cond_dim));
    s.target.resize(static_cast<std::size_t>(a.data_dim));
    for (double& v : s.z) v = rng.normal();
    for (double& v : s.cond) v = rng.normal();
    for (double& v : s.target) v = rng.normal();
    s.t = rng.uniform_int(0, 50);
    return s;
}

}  // namespace

TEST_CASE("time_embed basics") {
    const auto e0 = time_embed(0, 4);
    REQUIRE(e0.size() == 4);
    CHECK(e0[0] == 0.0);
    CHECK(e0[1] == 0.0);
    CHECK(e0[2] == 1.0);
    CHECK(e0[3] == 1.0);

    for (int t : {1, 7, 50, 199}) {
        for (double v : time_embed(t, 4)) {
            CHECK(v >= -1.0);
            CHECK(v <= 1.0);
        }
    }

    CHECK_THROWS_AS(time_embed(3, 5), UsageError);
    CHECK_THROWS_AS(time_embed(3, 0), UsageError);
}

TEST_CASE("time_embed matches scalar recomputation") {
    const int dim = 8, half = 4;
    const auto e = time_embed(100, dim);
    for (int k = 0; k < half; ++k) {
        const double scale = std::exp(std::log(10000.0) * k / (half - 1));
        CHECK(std::abs(e[static_cast<std::size_t>(k)] - std::sin(100.0 / scale)) < 1e-12);
        CHECK(std::abs(e[static_cast<std::size_t>(half + k)] - std::cos(100.0 / scale)) < 1e-12);
    }
}

TEST_CASE("forward with zero parameters ignores the input") {
    const NetArch a = small_arch();
    DenoiserNet net(a, ParamVector(a.param_count(), 0.0));
    Rng rng(11);
    DenoiseSample s1 = random_sample(a, rng);
    DenoiseSample s2 = random_sample(a, rng);
    const auto y1 = net.forward(s1.z, s1.t, s1.cond);
    const auto y2 = net.forward(s2.z, s2.t, s2.cond);
    REQUIRE(y1.size() == 2);
    CHECK(y1 == y2);
    CHECK(y1[0] == 0.0);
}

TEST_CASE("forward is deterministic") {
    const NetArch a = small_arch();
    const DenoiserNet net = DenoiserNet::init_random(a, 42);
    Rng rng(3);
    const DenoiseSample s = random_sample(a, rng);
    const auto y1 = net.forward(s.z, s.t, s.cond);
    const auto y2 = net.forward(s.z, s.t, s.cond);
    CHECK(y1 == y2);  // bitwise
}

TEST_CASE("forward matches Eigen layer-by-layer oracle") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        NetArch a = small_arch();
        a.hidden = {rng.uniform_int(2, 8), rng.uniform_int(2, 8)};
        DenoiserNet net = DenoiserNet::init_random(a, 1000 + static_cast<std::uint64_t>(rep));
        const DenoiseSample s = random_sample(a, rng);

        std::vector<double> input;
        input.insert(input.end(), s.z.begin(), s.z.end());
        const auto te = time_embed(s.t, a.time_dim);
        input.insert(input.end(), te.begin(), te.end());
        input.insert(input.end(), s.cond.begin(), s.cond.end());

        const auto got = net.forward(s.z, s.t, s.cond);
        const auto want = oracles::mlp_forward(a, net.params(), input);
        REQUIRE(got.size() == want.size());
        for (std::size_t i = 0; i < got.size(); ++i)
            CHECK(std::abs(got[i] - want[i]) < 1e-12);
    }
}

TEST_CASE("loss is zero at the minimum and scales quadratically") {
    const NetArch a = small_arch();
    const DenoiserNet net = DenoiserNet::init_random(a, 5);
    Rng rng(8);
    std::vector<DenoiseSample> batch(3);
    for (auto& s : batch) s = random_sample(a, rng);

    for (auto& s : batch) s.target = net.forward(s.z, s.t, s.cond);
    auto [l0, g0] = net.loss_and_grad(batch);
    CHECK(l0 == 0.0);
    for (double g : g0) CHECK(g == 0.0);

    // doubling every residual quadruples the loss
    std::vector<DenoiseSample> b1 = batch, b2 = batch;
    Rng rng2(9);
    for (std::size_t i = 0; i < batch.size(); ++i) {
        for (std::size_t d = 0; d < 2; ++d) {
            const double r = rng2.normal();
            b1[i].target[d] += r;
            b2[i].target[d] += 2.0 * r;
        }
    }
    const double l1 = net.loss_and_grad(b1).first;
    const double l2 = net.loss_and_grad(b2).first;
    CHECK(l2 == Catch::Approx(4.0 * l1).epsilon(1e-12));
}

TEST_CASE("loss_and_grad rejects an empty batch") {
    const NetArch a = small_arch();
    const DenoiserNet net = DenoiserNet::init_random(a, 5);
    CHECK_THROWS_AS(net.loss_and_grad({}), UsageError);
}

TEST_CASE("gradient matches central finite differences") {
    Rng rng(21);
    double max_rel = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
        NetArch a = small_arch();
        a.hidden = {rng.uniform_int(3, 8), rng.uniform_int(3, 8)};
        DenoiserNet net = DenoiserNet::init_random(a, 300 + static_cast<std::uint64_t>(rep));
        std::vector<DenoiseSample> batch(4);
        for (auto& s : batch) s = random_sample(a, rng);
        const auto [loss, grad] = net.loss_and_grad(batch);
        (void)loss;

        auto loss_at = [&](const ParamVector& p) {
            return net.with_params(p).loss_and_grad(batch).first;
        };
        for (int probe = 0; probe < 20; ++probe) {
            const std::size_t i = static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(net.params().size()) - 1));
            const double fd = oracles::central_diff(loss_at, net.params(), i, 1e-5);
            max_rel = std::max(max_rel, oracles::rel_err(fd, grad[i]));
        }
    }
    CHECK(max_rel < 1e-4);
}

TEST_CASE("adam identity on zero gradients") {
    AdamState st = AdamState::init(3, {});
    const ParamVector p{1.0, -2.0, 0.5};
    const ParamVector g{0.0, 0.0, 0.0};
    auto [p2, st2] = adam_step(p, g, st);
    CHECK(p2 == p);
    CHECK(st2.step == 1);
}

TEST_CASE("adam first step moves by about lr against the gradient") {
    AdamConfig cfg;
    cfg.lr = 0.05;
    AdamState st = AdamState::init(1, cfg);
    auto [p2, st2] = adam_step({0.0}, {3.7}, st);
    (void)st2;
    CHECK(p2[0] < 0.0);
    CHECK(std::abs(std::abs(p2[0]) - cfg.lr) < cfg.lr * 1e-3);
}

TEST_CASE("adam minimizes x^2 and matches the scalar recurrence") {
    AdamConfig cfg;
    cfg.lr = 0.1;
    AdamState st = AdamState::init(1, cfg);
    oracles::ScalarAdam ref{cfg.lr};
    ParamVector p{1.0};
    double x_ref = 1.0;
    double prev = 1.0;
    bool monotone_after_warmup = true;
    for (int i = 0; i < 100; ++i) {
        auto [pn, stn] = adam_step(p, {2.0 * p[0]}, st);
        p = pn;
        st = stn;
        x_ref = ref.step(x_ref, 2.0 * x_ref);
        CHECK(std::abs(p[0] - x_ref) < 1e-12);
        if (i >= 10 && std::abs(p[0]) > std::abs(prev) + 1e-12) monotone_after_warmup = false;
        prev = p[0];
    }
    CHECK(monotone_after_warmup);
    CHECK(std::abs(p[0]) < 0.1);
}

TEST_CASE("adam rejects mismatched lengths") {
    AdamState st = AdamState::init(2, {});
    CHECK_THROWS_AS(adam_step({1.0}, {1.0, 2.0}, st), UsageError);
}

TEST_CASE("param_distance basics") {
    CHECK(param_distance({1.0, 2.0}, {1.0, 2.0}) == 0.0);
    CHECK(param_distance({3.0, 4.0}, {0.0, 0.0}) == 5.0);
    CHECK_THROWS_AS(param_distance({1.0}, {1.0, 2.0}), UsageError);
}

TEST_CASE("param_distance agrees with Kahan-summation oracle") {
    Rng rng(77);
    for (int rep = 0; rep < 20; ++rep) {
        ParamVector a(257), b(257);
        for (auto& v : a) v = 100.0 * rng.normal();
        for (auto& v : b) v = 100.0 * rng.normal();
        const double got = param_distance(a, b);
        const double want = oracles::kahan_distance(a, b);
        CHECK(oracles::rel_err(got, want) < 1e-12);
    }
}

TEST_CASE("param_distance triangle inequality on random triples") {
    Rng rng(78);
    for (int rep = 0; rep < 200; ++rep) {
        ParamVector a(16), b(16), c(16);
        for (auto& v : a) v = rng.normal();
        for (auto& v : b) v = rng.normal();
        for (auto& v : c) v = rng.normal();
        CHECK(param_distance(a, c) <= param_distance(a, b) + param_distance(b, c) + 1e-12);
    }
}
