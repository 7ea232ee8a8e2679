#include <cmath>

#include "doctest.h"
#include "rfec/baseline.hpp"
#include "rfec/rng.hpp"

using namespace rfec;

namespace {

struct McResult {
    double mean_iters;
    double se_iters;
    double mean_sent;
    double se_sent;
};

McResult tcp_mc(std::size_t K, double p, std::size_t trials, std::uint64_t seed) {
    double sum = 0, sum_sq = 0, sent = 0, sent_sq = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        BlockTrace trace = run_tcp_block(K, ChannelConfig::erasure(p, seed), substream(seed, t));
        REQUIRE(trace.terminated);
        const double iters = static_cast<double>(trace.iterations.size());
        const double total = static_cast<double>(trace.total_sent);
        sum += iters;
        sum_sq += iters * iters;
        sent += total;
        sent_sq += total * total;
    }
    const double n = static_cast<double>(trials);
    McResult r{};
    r.mean_iters = sum / n;
    r.se_iters = std::sqrt(((sum_sq - sum * sum / n) / (n - 1)) / n);
    r.mean_sent = sent / n;
    r.se_sent = std::sqrt(((sent_sq - sent * sent / n) / (n - 1)) / n);
    return r;
}

}  // namespace

TEST_CASE("tcp baseline: clean channel sends everything once") {
    BlockTrace trace = run_tcp_block(64, ChannelConfig::erasure(0.0, 1), 0);
    CHECK(trace.iterations.size() == 1);
    CHECK(trace.total_sent == 64);
    CHECK(trace.terminated);
    CHECK(trace.iterations.back().decoded);
}

TEST_CASE("tcp baseline: single packet loses a geometric number of rounds") {
    McResult r = tcp_mc(1, 0.5, 100000, 77);
    CHECK(std::abs(r.mean_iters - 2.0) < 3 * r.se_iters);
}

TEST_CASE("tcp baseline matches the independent-geometric-maximum closed form") {
    CHECK(tcp_expected_iterations(1, 0.5) == doctest::Approx(2.0));
    CHECK(tcp_expected_iterations(16, 0.0) == doctest::Approx(1.0));
    // K=256, p=0.3 needs about six rounds.
    CHECK(tcp_expected_iterations(256, 0.3) == doctest::Approx(5.5866).epsilon(1e-3));

    for (auto [K, p] : {std::pair<std::size_t, double>{16, 0.3}, {64, 0.45}}) {
        McResult r = tcp_mc(K, p, 40000, 0xC0FFEE + K);
        CHECK(std::abs(r.mean_iters - tcp_expected_iterations(K, p)) < 3 * r.se_iters);
    }
}

TEST_CASE("tcp baseline: mean total sent is K/(1-p)") {
    for (auto [K, p] : {std::pair<std::size_t, double>{32, 0.25}, {128, 0.5}}) {
        McResult r = tcp_mc(K, p, 40000, 0xABCD + K);
        CHECK(std::abs(r.mean_sent - static_cast<double>(K) / (1 - p)) < 3 * r.se_sent);
    }
}

TEST_CASE("tcp baseline: p=1 never terminates") {
    BlockTrace trace = run_tcp_block(4, ChannelConfig::erasure(1.0, 3), 0, 25);
    CHECK_FALSE(trace.terminated);
    CHECK(trace.iterations.size() == 25);
    CHECK(trace.total_sent == 100);
}

TEST_CASE("tcp baseline: argument validation") {
    CHECK_THROWS_AS(run_tcp_block(0, ChannelConfig::erasure(0.5, 1), 0), std::invalid_argument);
    CHECK_THROWS_AS(tcp_expected_iterations(4, 1.0), std::invalid_argument);
}
