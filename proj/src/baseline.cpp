#include "rfec/baseline.hpp"

#include <cmath>
#include <stdexcept>

namespace rfec {

BlockTrace run_tcp_block(std::size_t block_size, const ChannelConfig& cfg,
                         std::uint64_t stream_id, std::size_t max_iterations) {
    if (block_size == 0) {
        throw std::invalid_argument("run_tcp_block: block size must be >= 1");
    }
    if (cfg.mode != ChannelConfig::Mode::Erasure) {
        throw std::invalid_argument("run_tcp_block: baseline models an erasure channel");
    }
    BlockTrace trace;
    trace.block_size = block_size;

    std::vector<std::size_t> remaining(block_size);
    for (std::size_t k = 0; k < block_size; ++k) {
        remaining[k] = k;
    }
    std::uint64_t emission = 0;
    while (!remaining.empty() && trace.iterations.size() < max_iterations) {
        CycleOutcome outcome;
        outcome.sent_count = remaining.size();
        trace.total_sent += remaining.size();
        std::vector<std::size_t> still_missing;
        for (std::size_t k : remaining) {
            if (erase_draw(cfg, stream_id, emission, k)) {
                still_missing.push_back(k);
            }
        }
        remaining = std::move(still_missing);
        outcome.frs.packets = remaining;
        outcome.frs.cost = Weight(static_cast<long long>(remaining.size()));
        outcome.decoded = remaining.empty();
        trace.iterations.push_back(std::move(outcome));
        ++emission;
    }
    trace.terminated = remaining.empty();
    return trace;
}

double tcp_expected_iterations(std::size_t block_size, double p) {
    if (!(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("tcp_expected_iterations: requires 0 <= p < 1");
    }
    if (p == 0.0) {
        return 1.0;
    }
    // Pr(iterations > t) = 1 - (1 - p^t)^K, summed from t = 0.
    double sum = 0.0;
    double pt = 1.0;
    for (int t = 0;; ++t) {
        const double term = 1.0 - std::pow(1.0 - pt, static_cast<double>(block_size));
        sum += term;
        if (t > 0 && term < 1e-13) {
            break;
        }
        pt *= p;
    }
    return sum;
}

}  // namespace rfec
