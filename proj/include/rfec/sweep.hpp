#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rfec/protocol.hpp"

namespace rfec {

// Paired comparison harness: for each K it runs `trials` transmissions of
// both the coded protocol and the ARQ baseline, sharing a per-trial erasure
// probability drawn uniformly from (0, 1) but using independent channel
// streams, then aggregates per p-bin.
struct SweepOptions {
    std::vector<std::size_t> block_sizes{16, 64, 256};
    std::size_t trials = 10000;
    std::uint64_t seed = 1;
    std::size_t bins = 100;
    std::size_t packet_len = 64;  // payload bytes; row statistics never depend on it
    std::size_t max_iterations = 1000;
};

struct SweepRow {
    std::size_t block_size = 0;
    double p_bin = 0.0;  // bin centre
    double e_k = 0.0;    // mean sent/K of the coded protocol
    double i_ours = 0.0;
    double i_tcp = 0.0;
    double iter_ratio = 0.0;  // bin-level sum(iters ours)/sum(iters tcp)
    double sent_ratio = 0.0;
    std::size_t trials = 0;
};

struct SweepSummary {
    std::size_t block_size = 0;
    // Mean over non-empty p-bins of the bin-level iteration ratio: the
    // headline "gain averaged over p".
    double iter_ratio_binned = 0.0;
    double iter_ratio_overall = 0.0;  // ratio of totals across all trials
    double sent_ratio_overall = 0.0;
    std::size_t unterminated_ours = 0;
    std::size_t unterminated_tcp = 0;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<SweepSummary> summaries;
};

SweepResult run_sweep(const SweepOptions& options);

// CSV with a fixed header and %.6f formatting; byte-identical for identical
// options.
std::string sweep_csv(const SweepResult& result);

// Deterministic payload filler for simulated trials.
std::vector<Packet> random_message(std::size_t count, std::size_t len, std::uint64_t seed);

}  // namespace rfec
