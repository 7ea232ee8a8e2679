#include "rfec/sweep.hpp"

#include <cstdio>
#include <random>
#include <stdexcept>

#include "rfec/baseline.hpp"
#include "rfec/rng.hpp"

namespace rfec {

std::vector<Packet> random_message(std::size_t count, std::size_t len, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Packet> packets;
    packets.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::vector<std::uint8_t> payload(len);
        for (std::size_t b = 0; b < len; ++b) {
            payload[b] = static_cast<std::uint8_t>(rng() & 0xFF);
        }
        packets.push_back(make_packet(std::move(payload)));
    }
    return packets;
}

SweepResult run_sweep(const SweepOptions& options) {
    if (options.trials == 0 || options.bins == 0) {
        throw std::invalid_argument("run_sweep: trials and bins must be >= 1");
    }
    SweepResult result;
    for (std::size_t ki = 0; ki < options.block_sizes.size(); ++ki) {
        const std::size_t K = options.block_sizes[ki];
        struct BinAcc {
            std::size_t trials = 0;
            double ek_sum = 0.0;
            std::size_t iters_ours = 0;
            std::size_t iters_tcp = 0;
            std::size_t sent_ours = 0;
            std::size_t sent_tcp = 0;
        };
        std::vector<BinAcc> bins(options.bins);
        SweepSummary summary;
        summary.block_size = K;
        std::size_t total_iters_ours = 0;
        std::size_t total_iters_tcp = 0;
        std::size_t total_sent_ours = 0;
        std::size_t total_sent_tcp = 0;

        ProtocolConfig cfg;
        cfg.max_iterations = options.max_iterations;
        for (std::size_t trial = 0; trial < options.trials; ++trial) {
            const double p = u01_open(counter_hash(options.seed, 0x7000 + ki, trial));
            std::vector<Packet> packets =
                random_message(K, options.packet_len, counter_hash(options.seed, 0x7100 + ki, trial));

            ChannelConfig ours_cfg = ChannelConfig::erasure(p, options.seed);
            BlockTrace ours = run_block(std::move(packets),
                                        make_channel(ours_cfg, counter_hash(options.seed, 0x7200 + ki, trial)),
                                        cfg);
            ChannelConfig tcp_cfg = ChannelConfig::erasure(p, options.seed);
            BlockTrace tcp = run_tcp_block(K, tcp_cfg, counter_hash(options.seed, 0x7300 + ki, trial),
                                           options.max_iterations);

            BinAcc& bin = bins[std::min(static_cast<std::size_t>(p * static_cast<double>(options.bins)),
                                        options.bins - 1)];
            ++bin.trials;
            bin.ek_sum += static_cast<double>(ours.total_sent) / static_cast<double>(K);
            bin.iters_ours += ours.iterations.size();
            bin.iters_tcp += tcp.iterations.size();
            bin.sent_ours += ours.total_sent;
            bin.sent_tcp += tcp.total_sent;
            total_iters_ours += ours.iterations.size();
            total_iters_tcp += tcp.iterations.size();
            total_sent_ours += ours.total_sent;
            total_sent_tcp += tcp.total_sent;
            summary.unterminated_ours += ours.terminated ? 0 : 1;
            summary.unterminated_tcp += tcp.terminated ? 0 : 1;
        }

        double ratio_sum = 0.0;
        std::size_t nonempty = 0;
        for (std::size_t b = 0; b < bins.size(); ++b) {
            const BinAcc& bin = bins[b];
            if (bin.trials == 0) {
                continue;
            }
            SweepRow row;
            row.block_size = K;
            row.p_bin = (static_cast<double>(b) + 0.5) / static_cast<double>(options.bins);
            row.trials = bin.trials;
            row.e_k = bin.ek_sum / static_cast<double>(bin.trials);
            row.i_ours = static_cast<double>(bin.iters_ours) / static_cast<double>(bin.trials);
            row.i_tcp = static_cast<double>(bin.iters_tcp) / static_cast<double>(bin.trials);
            row.iter_ratio = static_cast<double>(bin.iters_ours) / static_cast<double>(bin.iters_tcp);
            row.sent_ratio = static_cast<double>(bin.sent_ours) / static_cast<double>(bin.sent_tcp);
            result.rows.push_back(row);
            ratio_sum += row.iter_ratio;
            ++nonempty;
        }
        summary.iter_ratio_binned = nonempty == 0 ? 0.0 : ratio_sum / static_cast<double>(nonempty);
        summary.iter_ratio_overall =
            static_cast<double>(total_iters_ours) / static_cast<double>(total_iters_tcp);
        summary.sent_ratio_overall =
            static_cast<double>(total_sent_ours) / static_cast<double>(total_sent_tcp);
        result.summaries.push_back(summary);
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string csv = "K,p_bin,e_K,i_K_ours,i_K_tcp,iter_ratio,sent_ratio,trials\n";
    char line[256];
    for (const SweepRow& row : result.rows) {
        std::snprintf(line, sizeof(line), "%zu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%zu\n", row.block_size,
                      row.p_bin, row.e_k, row.i_ours, row.i_tcp, row.iter_ratio, row.sent_ratio,
                      row.trials);
        csv += line;
    }
    return csv;
}

}  // namespace rfec
