#include "rfec/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "rfec/rng.hpp"

namespace rfec {

namespace {

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(what) + ": probability outside [0, 1]");
    }
}

std::uint64_t cell_counter(std::uint64_t emission, std::uint64_t cell) {
    return (emission << 33) ^ cell;
}

}  // namespace

ChannelConfig ChannelConfig::erasure(double p, std::uint64_t seed) {
    check_probability(p, "ChannelConfig::erasure");
    return {Mode::Erasure, p, 0.0, seed};
}

ChannelConfig ChannelConfig::bit_flip(double p_bit, std::uint64_t seed) {
    check_probability(p_bit, "ChannelConfig::bit_flip");
    return {Mode::BitFlip, 0.0, p_bit, seed};
}

bool erase_draw(const ChannelConfig& cfg, std::uint64_t stream_id, std::uint64_t emission,
                std::uint64_t cell) {
    return u01(counter_hash(cfg.seed, stream_id, cell_counter(emission, cell))) < cfg.p;
}

double bitflip_packet_error_rate(double p_bit, std::size_t len) {
    return 1.0 - std::pow(1.0 - p_bit, 8.0 * static_cast<double>(len));
}

namespace {

void flip_bits(Packet& packet, double p_bit, std::uint64_t draw_seed) {
    const std::size_t bits = 8 * packet.len();
    if (bits == 0 || p_bit <= 0.0) {
        return;
    }
    std::vector<std::uint8_t> mask(packet.len(), 0);
    bool any = false;
    std::mt19937_64 rng(draw_seed);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    if (p_bit >= 1.0) {
        for (std::size_t b = 0; b < bits; ++b) {
            mask[b / 8] |= static_cast<std::uint8_t>(1u << (b % 8));
        }
        any = true;
    } else {
        // Geometric skips between flipped bits.
        const double log_keep = std::log1p(-p_bit);
        double pos = std::floor(std::log1p(-uniform(rng)) / log_keep);
        while (pos < static_cast<double>(bits)) {
            const std::size_t b = static_cast<std::size_t>(pos);
            mask[b / 8] |= static_cast<std::uint8_t>(1u << (b % 8));
            any = true;
            pos += 1.0 + std::floor(std::log1p(-uniform(rng)) / log_keep);
        }
    }
    if (any) {
        for (std::size_t i = 0; i < packet.payload.size(); ++i) {
            packet.payload[i] ^= mask[i];
        }
        packet.status = PacketStatus::BitCorrupted;
        packet.corruption_mask = std::move(mask);
    }
}

}  // namespace

CodeGrid transmit(const CodeGrid& grid, const ChannelConfig& cfg, std::uint64_t stream_id,
                  std::uint64_t emission) {
    check_probability(cfg.mode == ChannelConfig::Mode::Erasure ? cfg.p : cfg.p_bit, "transmit");
    CodeGrid out = grid;
    for (std::size_t cell = 0; cell < out.cells.size(); ++cell) {
        if (out.never_sent[cell]) {
            continue;
        }
        if (cfg.mode == ChannelConfig::Mode::Erasure) {
            if (erase_draw(cfg, stream_id, emission, cell)) {
                Packet& p = out.cells[cell];
                p.status = PacketStatus::Erased;
                std::fill(p.payload.begin(), p.payload.end(), 0);
            }
        } else {
            flip_bits(out.cells[cell], cfg.p_bit,
                      counter_hash(cfg.seed, stream_id, cell_counter(emission, cell)));
        }
    }
    return out;
}

ChannelFn make_channel(const ChannelConfig& cfg, std::uint64_t stream_id) {
    return [cfg, stream_id](const CodeGrid& grid, std::uint64_t emission) {
        return transmit(grid, cfg, stream_id, emission);
    };
}

}  // namespace rfec
