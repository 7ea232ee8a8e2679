#pragma once

#include <cstdint>
#include <functional>

#include "rfec/codec.hpp"

namespace rfec {

// Memoryless channel models. Every draw is a pure function of
// (seed, stream_id, emission, cell), so trials are reproducible and can run
// concurrently on distinct stream ids without shared state. The feedback
// direction is modelled as error-free.
struct ChannelConfig {
    enum class Mode { Erasure, BitFlip };

    Mode mode = Mode::Erasure;
    double p = 0.0;      // per-packet erasure probability (Erasure)
    double p_bit = 0.0;  // per-bit flip probability (BitFlip)
    std::uint64_t seed = 0;

    static ChannelConfig erasure(double p, std::uint64_t seed);
    static ChannelConfig bit_flip(double p_bit, std::uint64_t seed);
};

// Erasure decision for one cell of one emission.
bool erase_draw(const ChannelConfig& cfg, std::uint64_t stream_id, std::uint64_t emission,
                std::uint64_t cell);

// Stamp statuses onto a copy of the grid. Never-sent (padding) cells are
// skipped. Erasure mode zeroes the payload of erased cells; BitFlip mode
// flips payload bits and records them in the corruption mask.
CodeGrid transmit(const CodeGrid& grid, const ChannelConfig& cfg, std::uint64_t stream_id,
                  std::uint64_t emission = 0);

// Packet error rate induced by independent bit flips: 1 - (1 - p_bit)^(8*len).
double bitflip_packet_error_rate(double p_bit, std::size_t len);

// Channel as seen by one protocol session: the session supplies a
// monotonically increasing emission index.
using ChannelFn = std::function<CodeGrid(const CodeGrid&, std::uint64_t emission)>;

ChannelFn make_channel(const ChannelConfig& cfg, std::uint64_t stream_id);

}  // namespace rfec
