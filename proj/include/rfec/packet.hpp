#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rfec {

enum class PacketStatus : std::uint8_t {
    Correct = 0,
    Erased = 1,
    BitCorrupted = 2,
};

// CRC-32 (reflected polynomial 0xEDB88320, init 0xFFFFFFFF, final xor
// 0xFFFFFFFF). Carried as packet metadata; error detection itself is
// modelled as perfect, so the value is never consulted to flag errors.
std::uint32_t crc32(std::span<const std::uint8_t> data);

// A fixed-length payload with its checksum and transmission status.
// Packets are plain values: copying them never aliases.
struct Packet {
    std::vector<std::uint8_t> payload;
    std::uint32_t checksum = 0;
    PacketStatus status = PacketStatus::Correct;
    // One bit per payload bit, set where the channel flipped a bit.
    // Non-empty (with >= 1 set bit) iff status == BitCorrupted.
    std::vector<std::uint8_t> corruption_mask;

    std::size_t len() const { return payload.size(); }
};

Packet make_packet(std::vector<std::uint8_t> payload);
Packet zero_packet(std::size_t len);

// Bitwise xor of two payloads of equal length; the checksum is recomputed
// over the new payload. Throws std::invalid_argument on length mismatch.
Packet xor_packets(const Packet& a, const Packet& b);

std::size_t mask_popcount(std::span<const std::uint8_t> mask);

}  // namespace rfec
