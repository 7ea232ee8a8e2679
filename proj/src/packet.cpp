#include "rfec/packet.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace rfec {

namespace {

constexpr std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int bit = 0; bit < 8; ++bit) {
            c = (c & 1u) ? (c >> 1) ^ 0xEDB88320u : c >> 1;
        }
        table[i] = c;
    }
    return table;
}

constexpr auto kCrcTable = make_crc_table();

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    std::uint32_t crc = 0xFFFFFFFFu;
    for (std::uint8_t byte : data) {
        crc = kCrcTable[(crc ^ byte) & 0xFFu] ^ (crc >> 8);
    }
    return crc ^ 0xFFFFFFFFu;
}

Packet make_packet(std::vector<std::uint8_t> payload) {
    Packet p;
    p.checksum = crc32(payload);
    p.payload = std::move(payload);
    p.status = PacketStatus::Correct;
    return p;
}

Packet zero_packet(std::size_t len) {
    return make_packet(std::vector<std::uint8_t>(len, 0));
}

Packet xor_packets(const Packet& a, const Packet& b) {
    if (a.payload.size() != b.payload.size()) {
        throw std::invalid_argument("xor_packets: payload length mismatch");
    }
    std::vector<std::uint8_t> out(a.payload.size());
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(a.payload[i] ^ b.payload[i]);
    }
    return make_packet(std::move(out));
}

std::size_t mask_popcount(std::span<const std::uint8_t> mask) {
    std::size_t count = 0;
    for (std::uint8_t byte : mask) {
        count += static_cast<std::size_t>(std::popcount(byte));
    }
    return count;
}

}  // namespace rfec
