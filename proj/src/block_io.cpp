#include "rfec/block_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace rfec {

namespace {

constexpr char kMagic[4] = {'R', 'F', 'E', 'C'};
constexpr std::uint32_t kMaxDimension = 1u << 16;

void put_u16(std::ostream& out, std::uint16_t v) {
    const char bytes[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
    out.write(bytes, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const char bytes[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                           static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(bytes, 4);
}

std::uint16_t get_u16(std::istream& in) {
    unsigned char bytes[2];
    in.read(reinterpret_cast<char*>(bytes), 2);
    return static_cast<std::uint16_t>(bytes[0] | (bytes[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

}  // namespace

void write_block(std::ostream& out, const CodeGrid& grid, std::size_t source_count) {
    if (grid.params.ordering() != Ordering::RowMajor) {
        throw std::invalid_argument("write_block: block files use row-major ordering");
    }
    if (source_count > grid.params.source_count()) {
        throw std::invalid_argument("write_block: source count exceeds the code capacity");
    }
    const std::size_t len = grid.cells.empty() ? 0 : grid.cells[0].len();
    out.write(kMagic, 4);
    put_u16(out, 1);
    put_u32(out, static_cast<std::uint32_t>(grid.params.n()));
    put_u32(out, static_cast<std::uint32_t>(grid.params.m()));
    put_u32(out, static_cast<std::uint32_t>(len));
    put_u32(out, static_cast<std::uint32_t>(source_count));
    for (const Packet& cell : grid.cells) {
        if (cell.status == PacketStatus::BitCorrupted) {
            throw std::invalid_argument("write_block: block files carry erasure statuses only");
        }
        const char status = cell.status == PacketStatus::Correct ? 0 : 1;
        out.write(&status, 1);
        out.write(reinterpret_cast<const char*>(cell.payload.data()),
                  static_cast<std::streamsize>(cell.payload.size()));
    }
    if (!out) {
        throw std::runtime_error("write_block: write failed");
    }
}

BlockReadResult read_block(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || std::string(magic, 4) != std::string(kMagic, 4)) {
        throw std::invalid_argument("read_block: bad magic");
    }
    const std::uint16_t version = get_u16(in);
    if (version != 1) {
        throw std::invalid_argument("read_block: unsupported version");
    }
    const std::uint32_t n = get_u32(in);
    const std::uint32_t m = get_u32(in);
    const std::uint32_t len = get_u32(in);
    const std::uint32_t source_count = get_u32(in);
    if (!in || n < 1 || m < 1 || n > kMaxDimension || m > kMaxDimension) {
        throw std::invalid_argument("read_block: dimensions out of range");
    }
    CodeParams params(static_cast<int>(n), static_cast<int>(m), Ordering::RowMajor);
    if (source_count > params.source_count()) {
        throw std::invalid_argument("read_block: source count exceeds the code capacity");
    }

    CodeGrid grid{params, {}, std::vector<bool>(params.packet_count(), false)};
    grid.cells.reserve(params.packet_count());
    for (std::size_t cell = 0; cell < params.packet_count(); ++cell) {
        char status = 0;
        in.read(&status, 1);
        std::vector<std::uint8_t> payload(len);
        in.read(reinterpret_cast<char*>(payload.data()), static_cast<std::streamsize>(len));
        if (!in) {
            throw std::invalid_argument("read_block: truncated file");
        }
        if (status != 0 && status != 1) {
            throw std::invalid_argument("read_block: unknown packet status");
        }
        Packet p = make_packet(std::move(payload));
        p.status = status == 0 ? PacketStatus::Correct : PacketStatus::Erased;
        grid.cells.push_back(std::move(p));
    }
    for (std::size_t k = source_count; k < params.source_count(); ++k) {
        grid.never_sent[params.cell_index(params.source_coord(k))] = true;
    }
    return {std::move(grid), source_count};
}

void write_block_file(const std::string& path, const CodeGrid& grid, std::size_t source_count) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("write_block_file: cannot open " + path);
    }
    write_block(out, grid, source_count);
}

BlockReadResult read_block_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("read_block_file: cannot open " + path);
    }
    return read_block(in);
}

}  // namespace rfec
