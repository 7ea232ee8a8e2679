#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rfec/codec.hpp"

namespace rfec {

// Block file format, little-endian:
//   magic "RFEC" | version u16 = 1 | n u32 | m u32 | len u32 | K u32
// followed by N = (n+1)*(m+1) records of { status u8, payload len bytes },
// one per cell in row-major order. K counts the real sources; source slots
// K..n*m-1 are padding (zero payload, never sent). Status 0 is correct,
// 1 erased. Round-trips bit-exactly.
struct BlockFileHeader {
    std::uint16_t version = 1;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    std::uint32_t len = 0;
    std::uint32_t source_count = 0;  // K
};

void write_block(std::ostream& out, const CodeGrid& grid, std::size_t source_count);

struct BlockReadResult {
    CodeGrid grid;
    std::size_t source_count;
};

BlockReadResult read_block(std::istream& in);

void write_block_file(const std::string& path, const CodeGrid& grid, std::size_t source_count);
BlockReadResult read_block_file(const std::string& path);

}  // namespace rfec
