#pragma once

#include <cstddef>
#include <vector>

#include "rfec/grid.hpp"
#include "rfec/packet.hpp"

namespace rfec {

// Index of a code packet: k < K addresses a source, K <= k < N a parity.
using PacketIndex = std::size_t;

// How source packet k maps to its cell in the n x m source rectangle.
// Crt ((k mod n, k mod m)) requires gcd(n, m) == 1; RowMajor works for any
// dimensions and is the default.
enum class Ordering {
    RowMajor,
    Crt,
};

// Parameters (n, m, ordering) of a two-dimensional rectangular code.
// K = n*m source packets produce N = (n+1)*(m+1) code packets: one parity
// per row, one per column, and one overall parity at (n, m).
class CodeParams {
public:
    CodeParams(int n, int m, Ordering ordering = Ordering::RowMajor);

    int n() const { return n_; }
    int m() const { return m_; }
    Ordering ordering() const { return ordering_; }
    std::size_t source_count() const;  // K
    std::size_t packet_count() const;  // N
    double rate() const;               // n/(n+1) * m/(m+1)

    // Source placement: bijection [0, K) -> [0, n) x [0, m).
    GridCoord source_coord(std::size_t k) const;
    std::size_t source_index(GridCoord c) const;

    // Full packet placement over [0, N): sources, then row parities at
    // (k - K, m), column parities at (n, k - K - n), overall at (n, m).
    GridCoord packet_coord(PacketIndex k) const;
    PacketIndex packet_index(GridCoord c) const;

    // Row-major cell addressing used for grid storage.
    std::size_t cell_index(GridCoord c) const;
    GridCoord cell_coord(std::size_t index) const;

    bool operator==(const CodeParams& o) const {
        return n_ == o.n_ && m_ == o.m_ && ordering_ == o.ordering_;
    }

private:
    int n_;
    int m_;
    Ordering ordering_;
    long long crt_row_mul_ = 0;  // m * (m^-1 mod n), used by source_index
    long long crt_col_mul_ = 0;  // n * (n^-1 mod m)
};

// The (n+1) x (m+1) arrangement of code packets. `never_sent` marks padding
// cells the sender skips on the wire; the receiver knows they are zero.
struct CodeGrid {
    CodeParams params;
    std::vector<Packet> cells;       // row-major, (n+1)*(m+1) entries
    std::vector<bool> never_sent;    // same indexing as cells

    const Packet& at(GridCoord c) const { return cells[params.cell_index(c)]; }
    Packet& at(GridCoord c) { return cells[params.cell_index(c)]; }
    std::size_t sent_count() const;

    // Coordinates of cells whose status is not Correct.
    ErrorConfiguration error_configuration() const;
};

// Encode exactly K source packets of uniform length.
// Every row and every column of the result xors to the zero payload.
CodeGrid encode(const CodeParams& params, const std::vector<Packet>& sources);

struct DecodeResult {
    CodeGrid repaired;
    ErrorConfiguration residual;
};

// Iteratively repair every error that is the only one in its row or column,
// until none is. The residual is the unique fixpoint; it is empty iff the
// input error set is a good configuration.
DecodeResult decode_peel(const CodeGrid& grid);

// Coordinate-level peel fixpoint: same residual as decode_peel, computed
// from positions alone.
ErrorConfiguration peel_residual(const ErrorConfiguration& config);

enum class ConfigClass {
    Good,        // peeling repairs everything
    Bad,         // peeling stalls with some errors left
    MinimalBad,  // non-empty and peeling can repair nothing at all
};

ConfigClass classify(const ErrorConfiguration& config);
inline bool is_good_configuration(const ErrorConfiguration& config) {
    return classify(config) == ConfigClass::Good;
}

struct DimensionChoice {
    CodeParams params;
    std::size_t pad_count;
};

// Square padding rule: n = m = ceil(sqrt(K)), padding the source rectangle
// with n^2 - K zero packets that are never sent.
DimensionChoice choose_dimensions(std::size_t message_packets);

// Pad with zero packets per choose_dimensions, encode, and mark the padding
// cells never-sent.
CodeGrid encode_padded(const std::vector<Packet>& sources);

// Cells on the wire for a padded block of k packets: k + 2*ceil(sqrt(k)) + 1.
std::size_t padded_emission_size(std::size_t k);

}  // namespace rfec
