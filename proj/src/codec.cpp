#include "rfec/codec.hpp"

#include <numeric>
#include <stdexcept>

namespace rfec {

namespace {

long long ceil_isqrt(std::size_t k) {
    long long r = 0;
    while (r * r < static_cast<long long>(k)) {
        ++r;
    }
    return r;
}

// Modular inverse of a mod mod (gcd(a, mod) == 1); mod == 1 yields 0.
long long mod_inverse(long long a, long long mod) {
    long long t = 0, new_t = 1;
    long long r = mod, new_r = a % mod;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (t < 0) {
        t += mod;
    }
    return t;
}

}  // namespace

CodeParams::CodeParams(int n, int m, Ordering ordering) : n_(n), m_(m), ordering_(ordering) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("CodeParams: n and m must be >= 1");
    }
    if (ordering == Ordering::Crt) {
        if (std::gcd(n, m) != 1) {
            throw std::invalid_argument("CodeParams: Crt ordering requires gcd(n, m) == 1");
        }
        crt_row_mul_ = static_cast<long long>(m) * mod_inverse(m % n, n) % (static_cast<long long>(n) * m);
        crt_col_mul_ = static_cast<long long>(n) * mod_inverse(n % m, m) % (static_cast<long long>(n) * m);
    }
}

std::size_t CodeParams::source_count() const {
    return static_cast<std::size_t>(n_) * static_cast<std::size_t>(m_);
}

std::size_t CodeParams::packet_count() const {
    return static_cast<std::size_t>(n_ + 1) * static_cast<std::size_t>(m_ + 1);
}

double CodeParams::rate() const {
    return (static_cast<double>(n_) / (n_ + 1)) * (static_cast<double>(m_) / (m_ + 1));
}

GridCoord CodeParams::source_coord(std::size_t k) const {
    if (k >= source_count()) {
        throw std::invalid_argument("source_coord: index out of range");
    }
    if (ordering_ == Ordering::RowMajor) {
        return {static_cast<int>(k / static_cast<std::size_t>(m_)),
                static_cast<int>(k % static_cast<std::size_t>(m_))};
    }
    return {static_cast<int>(k % static_cast<std::size_t>(n_)),
            static_cast<int>(k % static_cast<std::size_t>(m_))};
}

std::size_t CodeParams::source_index(GridCoord c) const {
    if (c.row < 0 || c.row >= n_ || c.col < 0 || c.col >= m_) {
        throw std::invalid_argument("source_index: not a source cell");
    }
    if (ordering_ == Ordering::RowMajor) {
        return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(m_) +
               static_cast<std::size_t>(c.col);
    }
    // Chinese remainders: k == row (mod n), k == col (mod m).
    unsigned long long K = source_count();
    unsigned __int128 k = static_cast<unsigned __int128>(c.row) * static_cast<unsigned long long>(crt_row_mul_) +
                          static_cast<unsigned __int128>(c.col) * static_cast<unsigned long long>(crt_col_mul_);
    return static_cast<std::size_t>(k % K);
}

GridCoord CodeParams::packet_coord(PacketIndex k) const {
    const std::size_t K = source_count();
    const std::size_t N = packet_count();
    if (k >= N) {
        throw std::invalid_argument("packet_coord: index out of range");
    }
    if (k < K) {
        return source_coord(k);
    }
    if (k < K + static_cast<std::size_t>(n_)) {
        return {static_cast<int>(k - K), m_};
    }
    if (k < N - 1) {
        return {n_, static_cast<int>(k - K - static_cast<std::size_t>(n_))};
    }
    return {n_, m_};
}

PacketIndex CodeParams::packet_index(GridCoord c) const {
    const std::size_t K = source_count();
    if (c.row < 0 || c.row > n_ || c.col < 0 || c.col > m_) {
        throw std::invalid_argument("packet_index: coordinate out of bounds");
    }
    if (c.row < n_ && c.col < m_) {
        return source_index(c);
    }
    if (c.row < n_) {  // col == m: row parity
        return K + static_cast<std::size_t>(c.row);
    }
    if (c.col < m_) {  // row == n: column parity
        return K + static_cast<std::size_t>(n_) + static_cast<std::size_t>(c.col);
    }
    return packet_count() - 1;
}

std::size_t CodeParams::cell_index(GridCoord c) const {
    return static_cast<std::size_t>(c.row) * static_cast<std::size_t>(m_ + 1) +
           static_cast<std::size_t>(c.col);
}

GridCoord CodeParams::cell_coord(std::size_t index) const {
    const std::size_t stride = static_cast<std::size_t>(m_ + 1);
    return {static_cast<int>(index / stride), static_cast<int>(index % stride)};
}

std::size_t CodeGrid::sent_count() const {
    std::size_t skipped = 0;
    for (bool skip : never_sent) {
        skipped += skip ? 1 : 0;
    }
    return cells.size() - skipped;
}

ErrorConfiguration CodeGrid::error_configuration() const {
    std::vector<GridCoord> errors;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].status != PacketStatus::Correct) {
            errors.push_back(params.cell_coord(i));
        }
    }
    return {params.n(), params.m(), std::move(errors)};
}

CodeGrid encode(const CodeParams& params, const std::vector<Packet>& sources) {
    const std::size_t K = params.source_count();
    if (sources.size() != K) {
        throw std::invalid_argument("encode: expected exactly K source packets");
    }
    const std::size_t len = sources.empty() ? 0 : sources[0].len();
    for (const Packet& s : sources) {
        if (s.len() != len) {
            throw std::invalid_argument("encode: source payload lengths differ");
        }
    }

    CodeGrid grid{params, std::vector<Packet>(params.packet_count(), zero_packet(len)),
                  std::vector<bool>(params.packet_count(), false)};
    for (std::size_t k = 0; k < K; ++k) {
        grid.at(params.source_coord(k)) = sources[k];
        grid.at(params.source_coord(k)).status = PacketStatus::Correct;
    }
    // Row parities, then column parities, then the overall parity from row
    // parities. Total payload xors: (K - n) + (K - m) + (n - 1).
    for (int i = 0; i < params.n(); ++i) {
        Packet acc = grid.at({i, 0});
        for (int j = 1; j < params.m(); ++j) {
            acc = xor_packets(acc, grid.at({i, j}));
        }
        grid.at({i, params.m()}) = acc;
    }
    for (int j = 0; j < params.m(); ++j) {
        Packet acc = grid.at({0, j});
        for (int i = 1; i < params.n(); ++i) {
            acc = xor_packets(acc, grid.at({i, j}));
        }
        grid.at({params.n(), j}) = acc;
    }
    Packet overall = grid.at({0, params.m()});
    for (int i = 1; i < params.n(); ++i) {
        overall = xor_packets(overall, grid.at({i, params.m()}));
    }
    grid.at({params.n(), params.m()}) = overall;
    return grid;
}

namespace {

// One pass of the shared peel fixpoint over coordinates. `alive` flags and
// the per-hyperplane counters are caller-provided so exhaustive searches can
// run allocation-free.
void peel_counts(const std::vector<GridCoord>& errors, int n, int m, std::vector<char>& alive,
                 std::vector<int>& row_cnt, std::vector<int>& col_cnt) {
    row_cnt.assign(static_cast<std::size_t>(n) + 1, 0);
    col_cnt.assign(static_cast<std::size_t>(m) + 1, 0);
    alive.assign(errors.size(), 1);
    for (const GridCoord& c : errors) {
        ++row_cnt[static_cast<std::size_t>(c.row)];
        ++col_cnt[static_cast<std::size_t>(c.col)];
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t e = 0; e < errors.size(); ++e) {
            if (!alive[e]) {
                continue;
            }
            const GridCoord& c = errors[e];
            if (row_cnt[static_cast<std::size_t>(c.row)] == 1 ||
                col_cnt[static_cast<std::size_t>(c.col)] == 1) {
                alive[e] = 0;
                --row_cnt[static_cast<std::size_t>(c.row)];
                --col_cnt[static_cast<std::size_t>(c.col)];
                progress = true;
            }
        }
    }
}

}  // namespace

ErrorConfiguration peel_residual(const ErrorConfiguration& config) {
    std::vector<char> alive;
    std::vector<int> row_cnt;
    std::vector<int> col_cnt;
    peel_counts(config.errors(), config.n(), config.m(), alive, row_cnt, col_cnt);
    std::vector<GridCoord> residual;
    for (std::size_t e = 0; e < config.errors().size(); ++e) {
        if (alive[e]) {
            residual.push_back(config.errors()[e]);
        }
    }
    return {config.n(), config.m(), std::move(residual)};
}

ConfigClass classify(const ErrorConfiguration& config) {
    ErrorConfiguration residual = peel_residual(config);
    if (residual.empty()) {
        return ConfigClass::Good;
    }
    return residual.error_count() == config.error_count() ? ConfigClass::MinimalBad
                                                          : ConfigClass::Bad;
}

DecodeResult decode_peel(const CodeGrid& grid) {
    CodeGrid out = grid;
    const int n = out.params.n();
    const int m = out.params.m();
    std::vector<int> row_cnt(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> col_cnt(static_cast<std::size_t>(m) + 1, 0);
    for (std::size_t i = 0; i < out.cells.size(); ++i) {
        if (out.cells[i].status != PacketStatus::Correct) {
            GridCoord c = out.params.cell_coord(i);
            ++row_cnt[static_cast<std::size_t>(c.row)];
            ++col_cnt[static_cast<std::size_t>(c.col)];
        }
    }

    auto repair_cell = [&](GridCoord c, bool via_row) {
        Packet acc = zero_packet(out.cells[0].len());
        if (via_row) {
            for (int j = 0; j <= m; ++j) {
                if (j != c.col) {
                    acc = xor_packets(acc, out.at({c.row, j}));
                }
            }
        } else {
            for (int i = 0; i <= n; ++i) {
                if (i != c.row) {
                    acc = xor_packets(acc, out.at({i, c.col}));
                }
            }
        }
        out.at(c) = acc;
        --row_cnt[static_cast<std::size_t>(c.row)];
        --col_cnt[static_cast<std::size_t>(c.col)];
    };

    auto find_error_in_row = [&](int i) {
        for (int j = 0; j <= m; ++j) {
            if (out.at({i, j}).status != PacketStatus::Correct) {
                return GridCoord{i, j};
            }
        }
        return GridCoord{-1, -1};
    };
    auto find_error_in_col = [&](int j) {
        for (int i = 0; i <= n; ++i) {
            if (out.at({i, j}).status != PacketStatus::Correct) {
                return GridCoord{i, j};
            }
        }
        return GridCoord{-1, -1};
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i <= n; ++i) {
            if (row_cnt[static_cast<std::size_t>(i)] == 1) {
                repair_cell(find_error_in_row(i), true);
                progress = true;
            }
        }
        for (int j = 0; j <= m; ++j) {
            if (col_cnt[static_cast<std::size_t>(j)] == 1) {
                repair_cell(find_error_in_col(j), false);
                progress = true;
            }
        }
    }

    ErrorConfiguration residual = out.error_configuration();
    return {std::move(out), std::move(residual)};
}

DimensionChoice choose_dimensions(std::size_t message_packets) {
    if (message_packets == 0) {
        throw std::invalid_argument("choose_dimensions: need at least one packet");
    }
    const long long side = ceil_isqrt(message_packets);
    CodeParams params(static_cast<int>(side), static_cast<int>(side), Ordering::RowMajor);
    return {params, static_cast<std::size_t>(side * side) - message_packets};
}

CodeGrid encode_padded(const std::vector<Packet>& sources) {
    DimensionChoice choice = choose_dimensions(sources.size());
    const std::size_t len = sources[0].len();
    std::vector<Packet> padded = sources;
    padded.resize(choice.params.source_count(), zero_packet(len));
    CodeGrid grid = encode(choice.params, padded);
    for (std::size_t k = sources.size(); k < choice.params.source_count(); ++k) {
        grid.never_sent[choice.params.cell_index(choice.params.source_coord(k))] = true;
    }
    return grid;
}

std::size_t padded_emission_size(std::size_t k) {
    if (k == 0) {
        return 0;
    }
    return k + 2 * static_cast<std::size_t>(ceil_isqrt(k)) + 1;
}

}  // namespace rfec
