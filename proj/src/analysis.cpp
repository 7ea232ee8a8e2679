#include "rfec/analysis.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "rfec/errors.hpp"
#include "rfec/rng.hpp"

namespace rfec {

BigInt binomial(std::size_t n, std::size_t k) {
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    BigInt result = 1;
    for (std::size_t i = 0; i < k; ++i) {
        result *= static_cast<unsigned long long>(n - i);
        result /= static_cast<unsigned long long>(i + 1);
    }
    return result;
}

BigRational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument("rational_from_double: value must be finite");
    }
    if (x == 0.0) {
        return 0;
    }
    int exponent = 0;
    const double fraction = std::frexp(x, &exponent);  // x = fraction * 2^exponent
    const long long mantissa = std::llround(std::ldexp(fraction, 53));
    BigRational value(mantissa);
    const int shift = exponent - 53;
    if (shift >= 0) {
        value *= BigRational(BigInt(1) << shift);
    } else {
        value /= BigRational(BigInt(1) << -shift);
    }
    return value;
}

BigRational law_ne_exact(std::size_t N, const BigRational& p, std::size_t n_e) {
    if (n_e > N) {
        throw std::invalid_argument("law_ne: n_e out of range");
    }
    if (p < 0 || p > 1) {
        throw std::invalid_argument("law_ne: probability outside [0, 1]");
    }
    BigRational result(binomial(N, n_e));
    for (std::size_t i = 0; i < n_e; ++i) {
        result *= p;
    }
    const BigRational q = BigRational(1) - p;
    for (std::size_t i = 0; i < N - n_e; ++i) {
        result *= q;
    }
    return result;
}

double law_ne(std::size_t N, double p, std::size_t n_e) {
    return law_ne_exact(N, rational_from_double(p), n_e).convert_to<double>();
}

namespace {

void check_conditional_args(int n, int m, std::size_t n_e) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("conditional statistic: dimensions must be >= 1");
    }
    const std::size_t N = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    if (n_e > N) {
        throw std::invalid_argument("conditional statistic: n_e out of range");
    }
}

}  // namespace

BigRational exp_cols_given_ne_exact(int n, int m, std::size_t n_e) {
    check_conditional_args(n, m, n_e);
    const std::size_t N = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    const BigRational miss(binomial(N - static_cast<std::size_t>(n) - 1, n_e), binomial(N, n_e));
    return BigRational(m + 1) * (BigRational(1) - miss);
}

double exp_cols_given_ne(int n, int m, std::size_t n_e) {
    return exp_cols_given_ne_exact(n, m, n_e).convert_to<double>();
}

BigRational exp_rows_given_ne_exact(int n, int m, std::size_t n_e) {
    check_conditional_args(n, m, n_e);
    const std::size_t N = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    const BigRational miss(binomial(N - static_cast<std::size_t>(m) - 1, n_e), binomial(N, n_e));
    return BigRational(n + 1) * (BigRational(1) - miss);
}

double exp_rows_given_ne(int n, int m, std::size_t n_e) {
    return exp_rows_given_ne_exact(n, m, n_e).convert_to<double>();
}

BigRational expected_I_regime3_exact(int n, int m, std::size_t n_e) {
    check_conditional_args(n, m, n_e);
    // n_e + 1 - E(R|N_e) - E(C|N_e), the repair-size identity with the giant
    // non-singleton component counted as one.
    return BigRational(static_cast<long long>(n_e) + 1) - exp_rows_given_ne_exact(n, m, n_e) -
           exp_cols_given_ne_exact(n, m, n_e);
}

double expected_I_regime3(int n, int m, std::size_t n_e) {
    return expected_I_regime3_exact(n, m, n_e).convert_to<double>();
}

double lambda_of_x(double x) {
    if (!(x > 0.0 && x < 1.0)) {
        throw std::invalid_argument("lambda_of_x: x must lie in (0, 1)");
    }
    return -(std::log1p(-x) + x) / 2.0;
}

namespace {

// Union-find sized for rollback: no path compression, union by size.
struct RollbackDsu {
    std::vector<int> parent;
    std::vector<int> size;

    explicit RollbackDsu(int count)
        : parent(static_cast<std::size_t>(count)), size(static_cast<std::size_t>(count), 1) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) const {
        while (parent[static_cast<std::size_t>(x)] != x) {
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    // Returns the child root to undo with, or -1 if already joined.
    int unite(int a, int b) {
        int ra = find(a);
        int rb = find(b);
        if (ra == rb) {
            return -1;
        }
        if (size[static_cast<std::size_t>(ra)] > size[static_cast<std::size_t>(rb)]) {
            std::swap(ra, rb);
        }
        parent[static_cast<std::size_t>(ra)] = rb;
        size[static_cast<std::size_t>(rb)] += size[static_cast<std::size_t>(ra)];
        return ra;
    }
    void undo(int child_root) {
        const int root = find(child_root);
        size[static_cast<std::size_t>(root)] -= size[static_cast<std::size_t>(child_root)];
        parent[static_cast<std::size_t>(child_root)] = child_root;
    }
};

void enumerate_forests(const std::vector<std::pair<int, int>>& edges, std::size_t from,
                       std::size_t chosen, RollbackDsu& dsu, std::vector<std::uint64_t>& counts) {
    ++counts[chosen];
    for (std::size_t j = from; j < edges.size(); ++j) {
        const int child = dsu.unite(edges[j].first, edges[j].second);
        if (child < 0) {
            continue;  // would close a cycle
        }
        enumerate_forests(edges, j + 1, chosen + 1, dsu, counts);
        dsu.undo(child);
    }
}

}  // namespace

std::vector<std::uint64_t> count_acyclic_subgraphs_all(int n, int m) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("count_acyclic_subgraphs: dimensions must be >= 1");
    }
    const std::size_t E = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    if (E > 25) {
        throw resource_limit_error("count_acyclic_subgraphs: instance too large to enumerate");
    }
    std::vector<std::pair<int, int>> edges;
    edges.reserve(E);
    for (int i = 0; i <= n; ++i) {
        for (int j = 0; j <= m; ++j) {
            edges.emplace_back(i, n + 1 + j);
        }
    }
    std::vector<std::uint64_t> counts(E + 1, 0);
    RollbackDsu dsu(n + m + 2);
    enumerate_forests(edges, 0, 0, dsu, counts);
    return counts;
}

std::uint64_t count_acyclic_subgraphs(int n, int m, std::size_t n_e) {
    const auto counts = count_acyclic_subgraphs_all(n, m);
    if (n_e >= counts.size()) {
        throw std::invalid_argument("count_acyclic_subgraphs: n_e out of range");
    }
    return counts[n_e];
}

double prob_good_given_ne(int n, int m, std::size_t n_e) {
    const std::uint64_t forests = count_acyclic_subgraphs(n, m, n_e);
    const std::size_t N = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    return BigRational(BigInt(forests), binomial(N, n_e)).convert_to<double>();
}

ConditionalStats mc_conditional(int n, int m, std::size_t n_e, std::size_t trials,
                                std::uint64_t seed, Statistic statistic) {
    check_conditional_args(n, m, n_e);
    if (trials == 0) {
        throw std::invalid_argument("mc_conditional: need at least one trial");
    }
    const std::size_t N = static_cast<std::size_t>(n + 1) * static_cast<std::size_t>(m + 1);
    const std::size_t stride = static_cast<std::size_t>(m + 1);

    std::vector<std::uint32_t> pool(N);
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<char> row_seen(static_cast<std::size_t>(n) + 1);
    std::vector<char> col_seen(static_cast<std::size_t>(m) + 1);

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(counter_hash(seed, 0x6D63ull, trial));
        for (std::size_t i = 0; i < n_e; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, N - 1);
            std::swap(pool[i], pool[pick(rng)]);
        }

        double x = 0.0;
        switch (statistic) {
            case Statistic::ExpectedC: {
                std::fill(col_seen.begin(), col_seen.end(), 0);
                int count = 0;
                for (std::size_t i = 0; i < n_e; ++i) {
                    const std::size_t col = pool[i] % stride;
                    if (!col_seen[col]) {
                        col_seen[col] = 1;
                        ++count;
                    }
                }
                x = count;
                break;
            }
            case Statistic::ExpectedR: {
                std::fill(row_seen.begin(), row_seen.end(), 0);
                int count = 0;
                for (std::size_t i = 0; i < n_e; ++i) {
                    const std::size_t row = pool[i] / stride;
                    if (!row_seen[row]) {
                        row_seen[row] = 1;
                        ++count;
                    }
                }
                x = count;
                break;
            }
            case Statistic::ExpectedI:
            case Statistic::ProbIZero: {
                std::vector<GadgetEdge> edges;
                edges.reserve(n_e);
                for (std::size_t i = 0; i < n_e; ++i) {
                    const int row = static_cast<int>(pool[i] / stride);
                    const int col = static_cast<int>(pool[i] % stride);
                    edges.push_back({row, col, pool[i], Weight(1)});
                }
                CoordinatesGraph gadget(n, m, std::move(edges));
                const FeedbackRepairSet frs = min_frs_unit(gadget);
                x = statistic == Statistic::ExpectedI
                        ? static_cast<double>(frs.size())
                        : (frs.empty() ? 1.0 : 0.0);
                break;
            }
        }
        sum += x;
        sum_sq += x * x;
    }

    ConditionalStats stats;
    stats.n = n;
    stats.m = m;
    stats.n_e = n_e;
    stats.trials = trials;
    stats.estimate = sum / static_cast<double>(trials);
    if (trials > 1) {
        const double t = static_cast<double>(trials);
        const double var = std::max(0.0, (sum_sq - sum * sum / t) / (t - 1.0));
        stats.std_error = std::sqrt(var / t);
    }
    return stats;
}

namespace {

// Peel-to-empty check over a fixed error list with a removal mask.
// Scratch vectors are caller-owned so exhaustive searches stay allocation
// free in the inner loop.
bool removal_peels_clean(const std::vector<GridCoord>& errors, std::uint32_t removed, int n, int m,
                         std::vector<int>& row_cnt, std::vector<int>& col_cnt) {
    row_cnt.assign(static_cast<std::size_t>(n) + 1, 0);
    col_cnt.assign(static_cast<std::size_t>(m) + 1, 0);
    std::uint32_t alive = 0;
    for (std::size_t e = 0; e < errors.size(); ++e) {
        if (removed & (1u << e)) {
            continue;
        }
        alive |= 1u << e;
        ++row_cnt[static_cast<std::size_t>(errors[e].row)];
        ++col_cnt[static_cast<std::size_t>(errors[e].col)];
    }
    bool progress = true;
    while (alive != 0 && progress) {
        progress = false;
        std::uint32_t scan = alive;
        while (scan != 0) {
            const std::size_t e = static_cast<std::size_t>(std::countr_zero(scan));
            scan &= scan - 1;
            const GridCoord& c = errors[e];
            if (row_cnt[static_cast<std::size_t>(c.row)] == 1 ||
                col_cnt[static_cast<std::size_t>(c.col)] == 1) {
                alive &= ~(1u << e);
                --row_cnt[static_cast<std::size_t>(c.row)];
                --col_cnt[static_cast<std::size_t>(c.col)];
                progress = true;
            }
        }
    }
    return alive == 0;
}

struct WeightedSearch {
    const std::vector<GridCoord>& errors;
    const std::vector<Weight>& weights;
    int n;
    int m;
    std::vector<int> row_cnt;
    std::vector<int> col_cnt;
    Weight best_cost{0};
    std::uint32_t best_mask = 0;

    void search(std::size_t index, std::uint32_t mask, const Weight& cost) {
        if (cost >= best_cost) {
            return;
        }
        if (index == errors.size()) {
            if (removal_peels_clean(errors, mask, n, m, row_cnt, col_cnt)) {
                best_cost = cost;
                best_mask = mask;
            }
            return;
        }
        search(index + 1, mask, cost);
        search(index + 1, mask | (1u << index), cost + weights[index]);
    }
};

}  // namespace

FeedbackRepairSet brute_force_min_frs(const ErrorConfiguration& config, CostKind cost,
                                      const CodeParams& params, const CodeGrid* grid) {
    if (config.n() != params.n() || config.m() != params.m()) {
        throw std::invalid_argument("brute_force_min_frs: configuration and params differ");
    }
    const std::vector<GridCoord>& errors = config.errors();
    const std::size_t count = errors.size();
    if (count > 24 || (cost != CostKind::AllOrNone && count > 20)) {
        throw resource_limit_error("brute_force_min_frs: configuration too large to enumerate");
    }

    std::vector<int> row_cnt;
    std::vector<int> col_cnt;

    auto build_result = [&](std::uint32_t mask, const Weight& total) {
        FeedbackRepairSet frs;
        frs.cost = total;
        for (std::size_t e = 0; e < count; ++e) {
            if (mask & (1u << e)) {
                frs.packets.push_back(params.packet_index(errors[e]));
            }
        }
        std::sort(frs.packets.begin(), frs.packets.end());
        return frs;
    };

    if (cost == CostKind::AllOrNone) {
        // Smallest subset first; combinations in lexicographic order.
        for (std::size_t size = 0; size <= count; ++size) {
            std::vector<std::size_t> pick(size);
            std::iota(pick.begin(), pick.end(), 0);
            while (true) {
                std::uint32_t mask = 0;
                for (std::size_t idx : pick) {
                    mask |= 1u << idx;
                }
                if (removal_peels_clean(errors, mask, config.n(), config.m(), row_cnt, col_cnt)) {
                    return build_result(mask, Weight(static_cast<long long>(size)));
                }
                // Advance to the next combination.
                std::size_t pos = size;
                while (pos > 0 && pick[pos - 1] == count - (size - pos) - 1) {
                    --pos;
                }
                if (pos == 0) {
                    break;
                }
                ++pick[pos - 1];
                for (std::size_t i = pos; i < size; ++i) {
                    pick[i] = pick[i - 1] + 1;
                }
            }
        }
        throw std::logic_error("brute_force_min_frs: removing every error must peel clean");
    }

    std::vector<Weight> weights;
    weights.reserve(count);
    Weight total(0);
    for (const GridCoord& c : errors) {
        const std::size_t k = params.packet_index(c);
        if (cost == CostKind::Graded) {
            if (grid == nullptr) {
                throw std::invalid_argument("brute_force_min_frs: Graded cost needs the grid");
            }
            const Packet& p = grid->at(c);
            const std::vector<std::uint8_t>* mask =
                p.status == PacketStatus::BitCorrupted ? &p.corruption_mask : nullptr;
            weights.push_back(packet_weight(cost, k, params, mask));
        } else {
            weights.push_back(packet_weight(cost, k, params));
        }
        total += weights.back();
    }

    WeightedSearch search{errors, weights, config.n(), config.m(), {}, {}, total + Weight(1), 0};
    search.search(0, 0, Weight(0));
    return build_result(search.best_mask, search.best_cost);
}

}  // namespace rfec
