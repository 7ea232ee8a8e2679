#include "rfec/feedback.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rfec {

namespace {

// Union-find over the n+m+2 gadget vertices; rows first, then columns.
struct DisjointSet {
    std::vector<int> parent;

    explicit DisjointSet(int size) : parent(static_cast<std::size_t>(size)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        int ra = find(a);
        int rb = find(b);
        if (ra == rb) {
            return false;
        }
        parent[static_cast<std::size_t>(ra)] = rb;
        return true;
    }
};

int col_vertex(int n, int col) {
    return n + 1 + col;
}

}  // namespace

CoordinatesGraph::CoordinatesGraph(int n, int m, std::vector<GadgetEdge> edges)
    : n_(n), m_(m), edges_(std::move(edges)) {
    if (n < 1 || m < 1) {
        throw std::invalid_argument("CoordinatesGraph: dimensions must be >= 1");
    }
    std::vector<char> seen(static_cast<std::size_t>((n + 1) * (m + 1)), 0);
    for (const GadgetEdge& e : edges_) {
        if (e.row < 0 || e.row > n || e.col < 0 || e.col > m) {
            throw std::invalid_argument("CoordinatesGraph: edge endpoint out of range");
        }
        if (e.weight <= Weight(0)) {
            throw std::invalid_argument("CoordinatesGraph: weights must be positive");
        }
        std::size_t slot = static_cast<std::size_t>(e.row) * static_cast<std::size_t>(m + 1) +
                           static_cast<std::size_t>(e.col);
        if (seen[slot]) {
            throw std::invalid_argument("CoordinatesGraph: duplicate edge for one cell");
        }
        seen[slot] = 1;
    }
    std::sort(edges_.begin(), edges_.end(),
              [](const GadgetEdge& a, const GadgetEdge& b) { return a.packet < b.packet; });
}

GadgetCounts CoordinatesGraph::counts() const {
    GadgetCounts c;
    c.edges = edges_.size();
    const int vertices = n_ + m_ + 2;
    DisjointSet ds(vertices);
    std::vector<char> row_seen(static_cast<std::size_t>(n_) + 1, 0);
    std::vector<char> col_seen(static_cast<std::size_t>(m_) + 1, 0);
    for (const GadgetEdge& e : edges_) {
        row_seen[static_cast<std::size_t>(e.row)] = 1;
        col_seen[static_cast<std::size_t>(e.col)] = 1;
        ds.unite(e.row, col_vertex(n_, e.col));
    }
    c.rows_touched = static_cast<int>(std::count(row_seen.begin(), row_seen.end(), 1));
    c.cols_touched = static_cast<int>(std::count(col_seen.begin(), col_seen.end(), 1));

    std::vector<char> root_seen(static_cast<std::size_t>(vertices), 0);
    for (const GadgetEdge& e : edges_) {
        for (int v : {e.row, col_vertex(n_, e.col)}) {
            int r = ds.find(v);
            if (!root_seen[static_cast<std::size_t>(r)]) {
                root_seen[static_cast<std::size_t>(r)] = 1;
                ++c.nonsingleton_components;
            }
        }
    }
    c.components = c.nonsingleton_components + (n_ + 1 - c.rows_touched) + (m_ + 1 - c.cols_touched);
    return c;
}

bool CoordinatesGraph::acyclic() const {
    DisjointSet ds(n_ + m_ + 2);
    for (const GadgetEdge& e : edges_) {
        if (!ds.unite(e.row, col_vertex(n_, e.col))) {
            return false;
        }
    }
    return true;
}

Weight packet_weight(CostKind cost, PacketIndex k, const CodeParams& params,
                     const std::vector<std::uint8_t>* mask) {
    switch (cost) {
        case CostKind::AllOrNone:
            return Weight(1);
        case CostKind::ModifiedAllOrNone: {
            if (k < params.source_count()) {
                const long long denom = static_cast<long long>(params.packet_count()) + 1;
                return Weight(1) + Weight(1, denom);
            }
            return Weight(1);
        }
        case CostKind::Graded: {
            if (mask == nullptr) {
                throw std::invalid_argument("packet_weight: Graded cost needs a corruption mask");
            }
            const std::size_t bits = mask_popcount(*mask);
            if (bits == 0) {
                throw std::invalid_argument("packet_weight: erroneous packet with empty mask");
            }
            return Weight(static_cast<long long>(bits));
        }
    }
    throw std::invalid_argument("packet_weight: unknown cost kind");
}

CoordinatesGraph build_gadget(const ErrorConfiguration& config, CostKind cost,
                              const CodeParams& params, const MaskLookup& masks) {
    if (config.n() != params.n() || config.m() != params.m()) {
        throw std::invalid_argument("build_gadget: configuration and params dimensions differ");
    }
    std::vector<GadgetEdge> edges;
    edges.reserve(config.error_count());
    for (const GridCoord& c : config.errors()) {
        GadgetEdge e;
        e.row = c.row;
        e.col = c.col;
        e.packet = params.packet_index(c);
        if (cost == CostKind::Graded) {
            if (!masks) {
                throw std::invalid_argument("build_gadget: Graded cost needs mask context");
            }
            const std::vector<std::uint8_t>* mask = masks(c);
            e.weight = packet_weight(cost, e.packet, params, mask);
        } else {
            e.weight = packet_weight(cost, e.packet, params);
        }
        edges.push_back(std::move(e));
    }
    return {params.n(), params.m(), std::move(edges)};
}

CoordinatesGraph build_gadget(const ErrorConfiguration& config, CostKind cost,
                              const CodeGrid& grid) {
    MaskLookup masks;
    if (cost == CostKind::Graded) {
        masks = [&grid](GridCoord c) -> const std::vector<std::uint8_t>* {
            const Packet& p = grid.at(c);
            return p.status == PacketStatus::BitCorrupted ? &p.corruption_mask : nullptr;
        };
    }
    return build_gadget(config, cost, grid.params, masks);
}

FeedbackRepairSet min_frs_unit(const CoordinatesGraph& g) {
    for (const GadgetEdge& e : g.edges()) {
        if (e.weight != Weight(1)) {
            throw std::invalid_argument("min_frs_unit: weights must all be 1 (use min_frs_weighted)");
        }
    }
    const int vertices = g.n() + g.m() + 2;
    // Adjacency in ascending packet order; edges() is already sorted.
    std::vector<std::vector<std::pair<int, std::size_t>>> adj(static_cast<std::size_t>(vertices));
    for (std::size_t e = 0; e < g.edges().size(); ++e) {
        const GadgetEdge& edge = g.edges()[e];
        const int u = edge.row;
        const int v = col_vertex(g.n(), edge.col);
        adj[static_cast<std::size_t>(u)].emplace_back(v, e);
        adj[static_cast<std::size_t>(v)].emplace_back(u, e);
    }

    FeedbackRepairSet frs;
    std::vector<char> visited(static_cast<std::size_t>(vertices), 0);
    std::vector<char> edge_seen(g.edges().size(), 0);
    std::vector<std::pair<int, std::size_t>> stack;  // (vertex, next adjacency slot)
    for (int start = 0; start < vertices; ++start) {
        if (visited[static_cast<std::size_t>(start)]) {
            continue;
        }
        visited[static_cast<std::size_t>(start)] = 1;
        stack.emplace_back(start, 0);
        while (!stack.empty()) {
            auto& [v, next] = stack.back();
            if (next >= adj[static_cast<std::size_t>(v)].size()) {
                stack.pop_back();
                continue;
            }
            auto [u, e] = adj[static_cast<std::size_t>(v)][next++];
            if (edge_seen[e]) {
                continue;
            }
            edge_seen[e] = 1;
            if (!visited[static_cast<std::size_t>(u)]) {
                visited[static_cast<std::size_t>(u)] = 1;
                stack.emplace_back(u, 0);
            } else {
                frs.packets.push_back(g.edges()[e].packet);  // back edge
            }
        }
    }
    std::sort(frs.packets.begin(), frs.packets.end());
    frs.cost = Weight(static_cast<long long>(frs.packets.size()));
    return frs;
}

FeedbackRepairSet min_frs_weighted(const CoordinatesGraph& g) {
    std::vector<std::size_t> order(g.edges().size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const GadgetEdge& ea = g.edges()[a];
        const GadgetEdge& eb = g.edges()[b];
        if (ea.weight != eb.weight) {
            return ea.weight > eb.weight;
        }
        return ea.packet < eb.packet;
    });

    DisjointSet ds(g.n() + g.m() + 2);
    FeedbackRepairSet frs;
    for (std::size_t idx : order) {
        const GadgetEdge& e = g.edges()[idx];
        if (!ds.unite(e.row, col_vertex(g.n(), e.col))) {
            frs.packets.push_back(e.packet);
            frs.cost += e.weight;
        }
    }
    std::sort(frs.packets.begin(), frs.packets.end());
    return frs;
}

long long repair_cost_formula(long long n_e, long long rows_touched, long long cols_touched,
                              long long nonsingleton_components) {
    return n_e - rows_touched - cols_touched + nonsingleton_components;
}

}  // namespace rfec
