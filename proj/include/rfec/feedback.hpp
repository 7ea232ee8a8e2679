#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/rational.hpp>

#include "rfec/codec.hpp"
#include "rfec/grid.hpp"

namespace rfec {

// Repair costs are exact rationals so that the modified-all-or-none weight
// 1 + 1/(N+1) never suffers float ties.
using Weight = boost::rational<long long>;

inline double weight_to_double(const Weight& w) {
    return boost::rational_cast<double>(w);
}

enum class CostKind {
    AllOrNone,          // every packet costs 1
    ModifiedAllOrNone,  // sources cost 1 + 1/(N+1), parity packets cost 1
    Graded,             // number of corrupted bits
};

struct GadgetEdge {
    int row = 0;            // row vertex index in [0, n]
    int col = 0;            // column vertex index in [0, m]
    PacketIndex packet = 0;  // the erroneous cell's packet
    Weight weight{1};
};

struct GadgetCounts {
    std::size_t edges = 0;           // N_e
    int rows_touched = 0;            // R
    int cols_touched = 0;            // C
    int components = 0;              // N_cc, isolated vertices included
    int nonsingleton_components = 0; // N_nscc
};

// Weighted bipartite gadget: one vertex per row and per column of the grid,
// one edge per erroneous packet. A subgraph of K_{n+1,m+1}.
class CoordinatesGraph {
public:
    CoordinatesGraph(int n, int m, std::vector<GadgetEdge> edges);

    int n() const { return n_; }
    int m() const { return m_; }
    const std::vector<GadgetEdge>& edges() const { return edges_; }  // ascending packet index
    GadgetCounts counts() const;
    bool acyclic() const;

private:
    int n_;
    int m_;
    std::vector<GadgetEdge> edges_;
};

// Repair cost of one packet under the given cost function. Graded needs the
// packet's corruption mask and rejects an empty one.
Weight packet_weight(CostKind cost, PacketIndex k, const CodeParams& params,
                     const std::vector<std::uint8_t>* mask = nullptr);

using MaskLookup = std::function<const std::vector<std::uint8_t>*(GridCoord)>;

CoordinatesGraph build_gadget(const ErrorConfiguration& config, CostKind cost,
                              const CodeParams& params, const MaskLookup& masks = {});
// Convenience overload pulling Graded masks out of a received grid.
CoordinatesGraph build_gadget(const ErrorConfiguration& config, CostKind cost,
                              const CodeGrid& grid);

// Errors whose retransmission turns the configuration into a good one.
struct FeedbackRepairSet {
    std::vector<PacketIndex> packets;  // ascending
    Weight cost{0};

    bool empty() const { return packets.empty(); }
    std::size_t size() const { return packets.size(); }
};

// Minimum FRS for unit weights: the back edges of a depth-first spanning
// forest, visiting vertices in ascending label order (rows before columns)
// and edges in ascending packet order. Linear time. |result| =
// N_e - R - C + N_nscc.
FeedbackRepairSet min_frs_unit(const CoordinatesGraph& g);

// Minimum FRS for arbitrary positive weights: the complement of a
// maximum-weight spanning forest (Kruskal, descending weight, packet index
// as tie break).
FeedbackRepairSet min_frs_weighted(const CoordinatesGraph& g);

// N_e - R - C + N_nscc.
long long repair_cost_formula(long long n_e, long long rows_touched, long long cols_touched,
                              long long nonsingleton_components);

}  // namespace rfec
