#include <algorithm>
#include <random>

#include "doctest.h"
#include "rfec/analysis.hpp"
#include "rfec/feedback.hpp"

using namespace rfec;

namespace {

// 21 errors on a 7x10 grid in three components: a full 3x3 block, a 4-cycle,
// and a two-row comb; R = 7, C = 10, N_nscc = 3, minimum repair size 7.
ErrorConfiguration three_component_fixture() {
    std::vector<GridCoord> cells;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            cells.push_back({i, j});
        }
    }
    cells.insert(cells.end(), {{3, 3}, {3, 4}, {4, 3}, {4, 4}});
    for (int j = 5; j <= 9; ++j) {
        cells.push_back({5, j});
    }
    cells.insert(cells.end(), {{6, 5}, {6, 6}, {6, 7}});
    return {6, 9, std::move(cells)};
}

ErrorConfiguration four_corner_cycle() {
    return {2, 2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}}};
}

ErrorConfiguration config_from_mask(int n, int m, std::uint32_t mask) {
    std::vector<GridCoord> cells;
    const int cols = m + 1;
    for (int bit = 0; bit < (n + 1) * (m + 1); ++bit) {
        if (mask & (1u << bit)) {
            cells.push_back({bit / cols, bit % cols});
        }
    }
    return {n, m, std::move(cells)};
}

bool removal_is_good(const ErrorConfiguration& config, std::uint32_t removed) {
    std::vector<GridCoord> kept;
    for (std::size_t e = 0; e < config.errors().size(); ++e) {
        if (!(removed & (1u << e))) {
            kept.push_back(config.errors()[e]);
        }
    }
    return is_good_configuration(ErrorConfiguration(config.n(), config.m(), std::move(kept)));
}

// `removed` indexes config.errors(); edges are matched by coordinate.
bool edge_subset_breaks_cycles(const ErrorConfiguration& config, const CoordinatesGraph& g,
                               std::uint32_t removed) {
    std::vector<GridCoord> dropped;
    for (std::size_t e = 0; e < config.errors().size(); ++e) {
        if (removed & (1u << e)) {
            dropped.push_back(config.errors()[e]);
        }
    }
    std::vector<GadgetEdge> kept;
    for (const GadgetEdge& edge : g.edges()) {
        if (!std::binary_search(dropped.begin(), dropped.end(), GridCoord{edge.row, edge.col})) {
            kept.push_back(edge);
        }
    }
    return CoordinatesGraph(g.n(), g.m(), std::move(kept)).acyclic();
}

}  // namespace

TEST_CASE("gadget construction") {
    SUBCASE("empty configuration: edgeless graph, every vertex its own component") {
        CoordinatesGraph g = build_gadget(ErrorConfiguration(3, 4), CostKind::AllOrNone,
                                          CodeParams(3, 4));
        GadgetCounts c = g.counts();
        CHECK(c.edges == 0);
        CHECK(c.components == 3 + 4 + 2);
        CHECK(c.nonsingleton_components == 0);
        CHECK(g.acyclic());
    }
    SUBCASE("three-component fixture counts") {
        CoordinatesGraph g =
            build_gadget(three_component_fixture(), CostKind::AllOrNone, CodeParams(6, 9));
        GadgetCounts c = g.counts();
        CHECK(c.edges == 21);
        CHECK(c.rows_touched == 7);
        CHECK(c.cols_touched == 10);
        CHECK(c.nonsingleton_components == 3);
        CHECK(c.components == 3);  // every row and column is touched
    }
    SUBCASE("four-corner cycle is a 4-cycle") {
        CoordinatesGraph g = build_gadget(four_corner_cycle(), CostKind::AllOrNone, CodeParams(2, 2));
        CHECK(g.edges().size() == 4);
        CHECK_FALSE(g.acyclic());
        GadgetCounts c = g.counts();
        CHECK(c.nonsingleton_components == 1);
        CHECK(c.rows_touched == 2);
        CHECK(c.cols_touched == 2);
    }
}

TEST_CASE("packet weights") {
    CodeParams params(2, 2);  // N = 9
    CHECK(packet_weight(CostKind::AllOrNone, 0, params) == Weight(1));
    CHECK(packet_weight(CostKind::AllOrNone, 8, params) == Weight(1));
    CHECK(packet_weight(CostKind::ModifiedAllOrNone, 0, params) == Weight(11, 10));
    CHECK(packet_weight(CostKind::ModifiedAllOrNone, 3, params) == Weight(11, 10));
    CHECK(packet_weight(CostKind::ModifiedAllOrNone, 4, params) == Weight(1));  // parity
    std::vector<std::uint8_t> mask = {0x07};
    CHECK(packet_weight(CostKind::Graded, 0, params, &mask) == Weight(3));
    std::vector<std::uint8_t> empty_mask = {0x00};
    CHECK_THROWS_AS(packet_weight(CostKind::Graded, 0, params, &empty_mask), std::invalid_argument);
    CHECK_THROWS_AS(packet_weight(CostKind::Graded, 0, params, nullptr), std::invalid_argument);
}

TEST_CASE("min_frs_unit") {
    SUBCASE("three-component fixture costs 7") {
        CoordinatesGraph g =
            build_gadget(three_component_fixture(), CostKind::AllOrNone, CodeParams(6, 9));
        FeedbackRepairSet frs = min_frs_unit(g);
        CHECK(frs.size() == 7);
        CHECK(frs.cost == Weight(7));
    }
    SUBCASE("edgeless graph needs nothing") {
        CoordinatesGraph g(2, 2, {});
        CHECK(min_frs_unit(g).empty());
        CHECK(min_frs_unit(g).cost == Weight(0));
    }
    SUBCASE("a 4-cycle needs one edge") {
        CoordinatesGraph g = build_gadget(four_corner_cycle(), CostKind::AllOrNone, CodeParams(2, 2));
        FeedbackRepairSet frs = min_frs_unit(g);
        CHECK(frs.size() == 1);
    }
    SUBCASE("non-unit weights rejected") {
        CoordinatesGraph g =
            build_gadget(four_corner_cycle(), CostKind::ModifiedAllOrNone, CodeParams(2, 2));
        CHECK_THROWS_AS(min_frs_unit(g), std::invalid_argument);
    }
    SUBCASE("deterministic output") {
        CoordinatesGraph g =
            build_gadget(three_component_fixture(), CostKind::AllOrNone, CodeParams(6, 9));
        CHECK(min_frs_unit(g).packets == min_frs_unit(g).packets);
    }
}

TEST_CASE("min_frs_weighted") {
    SUBCASE("4-cycle with distinct weights drops the cheapest edge") {
        std::vector<GadgetEdge> edges = {
            {0, 0, 0, Weight(5)}, {0, 1, 1, Weight(1)}, {1, 0, 2, Weight(2)}, {1, 1, 3, Weight(3)}};
        CoordinatesGraph g(1, 1, edges);
        FeedbackRepairSet frs = min_frs_weighted(g);
        CHECK(frs.packets == std::vector<std::size_t>{1});
        CHECK(frs.cost == Weight(1));
    }
    SUBCASE("unit weights match the DFS solver") {
        std::mt19937_64 rng(42);
        for (int round = 0; round < 300; ++round) {
            const int n = 1 + static_cast<int>(rng() % 5);
            const int m = 1 + static_cast<int>(rng() % 5);
            std::vector<GridCoord> cells;
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; j <= m; ++j) {
                    if ((rng() & 3) == 0) {
                        cells.push_back({i, j});
                    }
                }
            }
            CoordinatesGraph g = build_gadget(ErrorConfiguration(n, m, cells), CostKind::AllOrNone,
                                              CodeParams(n, m));
            CHECK(min_frs_weighted(g).cost == min_frs_unit(g).cost);
        }
    }
    SUBCASE("modified cost prefers parity packets on the corner cycle") {
        // Corner cells of the 3x3 grid: one source (weight 11/10) and three
        // parity packets (weight 1); the minimum picks a parity edge.
        CoordinatesGraph g =
            build_gadget(four_corner_cycle(), CostKind::ModifiedAllOrNone, CodeParams(2, 2));
        FeedbackRepairSet frs = min_frs_weighted(g);
        CHECK(frs.cost == Weight(1));
        REQUIRE(frs.size() == 1);
        CHECK(frs.packets[0] >= CodeParams(2, 2).source_count());
        FeedbackRepairSet brute = brute_force_min_frs(four_corner_cycle(),
                                                      CostKind::ModifiedAllOrNone, CodeParams(2, 2));
        CHECK(brute.cost == frs.cost);
    }
}

TEST_CASE("repair cost formula") {
    CHECK(repair_cost_formula(21, 7, 10, 3) == 7);
    CHECK(repair_cost_formula(1, 1, 1, 1) == 0);
    CHECK(repair_cost_formula(4, 2, 2, 1) == 1);
}

TEST_CASE("feedback repair sets are exactly feedback edge sets (exhaustive, n=m<=2)") {
    for (auto [n, m] : {std::pair{1, 1}, {1, 2}, {2, 2}}) {
        const int cell_count = (n + 1) * (m + 1);
        for (std::uint32_t mask = 0; mask < (1u << cell_count); ++mask) {
            ErrorConfiguration config = config_from_mask(n, m, mask);
            CoordinatesGraph g = build_gadget(config, CostKind::AllOrNone, CodeParams(n, m));
            const std::size_t e = config.error_count();
            for (std::uint32_t removed = 0; removed < (1u << e); ++removed) {
                REQUIRE(removal_is_good(config, removed) == edge_subset_breaks_cycles(config, g, removed));
            }
        }
    }
}

TEST_CASE("unit solver is optimal and satisfies the counting identity") {
    std::mt19937_64 rng(2024);
    std::vector<int> row_buf, col_buf;
    for (int round = 0; round < 400; ++round) {
        const int n = 1 + static_cast<int>(rng() % 10);
        const int m = 1 + static_cast<int>(rng() % 10);
        std::vector<GridCoord> cells;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= m; ++j) {
                if ((rng() % 8) == 0) {
                    cells.push_back({i, j});
                }
            }
        }
        ErrorConfiguration config(n, m, cells);
        CoordinatesGraph g = build_gadget(config, CostKind::AllOrNone, CodeParams(n, m));
        FeedbackRepairSet frs = min_frs_unit(g);
        GadgetCounts c = g.counts();

        CHECK(static_cast<long long>(frs.size()) ==
              repair_cost_formula(static_cast<long long>(c.edges), c.rows_touched, c.cols_touched,
                                  c.nonsingleton_components));
        CHECK(c.components ==
              c.nonsingleton_components + (n + 1 - c.rows_touched) + (m + 1 - c.cols_touched));
        CHECK(c.rows_touched == config.rows_touched());
        CHECK(c.cols_touched == config.cols_touched());

        // The complement of the returned FRS is a forest.
        std::vector<GadgetEdge> kept;
        for (const GadgetEdge& edge : g.edges()) {
            if (!std::binary_search(frs.packets.begin(), frs.packets.end(), edge.packet)) {
                kept.push_back(edge);
            }
        }
        CHECK(CoordinatesGraph(n, m, kept).acyclic());

        // Removing the FRS makes the configuration good.
        std::vector<GridCoord> remaining;
        for (const GridCoord& cell : config.errors()) {
            const std::size_t packet = CodeParams(n, m).packet_index(cell);
            if (!std::binary_search(frs.packets.begin(), frs.packets.end(), packet)) {
                remaining.push_back(cell);
            }
        }
        CHECK(is_good_configuration(ErrorConfiguration(n, m, remaining)));
    }
}

TEST_CASE("count relations on random configurations") {
    std::mt19937_64 rng(555);
    for (int round = 0; round < 300; ++round) {
        const int n = 1 + static_cast<int>(rng() % 8);
        const int m = 1 + static_cast<int>(rng() % 8);
        std::vector<GridCoord> cells;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= m; ++j) {
                if ((rng() % 5) == 0) {
                    cells.push_back({i, j});
                }
            }
        }
        ErrorConfiguration config(n, m, cells);
        GadgetCounts c =
            build_gadget(config, CostKind::AllOrNone, CodeParams(n, m)).counts();
        CHECK(c.nonsingleton_components >= 0);
        CHECK(c.nonsingleton_components <= std::min(c.rows_touched, c.cols_touched));
        if (c.edges > 0) {
            CHECK(c.edges >= static_cast<std::size_t>(std::max(c.rows_touched, c.cols_touched)));
        }
    }
}

TEST_CASE("unit cost is at most K, with equality when everything is erroneous") {
    for (auto [n, m] : {std::pair{1, 1}, {2, 3}, {4, 4}}) {
        std::vector<GridCoord> all;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= m; ++j) {
                all.push_back({i, j});
            }
        }
        CoordinatesGraph g = build_gadget(ErrorConfiguration(n, m, all), CostKind::AllOrNone,
                                          CodeParams(n, m));
        CHECK(min_frs_unit(g).size() == static_cast<std::size_t>(n * m));
    }
}

TEST_CASE("duplicate and invalid gadget edges are rejected") {
    CHECK_THROWS_AS(CoordinatesGraph(1, 1, {{0, 0, 0, Weight(1)}, {0, 0, 1, Weight(1)}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(CoordinatesGraph(1, 1, {{0, 2, 0, Weight(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(CoordinatesGraph(1, 1, {{0, 0, 0, Weight(0)}}), std::invalid_argument);
}
