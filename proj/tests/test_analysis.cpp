#include <cmath>
#include <random>

#include "doctest.h"
#include "rfec/analysis.hpp"
#include "rfec/errors.hpp"

using namespace rfec;

TEST_CASE("binomial coefficients") {
    CHECK(binomial(4, 2) == 6);
    CHECK(binomial(10, 0) == 1);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(100, 20) == BigInt("535983370403809682970"));
}

TEST_CASE("law of the error count") {
    CHECK(law_ne(4, 0.5, 2) == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(law_ne(17, 0.0, 0) == doctest::Approx(1.0));
    CHECK(law_ne(3, 0.1, 1) == doctest::Approx(0.243).epsilon(1e-12));

    SUBCASE("sums to one exactly") {
        const BigRational p(3, 10);
        BigRational total = 0;
        for (std::size_t k = 0; k <= 25; ++k) {
            total += law_ne_exact(25, p, k);
        }
        CHECK(total == BigRational(1));
    }
    SUBCASE("mean is p*N exactly") {
        const BigRational p(1, 4);
        BigRational mean = 0;
        for (std::size_t k = 0; k <= 20; ++k) {
            mean += law_ne_exact(20, p, k) * BigRational(static_cast<int>(k));
        }
        CHECK(mean == p * BigRational(20));
    }
    SUBCASE("range checks") {
        CHECK_THROWS_AS(law_ne(4, 0.5, 5), std::invalid_argument);
        CHECK_THROWS_AS(law_ne(4, 1.5, 2), std::invalid_argument);
    }
}

TEST_CASE("expected touched columns and rows") {
    CHECK(exp_cols_given_ne(1, 1, 1) == doctest::Approx(1.0));
    CHECK(exp_cols_given_ne_exact(2, 2, 2) == BigRational(7, 4));
    CHECK(exp_cols_given_ne(5, 3, 24) == doctest::Approx(4.0));  // n_e = N hits every column
    CHECK(exp_rows_given_ne(5, 3, 24) == doctest::Approx(6.0));

    SUBCASE("matches exhaustive enumeration at n=m=2, n_e=2") {
        // Average distinct columns over all C(9,2) = 36 configurations.
        int total_cols = 0;
        int total_rows = 0;
        int count = 0;
        for (int a = 0; a < 9; ++a) {
            for (int b = a + 1; b < 9; ++b) {
                ErrorConfiguration config(2, 2, {{a / 3, a % 3}, {b / 3, b % 3}});
                total_cols += config.cols_touched();
                total_rows += config.rows_touched();
                ++count;
            }
        }
        CHECK(exp_cols_given_ne_exact(2, 2, 2) == BigRational(total_cols, count));
        CHECK(exp_rows_given_ne_exact(2, 2, 2) == BigRational(total_rows, count));
    }
    SUBCASE("range checks") {
        CHECK_THROWS_AS(exp_cols_given_ne(2, 2, 10), std::invalid_argument);
    }
}

TEST_CASE("dense-regime expected repair size") {
    // All four cells of the 1x1 code erroneous: the unique configuration is
    // a 4-cycle whose minimum repair size is exactly 1.
    CHECK(expected_I_regime3(1, 1, 4) == doctest::Approx(1.0));

    // Identity with the conditional row/column expectations.
    const BigRational lhs = expected_I_regime3_exact(7, 9, 30);
    const BigRational rhs = BigRational(31) - exp_rows_given_ne_exact(7, 9, 30) -
                            exp_cols_given_ne_exact(7, 9, 30);
    CHECK(lhs == rhs);

    // Frozen big-binomial evaluation at n = m = 30, n_e = 127.
    CHECK(expected_I_regime3(30, 30, 127) == doctest::Approx(66.71017647421077).epsilon(1e-12));
}

TEST_CASE("lambda curve") {
    CHECK(lambda_of_x(0.25) == doctest::Approx(0.01884103622589045).epsilon(1e-12));
    CHECK(lambda_of_x(0.5) == doctest::Approx(0.09657359027997264).epsilon(1e-12));
    CHECK(lambda_of_x(1e-4) == doctest::Approx(2.5e-9).epsilon(1e-3));  // ~x^2/4
    CHECK(lambda_of_x(0.6) > lambda_of_x(0.5));
    CHECK_THROWS_AS(lambda_of_x(0.0), std::invalid_argument);
    CHECK_THROWS_AS(lambda_of_x(1.0), std::invalid_argument);
}

TEST_CASE("forest counts") {
    SUBCASE("K_{2,2}") {
        const auto f = count_acyclic_subgraphs_all(1, 1);
        CHECK(f == std::vector<std::uint64_t>{1, 4, 6, 4, 0});
    }
    SUBCASE("K_{4,4} frozen values") {
        const auto f = count_acyclic_subgraphs_all(3, 3);
        CHECK(f[0] == 1);
        CHECK(f[1] == 16);
        CHECK(f[2] == 120);
        CHECK(f[3] == 560);
        CHECK(f[4] == 1784);
        CHECK(f[5] == 3936);
        CHECK(f[6] == 5632);
        CHECK(f[7] == 4096);  // spanning trees of K_{4,4}: 4^3 * 4^3
        for (std::size_t k = 8; k < f.size(); ++k) {
            CHECK(f[k] == 0);  // a forest on 8 vertices has at most 7 edges
        }
    }
    SUBCASE("empty subgraph always counts once") {
        CHECK(count_acyclic_subgraphs(2, 4, 0) == 1);
    }
    SUBCASE("resource guard") {
        CHECK_THROWS_AS(count_acyclic_subgraphs_all(5, 5), resource_limit_error);
    }
    SUBCASE("probability of decoding without feedback") {
        CHECK(prob_good_given_ne(1, 1, 1) == doctest::Approx(1.0));
        CHECK(prob_good_given_ne(1, 1, 4) == doctest::Approx(0.0));
        CHECK(prob_good_given_ne(1, 1, 3) == doctest::Approx(1.0));  // all 3-subsets are paths
    }
}

TEST_CASE("monte carlo conditional statistics") {
    SUBCASE("degenerate cases are exact") {
        ConditionalStats zero = mc_conditional(3, 3, 0, 1000, 5, Statistic::ExpectedI);
        CHECK(zero.estimate == 0.0);
        CHECK(zero.std_error == 0.0);
        ConditionalStats one = mc_conditional(3, 3, 1, 1000, 5, Statistic::ExpectedI);
        CHECK(one.estimate == 0.0);  // a lone error is always isolated
    }
    SUBCASE("expected columns match the exact formula") {
        ConditionalStats stats = mc_conditional(9, 9, 20, 100000, 17, Statistic::ExpectedC);
        const double exact = exp_cols_given_ne(9, 9, 20);
        CHECK(std::abs(stats.estimate - exact) < 3 * stats.std_error);
        ConditionalStats rows = mc_conditional(9, 9, 20, 100000, 18, Statistic::ExpectedR);
        CHECK(std::abs(rows.estimate - exp_rows_given_ne(9, 9, 20)) < 3 * rows.std_error);
    }
    SUBCASE("good-configuration probability matches forest counting at n=m=2") {
        for (std::size_t n_e : {2ul, 3ul, 4ul, 5ul}) {
            ConditionalStats stats = mc_conditional(2, 2, n_e, 60000, 23 + n_e, Statistic::ProbIZero);
            const double exact = prob_good_given_ne(2, 2, n_e);
            const double sigma = std::sqrt(exact * (1 - exact) / static_cast<double>(stats.trials));
            CHECK(std::abs(stats.estimate - exact) <= 3 * sigma + 1e-12);
        }
    }
    SUBCASE("sparse regime: repair size vanishes when n_e^2 = o(nm)") {
        ConditionalStats stats = mc_conditional(100, 100, 10, 20000, 321, Statistic::ExpectedI);
        CHECK(stats.estimate < 0.05);
    }
    SUBCASE("reproducible for a fixed seed") {
        ConditionalStats a = mc_conditional(4, 4, 7, 2000, 99, Statistic::ExpectedI);
        ConditionalStats b = mc_conditional(4, 4, 7, 2000, 99, Statistic::ExpectedI);
        CHECK(a.estimate == b.estimate);
        CHECK(a.std_error == b.std_error);
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(mc_conditional(2, 2, 10, 10, 0, Statistic::ExpectedI),
                        std::invalid_argument);
        CHECK_THROWS_AS(mc_conditional(2, 2, 1, 0, 0, Statistic::ExpectedI), std::invalid_argument);
    }
}

TEST_CASE("brute force minimum FRS") {
    CodeParams params(2, 2);
    SUBCASE("empty configuration") {
        FeedbackRepairSet frs = brute_force_min_frs(ErrorConfiguration(2, 2),
                                                    CostKind::AllOrNone, params);
        CHECK(frs.empty());
        CHECK(frs.cost == Weight(0));
    }
    SUBCASE("four-corner cycle costs one") {
        ErrorConfiguration cycle(2, 2, {{0, 0}, {0, 2}, {2, 0}, {2, 2}});
        CHECK(brute_force_min_frs(cycle, CostKind::AllOrNone, params).cost == Weight(1));
    }
    SUBCASE("resource guard") {
        std::vector<GridCoord> all;
        for (int i = 0; i <= 4; ++i) {
            for (int j = 0; j <= 4; ++j) {
                all.push_back({i, j});
            }
        }
        CHECK_THROWS_AS(
            brute_force_min_frs(ErrorConfiguration(4, 4, all), CostKind::AllOrNone, CodeParams(4, 4)),
            resource_limit_error);
    }
}
