#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rfec/codec.hpp"
#include "rfec/feedback.hpp"
#include "rfec/grid.hpp"

namespace rfec {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt binomial(std::size_t n, std::size_t k);

// Exact rational equal to the given double (every finite double is one).
BigRational rational_from_double(double x);

// Binomial law of the error count: C(N, n_e) p^n_e (1-p)^(N-n_e).
BigRational law_ne_exact(std::size_t N, const BigRational& p, std::size_t n_e);
double law_ne(std::size_t N, double p, std::size_t n_e);

// Expected number of columns (rows) touched by a uniform configuration of
// exactly n_e errors: (m+1) * (1 - C(N-n-1, n_e)/C(N, n_e)), and the row
// analogue with n and m swapped in the binomial.
BigRational exp_cols_given_ne_exact(int n, int m, std::size_t n_e);
double exp_cols_given_ne(int n, int m, std::size_t n_e);
BigRational exp_rows_given_ne_exact(int n, int m, std::size_t n_e);
double exp_rows_given_ne(int n, int m, std::size_t n_e);

// Dense-regime estimate of the expected minimum repair size for a uniform
// configuration of n_e errors, valid once a single giant non-singleton
// component dominates (n_e ~ (n+1) ln(n+m)):
//   n_e + 1 - E(R|N_e=n_e) - E(C|N_e=n_e)
// evaluated in exact rationals through the two binomial ratios above.
BigRational expected_I_regime3_exact(int n, int m, std::size_t n_e);
double expected_I_regime3(int n, int m, std::size_t n_e);

// Limit of E(I | N_e = n_e) when n_e^2 / ((n+1)(m+1)) -> x in (0,1):
// -(ln(1-x) + x) / 2.
double lambda_of_x(double x);

// Number of acyclic edge subsets (forests) of K_{n+1,m+1} with exactly n_e
// edges, by exhaustive enumeration. Limited to (n+1)(m+1) <= 25 edges.
// Pr(I = 0 | N_e = n_e) = f(n, m, n_e) / C(N, n_e).
std::vector<std::uint64_t> count_acyclic_subgraphs_all(int n, int m);
std::uint64_t count_acyclic_subgraphs(int n, int m, std::size_t n_e);
double prob_good_given_ne(int n, int m, std::size_t n_e);

enum class Statistic {
    ExpectedI,
    ProbIZero,
    ExpectedC,
    ExpectedR,
};

struct ConditionalStats {
    int n = 0;
    int m = 0;
    std::size_t n_e = 0;
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t trials = 0;
};

// Monte Carlo over uniform n_e-subsets of the N cells. ExpectedI evaluates
// the unit-cost minimum FRS per sample.
ConditionalStats mc_conditional(int n, int m, std::size_t n_e, std::size_t trials,
                                std::uint64_t seed, Statistic statistic);

// Exhaustive minimum over all error subsets whose removal peels clean.
// Independent of the coordinates-graph solvers; used as their oracle.
// Limited to |config| <= 24 errors.
FeedbackRepairSet brute_force_min_frs(const ErrorConfiguration& config, CostKind cost,
                                      const CodeParams& params, const CodeGrid* grid = nullptr);

}  // namespace rfec
