#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shorsat/cnf.hpp"

namespace shorsat {

struct OracleBudget {
    int max_exhaustive_vars = 24;       // enumeration engine cutoff
    long long max_nodes = 200'000'000;  // search node limit
};

enum class SolveStatus { Satisfiable, Unsatisfiable, Exhausted };

struct SatSearch {
    SolveStatus status = SolveStatus::Exhausted;
    Assignment model; // valid iff status == Satisfiable
};

// Complete DPLL search (watched literals + chronological backtracking).
// Branches on the lowest-index unassigned variable, false first.
// Exhausted is a first-class inconclusive answer, never a verdict.
SatSearch is_satisfiable(const CnfFormula& formula, const OracleBudget& budget = {});

enum class MaxSatEngine { BranchAndBound, Enumeration };

struct MaxSatSolution {
    long long best = 0;   // exact maximum number of simultaneously satisfiable clauses
    Assignment witness;
};

// Exact MAX-SAT optimum. Two independent engines:
//  - Enumeration: plain 2^V sweep, refuses formulas above max_exhaustive_vars.
//  - BranchAndBound: DPLL-style search with the admissible bound
//    "satisfied so far + clauses not yet falsified", connected-component
//    decomposition, and a complete SAT probe that settles satisfiable
//    inputs early.
// Returns nullopt when the node budget runs out (inconclusive).
std::optional<MaxSatSolution> max_sat_exact(const CnfFormula& formula,
                                            const OracleBudget& budget = {},
                                            MaxSatEngine engine = MaxSatEngine::BranchAndBound);

// Method of conditional expectations. Fixes variables one at a time
// (ascending index unless an explicit order is given), each to the value
// maximizing the expected satisfied-clause count under uniform random
// completion; exact ties pick false. The expectation is exact: per-clause
// probabilities are 1 - 2^-w with w the number of distinct unassigned
// variables, so the satisfied count is never below the initial expectation.
Assignment greedy_conditional_expectation(const CnfFormula& formula,
                                          const std::vector<int>* order = nullptr);

// Uniform i.i.d. bits from a seeded mt19937_64 (one engine draw per variable,
// lowest bit taken).
Assignment random_assignment(const CnfFormula& formula, uint64_t seed);

} // namespace shorsat
