#pragma once

#include <cstdint>
#include <optional>

#include "kneser/core.hpp"

namespace kneser {

// Searches are refused above this many rows: the candidate pool is all 2^r column vectors.
inline constexpr int kMaxSearchRows = 16;

struct SearchBudget {
    // Largest family size tried by det_exact; 0 means n - k, the proven upper bound.
    int max_r = 0;
    std::optional<std::uint64_t> node_limit = 1'000'000'000;
    std::optional<double> time_limit; // seconds
    // Worker threads for the top-level branch fan-out; 0 means hardware concurrency.
    unsigned threads = 0;
};

enum class Decision { Feasible, Infeasible, BudgetExceeded };

const char *to_string(Decision decision);

struct DecisionResult {
    Decision decision = Decision::BudgetExceeded;
    std::optional<Family> witness;
    std::uint64_t nodes = 0;
};

// Is there a determining family of exactly r sets for the instance?
//
// Equivalent to choosing n distinct columns from {0,1}^r whose sum is (k, ..., k). Candidates are
// scanned in increasing integer value (bit i of a column is membership in set i+1), so the witness
// is the first solution in that order. When n > 2^(r-1) the excluded columns are searched instead.
// Row permutations are broken by requiring the chosen column set to be lexicographically minimal
// among its images under row permutations (all of them for r <= 6, adjacent swaps above).
//
// Witness elements are numbered by ascending column value. A BudgetExceeded result never carries
// a wrong answer; a Feasible result is always backed by a witness.
DecisionResult det_decision(const Instance &instance, int r, const SearchBudget &budget = {});

enum class Certificate { ExactSearch, ClosedForm, BudgetExceeded, AboveCap };

const char *to_string(Certificate certificate);

struct DetResult {
    std::optional<int> value;
    std::optional<Family> witness;
    Certificate certificate = Certificate::BudgetExceeded;
    // Every size below this is proven infeasible (by the lower bound or by exhaustion).
    int proven_lower = 0;
    // Largest r that exhaustive search showed infeasible, if any.
    std::optional<int> last_decided;
    std::uint64_t nodes = 0;
};

// Smallest r with det_decision true, scanning upward from the combined lower bound.
// Stops with AboveCap when budget.max_r is reached without a feasible size.
DetResult det_exact(const Instance &instance, const SearchBudget &budget = {});

} // namespace kneser
