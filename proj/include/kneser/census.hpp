#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kneser/search.hpp"

namespace kneser {

using Rational = boost::multiprecision::cpp_rational;

enum class Method { ClosedForm, ExactSearch };

const char *to_string(Method method);

struct CensusMember {
    int n;
    int k;
    int det;
    Method method;
};

// Kneser graphs with determining number exactly r, in lexicographic (n, k) order.
struct CensusRecord {
    int r = 0;
    long f = 0;
    // Graphs with determining number at most r.
    long F = 0;
    std::vector<CensusMember> members;
    // Pairs whose status could not be settled within the budget; a partial record undercounts.
    std::vector<std::pair<int, int>> unresolved;

    bool partial() const noexcept { return !unresolved.empty(); }
};

// Every K(n, k) with Det <= r has n <= 2^r - 1, so the scan is finite. Closed forms are used where
// their hypotheses hold, exact search (capped at r) elsewhere.
CensusRecord f_count(int r, const SearchBudget &budget = {});

// Records for r = 2..r_max from one scan.
std::vector<CensusRecord> census_upto(int r_max, const SearchBudget &budget = {});

struct IntInterval {
    long lo;
    long hi;

    bool empty() const noexcept { return lo > hi; }
    long size() const noexcept { return empty() ? 0 : hi - lo + 1; }
    bool contains(long x) const noexcept { return lo <= x && x <= hi; }
};

// For fixed t: A = [ceil(2t/r) - 1, ceil(t/2) - 1] is the k-range claimed sufficient for
// Det(K(t,k)) <= r, B = [floor((2t-2)/r) - 1, ceil(t/2) - 1] the range forced by the lower bound.
struct Bracket {
    long t;
    int r;
    IntInterval A;
    IntInterval B;

    // |B \ A|
    long excess() const noexcept;
};

// Needs 2 <= r <= 62 and 3 <= t <= 2^r - 1; throws out_of_range otherwise.
Bracket brackets(long t, int r);

// ((r-4)/r) [2^(2r-2) - 2^(r-2) - 3/2] - 2^r + 3
Rational F_lower_formula(int r);
// F_lower_formula(r) + 3(2^r - 3)
Rational F_upper_formula(int r);

struct GrowthRow {
    int r;
    long f_next;                      // f(r+1)
    long sum_f;                       // f(2) + ... + f(r)
    bool dominates_sum;               // f(r+1) >= sum_f
    bool doubles;                     // F(r+1) >= 2 F(r)
    std::optional<bool> convex;       // f(r+1) + f(r-1) >= 2 f(r), for r >= 3
};

struct GrowthReport {
    std::vector<CensusRecord> records;
    std::vector<GrowthRow> rows;      // r = 2 .. r_max - 1
    bool partial = false;

    bool all_hold() const;
};

GrowthReport growth_check(int r_max, const SearchBudget &budget = {});

// (t, k, det) where "t <= floor(r(k+1)/2) + 1" disagrees with "Det(K(t,k)) <= r" for t <= 2^r - 1.
// det is the computed value, or r + 1 standing for "more than r".
struct ThresholdMismatch {
    int t;
    int k;
    int det;
};
std::vector<ThresholdMismatch> threshold_rule_mismatches(int r, const SearchBudget &budget = {});

} // namespace kneser
