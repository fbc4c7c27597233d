#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kneser/core.hpp"

namespace kneser {

// One candidate bound and the rule it comes from.
struct BoundTerm {
    int value;
    std::string rule;
};

// ceil(log2(n + 1)), by bit length.
int ceil_log2_succ(int n);

// Lower-bound rules:
//   log2         ceil(log2(n+1))
//   multiplicity ceil((2n-2)/(k+1)): at most one uncovered element, at most r elements in one set
std::vector<BoundTerm> lower_bound_terms(const Instance &instance);
int lower_bound(const Instance &instance);

// Upper-bound rules:
//   n-minus-k            n - k
//   k-bound              k, when 2k <= n <= k(k+1)/2
//   triangular           least r in [3, k] with n <= r(r+1)/2 + 1
//   odd-line-plus-steps  ceil(log2(2k+2)) + (n - 2k - 1)
std::vector<BoundTerm> upper_bound_terms(const Instance &instance);
int upper_bound(const Instance &instance);

struct ExactValue {
    int value;
    std::vector<std::string> rules;
};

// Closed-form exact values, applied only inside their proven hypotheses:
//   singletons      k = 1: n - 1
//   dense-formula   n = floor(d(k+1)/2) + 1 with k <= d, d > 2: d
//   dense-interval  floor((d-1)(k+1)/2) < n-1 < floor(d(k+1)/2) with 3 <= k+1 <= d: d
//   odd-line        n = 2k + 1: ceil(log2(n+1))
//   even-line-pow2  n = 2k + 2 a power of two: ceil(log2(n+1))
//   mersenne-line   (n, k) = (2^r - 1, 2^(r-1) - 1): r
// Throws internal_inconsistency if two applicable rules disagree.
std::optional<ExactValue> known_exact(const Instance &instance);

struct BoundsReport {
    Instance instance;
    int lower;
    std::vector<std::string> lower_rules;
    int upper;
    std::vector<std::string> upper_rules;
    std::optional<int> exact;
    std::vector<std::string> exact_rules;
};

// Combined report; when an exact value is known both bounds are clamped to it.
BoundsReport bounds_report(const Instance &instance);

} // namespace kneser
