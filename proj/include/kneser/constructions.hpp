#pragma once

#include <string>
#include <vector>

#include "kneser/core.hpp"

namespace kneser {

enum class AuxBase { K42, K63 };

struct TraceStep {
    std::string rule;
    Instance input;
    Instance output;
};

// Recursion path of an auxiliary-set construction, base case first.
struct ConstructionTrace {
    std::vector<TraceStep> steps;
    Family final;
};

// {{1,2},{1,3},{2,4}} on (4,2) and {{1,2,3},{1,4,5},{2,4,6}} on (6,3), auxiliary regime.
Family aux_base(AuxBase which);

// Auxiliary family {A_i} for (2k, k) -> auxiliary family for (4k, 2k) of size r + 1:
// V_i = A_i u (A_i + 2k), V_{r+1} = [2k]. Empty intersection is preserved.
Family aux_double(const Family &family);

// Determining family {V_i} for (2k+1, k) with empty intersection and union [2k] -> determining family
// for (4k+3, 2k+1) of size r + 1 with empty intersection and union [4k+2]:
// W_i = V_i u (V_i + 2k+1) u {4k+2}, W_{r+1} = [2k+1].
Family det_lift_odd(const Family &family);

// Auxiliary family for (2k, k) of size r where 2^(r-1) - 1 < 2k < 2^r - 1, with empty intersection.
// Even k doubles the construction for k/2; odd k lifts the one for (k-1)/2.
ConstructionTrace aux_set(int k);

// aux_set(k) read as a determining family for (2k+1, k); size ceil(log2(2k+2)).
Family det_set_odd(int k);

// r sets of size r on r(r+1)/2 + 1 elements, pairwise meeting in exactly one element.
Family construct_triangular(int r);

// Determining family for (n, k) -> determining family for (n+1, k) of size at most r + 1.
Family extend_n(const Family &family);

// Determining family for (n+1, k) -> determining family of the same size for (n, k); needs n > 2k.
// Element n+1 (after sorting labels by descending multiplicity) is swapped out of each set in turn
// for the smallest label that keeps all signatures distinct, re-sorting labels after each swap.
Family reduce_n(const Family &family);

// Determining family for (n, k) -> determining family of the same size for (n+1, k+1); needs
// n+1 >= 2k+3. Adds element n to every set after arranging the union to be [n-1], then repairs
// a nonempty common intersection {a} by replacing a in the first set.
Family lift_nk(const Family &family);

} // namespace kneser
