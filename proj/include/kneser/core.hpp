#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kneser/errors.hpp"

namespace kneser {

// Ground-set elements are 1-based: [n] = {1, ..., n}.
using Element = int;

// Column of the signature matrix: bit i is set iff the element belongs to set i.
using Signature = std::uint64_t;

inline constexpr int kMaxFamilySize = 64;

enum class Regime { Determining, Auxiliary };

const char *to_string(Regime regime);

// The pair (n, k) of a Kneser graph K(n, k).
// Determining regime requires n > 2k, auxiliary regime allows n = 2k.
class Instance {
public:
    Instance(int n, int k, Regime regime);

    static Instance determining(int n, int k) { return {n, k, Regime::Determining}; }
    static Instance auxiliary(int n, int k) { return {n, k, Regime::Auxiliary}; }

    int n() const noexcept { return n_; }
    int k() const noexcept { return k_; }
    Regime regime() const noexcept { return regime_; }

    bool operator==(const Instance &) const = default;

private:
    int n_;
    int k_;
    Regime regime_;
};

// Why (n, k) is not a valid instance for the regime, or nullopt if it is.
std::optional<std::string> instance_violation(int n, int k, Regime regime);

// A k-subset of [n], stored sorted ascending.
class VertexSet {
public:
    VertexSet() = default;
    explicit VertexSet(std::vector<Element> elements);
    VertexSet(std::initializer_list<Element> elements) : VertexSet(std::vector<Element>(elements)) {}

    const std::vector<Element> &elements() const noexcept { return elements_; }
    int arity() const noexcept { return static_cast<int>(elements_.size()); }
    bool contains(Element e) const;

    auto begin() const noexcept { return elements_.begin(); }
    auto end() const noexcept { return elements_.end(); }

    auto operator<=>(const VertexSet &) const = default;

private:
    std::vector<Element> elements_;
};

// Ordered list of k-subsets V_1, ..., V_r of [n].
class Family {
public:
    Family(Instance instance, std::vector<VertexSet> sets);
    Family(Instance instance, const std::vector<std::vector<Element>> &sets);

    const Instance &instance() const noexcept { return instance_; }
    const std::vector<VertexSet> &sets() const noexcept { return sets_; }
    int size() const noexcept { return static_cast<int>(sets_.size()); }
    int n() const noexcept { return instance_.n(); }
    int k() const noexcept { return instance_.k(); }

    // Same sets read on another instance (validated against it).
    Family reread(Instance instance) const { return Family(instance, sets_); }

    std::vector<std::vector<Element>> as_lists() const;

    bool operator==(const Family &) const = default;

private:
    Instance instance_;
    std::vector<VertexSet> sets_;
};

// r x n incidence matrix, stored column-wise as bitmasks.
class SignatureMatrix {
public:
    explicit SignatureMatrix(const Family &family);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return static_cast<int>(columns_.size()); }

    Signature column(Element e) const { return columns_.at(static_cast<std::size_t>(e - 1)); }
    bool at(int row, Element e) const { return (column(e) >> row) & 1U; }
    // N_e: number of sets containing e.
    int weight(Element e) const;
    std::vector<bool> row(int i) const;

    const std::vector<Signature> &columns() const noexcept { return columns_; }

private:
    int rows_;
    std::vector<Signature> columns_;
};

SignatureMatrix signature_matrix(const Family &family);

// True iff some set contains exactly one of a and b.
bool separates(const Family &family, Element a, Element b);

// Regime-agnostic core of the separation semantics: all n columns pairwise distinct.
bool signatures_distinct(const Family &family);

// First pair (a < b) in lexicographic order that no set separates.
std::optional<std::pair<Element, Element>> first_unseparated_pair(const Family &family);

bool is_determining(const Family &family);
bool is_auxiliary(const Family &family);

std::vector<Element> uncovered_elements(const Family &family);
std::vector<Element> common_elements(const Family &family);
bool has_duplicate_sets(const Family &family);

// A relabeling is a permutation of [n] given as perm[old] = new, with perm[0] unused.
using Relabeling = std::vector<Element>;

Relabeling identity_relabeling(int n);
Relabeling transposition(int n, Element a, Element b);
Family relabel(const Family &family, std::span<const Element> perm);

// Labels sorted by descending N_e, ties by ascending original label.
Relabeling canonical_relabeling(const Family &family);
Family canonicalize(const Family &family);

} // namespace kneser
