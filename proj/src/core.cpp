#include "kneser/core.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace kneser {

const char *to_string(Regime regime)
{
    return regime == Regime::Determining ? "determining" : "auxiliary";
}

std::optional<std::string> instance_violation(int n, int k, Regime regime)
{
    if (k < 1)
        return "k must be at least 1 (got k=" + std::to_string(k) + ")";
    if (n < 3)
        return "n must be at least 3 (got n=" + std::to_string(n) + ")";
    if (regime == Regime::Determining && n <= 2 * k)
        return "determining instances need n > 2k (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
    if (regime == Regime::Auxiliary && n < 2 * k)
        return "auxiliary instances need n >= 2k (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")";
    return std::nullopt;
}

Instance::Instance(int n, int k, Regime regime) : n_(n), k_(k), regime_(regime)
{
    if (auto why = instance_violation(n, k, regime))
        throw invalid_input(*why);
}

VertexSet::VertexSet(std::vector<Element> elements) : elements_(std::move(elements))
{
    std::sort(elements_.begin(), elements_.end());
    if (std::adjacent_find(elements_.begin(), elements_.end()) != elements_.end())
        throw invalid_input("vertex set contains a repeated element");
}

bool VertexSet::contains(Element e) const
{
    return std::binary_search(elements_.begin(), elements_.end(), e);
}

Family::Family(Instance instance, std::vector<VertexSet> sets) : instance_(instance), sets_(std::move(sets))
{
    if (size() > kMaxFamilySize)
        throw invalid_input("families are limited to " + std::to_string(kMaxFamilySize) + " sets");
    for (const auto &s : sets_) {
        if (s.arity() != instance_.k())
            throw invalid_input("set of size " + std::to_string(s.arity()) + " in a family with k=" +
                                std::to_string(instance_.k()));
        if (!s.elements().empty() && (s.elements().front() < 1 || s.elements().back() > instance_.n()))
            throw invalid_input("set element outside [1, " + std::to_string(instance_.n()) + "]");
    }
}

namespace {

std::vector<VertexSet> to_vertex_sets(const std::vector<std::vector<Element>> &lists)
{
    std::vector<VertexSet> out;
    out.reserve(lists.size());
    for (const auto &l : lists)
        out.emplace_back(l);
    return out;
}

} // namespace

Family::Family(Instance instance, const std::vector<std::vector<Element>> &sets)
    : Family(instance, to_vertex_sets(sets))
{
}

std::vector<std::vector<Element>> Family::as_lists() const
{
    std::vector<std::vector<Element>> out;
    out.reserve(sets_.size());
    for (const auto &s : sets_)
        out.push_back(s.elements());
    return out;
}

SignatureMatrix::SignatureMatrix(const Family &family)
    : rows_(family.size()), columns_(static_cast<std::size_t>(family.n()), 0)
{
    for (int i = 0; i < rows_; ++i)
        for (Element e : family.sets()[static_cast<std::size_t>(i)])
            columns_[static_cast<std::size_t>(e - 1)] |= Signature{1} << i;
}

int SignatureMatrix::weight(Element e) const
{
    return std::popcount(column(e));
}

std::vector<bool> SignatureMatrix::row(int i) const
{
    std::vector<bool> out(columns_.size());
    for (std::size_t e = 0; e < columns_.size(); ++e)
        out[e] = (columns_[e] >> i) & 1U;
    return out;
}

SignatureMatrix signature_matrix(const Family &family)
{
    return SignatureMatrix(family);
}

bool separates(const Family &family, Element a, Element b)
{
    const int n = family.n();
    if (a < 1 || a > n || b < 1 || b > n)
        throw out_of_range("element outside [1, " + std::to_string(n) + "]");
    if (a == b)
        throw degenerate_pair("separation needs two distinct elements");
    return std::any_of(family.sets().begin(), family.sets().end(),
                       [&](const VertexSet &s) { return s.contains(a) != s.contains(b); });
}

bool signatures_distinct(const Family &family)
{
    auto cols = SignatureMatrix(family).columns();
    std::sort(cols.begin(), cols.end());
    return std::adjacent_find(cols.begin(), cols.end()) == cols.end();
}

std::optional<std::pair<Element, Element>> first_unseparated_pair(const Family &family)
{
    const SignatureMatrix m(family);
    for (Element a = 1; a <= family.n(); ++a)
        for (Element b = a + 1; b <= family.n(); ++b)
            if (m.column(a) == m.column(b))
                return std::pair{a, b};
    return std::nullopt;
}

bool is_determining(const Family &family)
{
    if (family.instance().regime() != Regime::Determining)
        throw invalid_input("is_determining needs a determining-regime family");
    return signatures_distinct(family);
}

bool is_auxiliary(const Family &family)
{
    if (family.instance().regime() != Regime::Auxiliary)
        throw invalid_input("is_auxiliary needs an auxiliary-regime family");
    return uncovered_elements(family).empty() && signatures_distinct(family);
}

std::vector<Element> uncovered_elements(const Family &family)
{
    const SignatureMatrix m(family);
    std::vector<Element> out;
    for (Element e = 1; e <= family.n(); ++e)
        if (m.column(e) == 0)
            out.push_back(e);
    return out;
}

std::vector<Element> common_elements(const Family &family)
{
    if (family.size() == 0) {
        std::vector<Element> all(static_cast<std::size_t>(family.n()));
        std::iota(all.begin(), all.end(), 1);
        return all;
    }
    const SignatureMatrix m(family);
    const Signature full = family.size() == 64 ? ~Signature{0} : (Signature{1} << family.size()) - 1;
    std::vector<Element> out;
    for (Element e = 1; e <= family.n(); ++e)
        if (m.column(e) == full)
            out.push_back(e);
    return out;
}

bool has_duplicate_sets(const Family &family)
{
    auto sets = family.sets();
    std::sort(sets.begin(), sets.end());
    return std::adjacent_find(sets.begin(), sets.end()) != sets.end();
}

Relabeling identity_relabeling(int n)
{
    Relabeling perm(static_cast<std::size_t>(n) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    return perm;
}

Relabeling transposition(int n, Element a, Element b)
{
    auto perm = identity_relabeling(n);
    std::swap(perm.at(static_cast<std::size_t>(a)), perm.at(static_cast<std::size_t>(b)));
    return perm;
}

Family relabel(const Family &family, std::span<const Element> perm)
{
    const int n = family.n();
    if (static_cast<int>(perm.size()) != n + 1)
        throw invalid_input("relabeling has the wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int e = 1; e <= n; ++e) {
        const Element image = perm[static_cast<std::size_t>(e)];
        if (image < 1 || image > n || seen[static_cast<std::size_t>(image)])
            throw invalid_input("relabeling is not a permutation of [n]");
        seen[static_cast<std::size_t>(image)] = true;
    }
    std::vector<VertexSet> sets;
    sets.reserve(family.sets().size());
    for (const auto &s : family.sets()) {
        std::vector<Element> mapped;
        mapped.reserve(s.elements().size());
        for (Element e : s)
            mapped.push_back(perm[static_cast<std::size_t>(e)]);
        sets.emplace_back(std::move(mapped));
    }
    return Family(family.instance(), std::move(sets));
}

Relabeling canonical_relabeling(const Family &family)
{
    const SignatureMatrix m(family);
    std::vector<Element> order(static_cast<std::size_t>(family.n()));
    std::iota(order.begin(), order.end(), 1);
    std::stable_sort(order.begin(), order.end(),
                     [&](Element a, Element b) { return m.weight(a) > m.weight(b); });
    Relabeling perm(static_cast<std::size_t>(family.n()) + 1, 0);
    for (std::size_t pos = 0; pos < order.size(); ++pos)
        perm[static_cast<std::size_t>(order[pos])] = static_cast<Element>(pos) + 1;
    return perm;
}

Family canonicalize(const Family &family)
{
    return relabel(family, canonical_relabeling(family));
}

} // namespace kneser
