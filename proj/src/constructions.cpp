#include "kneser/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace kneser {

namespace {

using Sets = std::vector<std::vector<Element>>;

void require_determining(const Family &family, const char *operation)
{
    if (family.instance().regime() != Regime::Determining || !is_determining(family))
        throw invalid_input(std::string(operation) + " needs a determining family");
}

std::vector<Element> shifted(const VertexSet &set, int offset)
{
    std::vector<Element> out;
    for (Element e : set)
        out.push_back(e + offset);
    return out;
}

std::vector<Element> range(Element first, Element last)
{
    std::vector<Element> out(static_cast<std::size_t>(std::max(0, last - first + 1)));
    std::iota(out.begin(), out.end(), first);
    return out;
}

std::vector<Element> replaced(std::vector<Element> set, Element from, Element to)
{
    std::replace(set.begin(), set.end(), from, to);
    std::sort(set.begin(), set.end());
    return set;
}

// Labels [1, fixed) sorted by descending multiplicity (ties by label); `fixed` keeps its label.
Relabeling canonical_relabeling_except(const Family &family, Element fixed)
{
    const SignatureMatrix m(family);
    std::vector<Element> order;
    for (Element e = 1; e <= family.n(); ++e)
        if (e != fixed)
            order.push_back(e);
    std::stable_sort(order.begin(), order.end(),
                     [&](Element a, Element b) { return m.weight(a) > m.weight(b); });
    Relabeling perm(static_cast<std::size_t>(family.n()) + 1, 0);
    Element next = 1;
    for (Element e : order) {
        if (next == fixed)
            ++next;
        perm[static_cast<std::size_t>(e)] = next++;
    }
    perm[static_cast<std::size_t>(fixed)] = fixed;
    return perm;
}

} // namespace

Family aux_base(AuxBase which)
{
    if (which == AuxBase::K42)
        return Family(Instance::auxiliary(4, 2), Sets{{1, 2}, {1, 3}, {2, 4}});
    return Family(Instance::auxiliary(6, 3), Sets{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
}

Family aux_double(const Family &family)
{
    const int k = family.k();
    if (family.instance().regime() != Regime::Auxiliary || family.n() != 2 * k || !is_auxiliary(family))
        throw invalid_input("aux_double needs an auxiliary family for (2k, k)");
    Sets sets;
    for (const auto &a : family.sets()) {
        auto v = a.elements();
        auto shifted_copy = shifted(a, 2 * k);
        v.insert(v.end(), shifted_copy.begin(), shifted_copy.end());
        sets.push_back(std::move(v));
    }
    sets.push_back(range(1, 2 * k));
    return Family(Instance::auxiliary(4 * k, 2 * k), sets);
}

Family det_lift_odd(const Family &family)
{
    const int k = family.k();
    if (family.instance().regime() != Regime::Determining || family.n() != 2 * k + 1)
        throw invalid_input("det_lift_odd needs a family for (2k+1, k)");
    if (!is_determining(family))
        throw invalid_input("det_lift_odd needs a determining family");
    if (!common_elements(family).empty())
        throw invalid_input("det_lift_odd needs an empty common intersection");
    if (uncovered_elements(family) != std::vector<Element>{2 * k + 1})
        throw invalid_input("det_lift_odd needs the union to be exactly [2k]");

    Sets sets;
    for (const auto &v : family.sets()) {
        auto w = v.elements();
        auto shifted_copy = shifted(v, 2 * k + 1);
        w.insert(w.end(), shifted_copy.begin(), shifted_copy.end());
        w.push_back(4 * k + 2);
        sets.push_back(std::move(w));
    }
    sets.push_back(range(1, 2 * k + 1));
    return Family(Instance::determining(4 * k + 3, 2 * k + 1), sets);
}

ConstructionTrace aux_set(int k)
{
    if (k < 2)
        throw invalid_input("aux_set needs k >= 2");
    if (k == 2 || k == 3) {
        auto base = aux_base(k == 2 ? AuxBase::K42 : AuxBase::K63);
        const Instance at = base.instance();
        return {{{k == 2 ? "base-K42" : "base-K63", at, at}}, std::move(base)};
    }
    if (k % 2 == 0) {
        auto trace = aux_set(k / 2);
        const Instance from = trace.final.instance();
        trace.final = aux_double(trace.final);
        trace.steps.push_back({"aux-double", from, trace.final.instance()});
        return trace;
    }
    const int l = (k - 1) / 2;
    auto trace = aux_set(l);
    const Family as_determining = trace.final.reread(Instance::determining(2 * l + 1, l));
    const Family lifted = det_lift_odd(as_determining);
    trace.final = lifted.reread(Instance::auxiliary(2 * k, k));
    trace.steps.push_back({"det-lift-odd", as_determining.instance(), trace.final.instance()});
    return trace;
}

Family det_set_odd(int k)
{
    return aux_set(k).final.reread(Instance::determining(2 * k + 1, k));
}

Family construct_triangular(int r)
{
    if (r < 3)
        throw invalid_input("construct_triangular needs r >= 3");
    Sets sets;
    sets.push_back(range(1, r));
    for (int i = 2; i <= r; ++i) {
        std::vector<Element> v;
        // the (i-1)-th smallest element of each earlier set
        for (int j = 0; j < i - 1; ++j)
            v.push_back(sets[static_cast<std::size_t>(j)][static_cast<std::size_t>(i - 2)]);
        const Element first = r * (i - 1) - (i - 1) * (i - 2) / 2 + 1;
        for (Element e = first; e <= first + r - i; ++e)
            v.push_back(e);
        std::sort(v.begin(), v.end());
        sets.push_back(std::move(v));
    }
    return Family(Instance::determining(r * (r + 1) / 2 + 1, r), sets);
}

Family extend_n(const Family &family)
{
    require_determining(family, "extend_n");
    const int n = family.n();
    const int k = family.k();
    const Instance target = Instance::determining(n + 1, k);
    const auto missing = uncovered_elements(family);
    if (missing.empty())
        return family.reread(target);

    auto sets = relabel(family, transposition(n, missing.front(), n)).as_lists();
    auto extra = range(1, k - 1);
    extra.push_back(n + 1);
    sets.push_back(std::move(extra));
    return Family(target, sets);
}

Family reduce_n(const Family &family)
{
    require_determining(family, "reduce_n");
    const Element last = family.n();
    const int n = last - 1;
    if (n <= 2 * family.k())
        throw invalid_input("reduce_n output (" + std::to_string(n) + "," + std::to_string(family.k()) +
                            ") violates n > 2k");
    const Instance target = Instance::determining(n, family.k());

    const auto missing = uncovered_elements(family);
    if (!missing.empty())
        return Family(target, relabel(family, transposition(last, missing.front(), last)).as_lists());

    Family current = canonicalize(family);
    for (std::size_t i = 0; i < current.sets().size(); ++i) {
        if (!current.sets()[i].contains(last))
            continue;
        bool replaced_last = false;
        for (Element t = 1; t <= n && !replaced_last; ++t) {
            if (current.sets()[i].contains(t))
                continue;
            auto sets = current.as_lists();
            sets[i] = replaced(sets[i], last, t);
            Family candidate(current.instance(), sets);
            if (signatures_distinct(candidate)) {
                current = relabel(candidate, canonical_relabeling_except(candidate, last));
                replaced_last = true;
            }
        }
        if (!replaced_last)
            throw internal_inconsistency("reduce_n: no replacement for element " + std::to_string(last) +
                                         " in set " + std::to_string(i + 1));
    }
    Family out(target, current.as_lists());
    if (!is_determining(out))
        throw internal_inconsistency("reduce_n produced a non-determining family");
    return out;
}

Family lift_nk(const Family &family)
{
    require_determining(family, "lift_nk");
    const int n = family.n();
    const int k = family.k();
    if (n + 1 < 2 * k + 3)
        throw invalid_input("lift_nk needs n+1 >= 2k+3 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");

    // A: sets inside [n-1] covering all of it
    Sets base;
    const auto missing = uncovered_elements(family);
    if (missing.empty())
        base = reduce_n(family).as_lists();
    else
        base = relabel(family, transposition(n, missing.front(), n)).as_lists();

    const Family a_family(Instance::auxiliary(n - 1, k), base);
    if (!uncovered_elements(a_family).empty())
        throw internal_inconsistency("lift_nk: reduced family does not cover [n-1]");
    const auto common = common_elements(a_family);
    if (common.size() > 1)
        throw internal_inconsistency("lift_nk: determining family with two common elements");

    Sets sets = base;
    for (auto &s : sets)
        s.push_back(n);
    const Instance target = Instance::determining(n + 1, k + 1);

    if (!common.empty()) {
        const Element a = common.front();
        bool repaired = false;
        for (Element t = 1; t <= n - 1 && !repaired; ++t) {
            if (std::find(sets[0].begin(), sets[0].end(), t) != sets[0].end())
                continue;
            Sets trial = sets;
            trial[0] = replaced(trial[0], a, t);
            if (signatures_distinct(Family(target, trial))) {
                sets = std::move(trial);
                repaired = true;
            }
        }
        if (!repaired)
            throw internal_inconsistency("lift_nk: no replacement for the common element " + std::to_string(a));
    }

    Family out(target, sets);
    if (!is_determining(out))
        throw internal_inconsistency("lift_nk produced a non-determining family");
    return out;
}

} // namespace kneser
