#include "kneser/bounds.hpp"

#include <algorithm>
#include <bit>

namespace kneser {

namespace {

void require_determining(const Instance &instance)
{
    if (instance.regime() != Regime::Determining)
        throw invalid_input("bounds are defined for determining instances only");
}

int ceil_div(int a, int b)
{
    return (a + b - 1) / b;
}

int best_of(const std::vector<BoundTerm> &terms, bool maximize)
{
    auto cmp = [](const BoundTerm &a, const BoundTerm &b) { return a.value < b.value; };
    return maximize ? std::max_element(terms.begin(), terms.end(), cmp)->value
                    : std::min_element(terms.begin(), terms.end(), cmp)->value;
}

std::vector<std::string> rules_attaining(const std::vector<BoundTerm> &terms, int value)
{
    std::vector<std::string> out;
    for (const auto &t : terms)
        if (t.value == value)
            out.push_back(t.rule);
    return out;
}

} // namespace

int ceil_log2_succ(int n)
{
    return static_cast<int>(std::bit_width(static_cast<unsigned>(n)));
}

std::vector<BoundTerm> lower_bound_terms(const Instance &instance)
{
    require_determining(instance);
    const int n = instance.n();
    const int k = instance.k();
    return {{ceil_log2_succ(n), "log2"}, {ceil_div(2 * n - 2, k + 1), "multiplicity"}};
}

int lower_bound(const Instance &instance)
{
    return best_of(lower_bound_terms(instance), true);
}

std::vector<BoundTerm> upper_bound_terms(const Instance &instance)
{
    require_determining(instance);
    const long n = instance.n();
    const long k = instance.k();
    std::vector<BoundTerm> terms{{static_cast<int>(n - k), "n-minus-k"}};
    if (2 * k <= n && n <= k * (k + 1) / 2)
        terms.push_back({static_cast<int>(k), "k-bound"});
    for (long r = 3; r <= k; ++r) {
        if (n <= r * (r + 1) / 2 + 1) {
            terms.push_back({static_cast<int>(r), "triangular"});
            break;
        }
    }
    terms.push_back({ceil_log2_succ(static_cast<int>(2 * k + 1)) + static_cast<int>(n - 2 * k - 1),
                     "odd-line-plus-steps"});
    return terms;
}

int upper_bound(const Instance &instance)
{
    return best_of(upper_bound_terms(instance), false);
}

std::optional<ExactValue> known_exact(const Instance &instance)
{
    require_determining(instance);
    const long n = instance.n();
    const long k = instance.k();
    std::vector<BoundTerm> hits;

    if (k == 1)
        hits.push_back({static_cast<int>(n - 1), "singletons"});

    // floor(d(k+1)/2) is strictly increasing in d since k+1 >= 2.
    for (long d = std::max(k, 3L); d * (k + 1) / 2 + 1 <= n; ++d)
        if (d * (k + 1) / 2 + 1 == n)
            hits.push_back({static_cast<int>(d), "dense-formula"});

    if (k >= 2) {
        for (long d = std::max(k + 1, 3L); (d - 1) * (k + 1) / 2 < n - 1; ++d)
            if (n - 1 < d * (k + 1) / 2)
                hits.push_back({static_cast<int>(d), "dense-interval"});
    }

    if (n == 2 * k + 1)
        hits.push_back({ceil_log2_succ(static_cast<int>(n)), "odd-line"});

    if (n == 2 * k + 2 && std::has_single_bit(static_cast<unsigned long>(n)))
        hits.push_back({ceil_log2_succ(static_cast<int>(n)), "even-line-pow2"});

    if (std::has_single_bit(static_cast<unsigned long>(n + 1)) && 2 * k + 1 == n && n >= 3)
        hits.push_back({std::countr_zero(static_cast<unsigned long>(n + 1)), "mersenne-line"});

    if (hits.empty())
        return std::nullopt;

    ExactValue out{hits.front().value, {}};
    for (const auto &h : hits) {
        if (h.value != out.value)
            throw internal_inconsistency("closed forms disagree for K(" + std::to_string(n) + "," +
                                         std::to_string(k) + "): " + hits.front().rule + " gives " +
                                         std::to_string(out.value) + ", " + h.rule + " gives " +
                                         std::to_string(h.value));
        out.rules.push_back(h.rule);
    }
    return out;
}

BoundsReport bounds_report(const Instance &instance)
{
    const auto lower_terms = lower_bound_terms(instance);
    const auto upper_terms = upper_bound_terms(instance);
    BoundsReport report{instance, best_of(lower_terms, true), {}, best_of(upper_terms, false), {}, std::nullopt, {}};
    report.lower_rules = rules_attaining(lower_terms, report.lower);
    report.upper_rules = rules_attaining(upper_terms, report.upper);
    if (report.lower > report.upper)
        throw internal_inconsistency("lower bound exceeds upper bound");
    if (auto exact = known_exact(instance)) {
        if (exact->value < report.lower || exact->value > report.upper)
            throw internal_inconsistency("closed form lies outside the bound interval");
        report.exact = exact->value;
        report.exact_rules = exact->rules;
        report.lower = report.upper = exact->value;
        report.lower_rules = report.upper_rules = exact->rules;
    }
    return report;
}

} // namespace kneser
