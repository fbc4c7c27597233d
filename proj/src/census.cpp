#include "kneser/census.hpp"

#include "kneser/bounds.hpp"

namespace kneser {

const char *to_string(Method method)
{
    return method == Method::ClosedForm ? "ClosedForm" : "ExactSearch";
}

namespace {

enum class Status { Known, AboveCap, Unresolved };

struct Classified {
    Status status;
    int det = 0;
    Method method = Method::ClosedForm;
};

// Det(K(n, k)) when it is at most cap.
Classified classify(int n, int k, int cap, const SearchBudget &budget)
{
    const auto instance = Instance::determining(n, k);
    if (auto exact = known_exact(instance))
        return exact->value <= cap ? Classified{Status::Known, exact->value, Method::ClosedForm}
                                   : Classified{Status::AboveCap};
    if (lower_bound(instance) > cap)
        return {Status::AboveCap};
    SearchBudget capped = budget;
    capped.max_r = std::min(cap, n - k);
    const DetResult result = det_exact(instance, capped);
    if (result.value)
        return {Status::Known, *result.value, Method::ExactSearch};
    if (result.certificate == Certificate::AboveCap)
        return {Status::AboveCap};
    return {Status::Unresolved};
}

void require_r(int r)
{
    if (r < 2 || r > 20)
        throw out_of_range("census needs 2 <= r <= 20");
}

Rational two_pow(int e)
{
    Rational out = 1;
    for (int i = 0; i < std::abs(e); ++i)
        out *= 2;
    return e >= 0 ? out : Rational(1) / out;
}

long ceil_div(long a, long b)
{
    // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

long floor_div(long a, long b)
{
    return a >= 0 ? a / b : -((-a + b - 1) / b);
}

} // namespace

std::vector<CensusRecord> census_upto(int r_max, const SearchBudget &budget)
{
    require_r(r_max);
    std::vector<CensusRecord> records(static_cast<std::size_t>(r_max) - 1);
    for (int r = 2; r <= r_max; ++r)
        records[static_cast<std::size_t>(r) - 2].r = r;

    const int n_max = (1 << r_max) - 1;
    for (int n = 3; n <= n_max; ++n) {
        for (int k = 1; 2 * k < n; ++k) {
            const Classified c = classify(n, k, r_max, budget);
            if (c.status == Status::AboveCap)
                continue;
            if (c.status == Status::Unresolved) {
                // unknown value: could belong to any record that includes n
                for (auto &rec : records)
                    if (n <= (1 << rec.r) - 1)
                        rec.unresolved.emplace_back(n, k);
                continue;
            }
            auto &rec = records[static_cast<std::size_t>(c.det) - 2];
            rec.members.push_back({n, k, c.det, c.method});
        }
    }
    long cumulative = 0;
    for (auto &rec : records) {
        rec.f = static_cast<long>(rec.members.size());
        cumulative += rec.f;
        rec.F = cumulative;
    }
    return records;
}

CensusRecord f_count(int r, const SearchBudget &budget)
{
    return census_upto(r, budget).back();
}

long Bracket::excess() const noexcept
{
    if (B.empty())
        return 0;
    long overlap = 0;
    if (!A.empty())
        overlap = std::max(0L, std::min(A.hi, B.hi) - std::max(A.lo, B.lo) + 1);
    return B.size() - overlap;
}

Bracket brackets(long t, int r)
{
    if (r < 2 || r > 62)
        throw out_of_range("brackets needs 2 <= r <= 62");
    if (t < 3 || t > (1L << r) - 1)
        throw out_of_range("brackets needs 3 <= t <= 2^r - 1");
    const long top = ceil_div(t, 2) - 1;
    return {t, r, {ceil_div(2 * t, r) - 1, top}, {floor_div(2 * t - 2, r) - 1, top}};
}

Rational F_lower_formula(int r)
{
    if (r < 1)
        throw out_of_range("F_lower_formula needs r >= 1");
    const Rational bracket = two_pow(2 * r - 2) - two_pow(r - 2) - Rational(3, 2);
    return Rational(r - 4, r) * bracket - two_pow(r) + 3;
}

Rational F_upper_formula(int r)
{
    return F_lower_formula(r) + 3 * (two_pow(r) - 3);
}

bool GrowthReport::all_hold() const
{
    if (partial)
        return false;
    for (const auto &row : rows)
        if (!row.dominates_sum || !row.doubles || (row.convex && !*row.convex))
            return false;
    return true;
}

GrowthReport growth_check(int r_max, const SearchBudget &budget)
{
    if (r_max < 3)
        throw out_of_range("growth_check needs r_max >= 3");
    GrowthReport report;
    report.records = census_upto(r_max, budget);
    for (const auto &rec : report.records)
        report.partial = report.partial || rec.partial();

    auto f = [&](int r) { return report.records[static_cast<std::size_t>(r) - 2].f; };
    auto F = [&](int r) { return report.records[static_cast<std::size_t>(r) - 2].F; };
    for (int r = 2; r < r_max; ++r) {
        GrowthRow row{r, f(r + 1), F(r), f(r + 1) >= F(r), F(r + 1) >= 2 * F(r), std::nullopt};
        if (r >= 3)
            row.convex = f(r + 1) + f(r - 1) >= 2 * f(r);
        report.rows.push_back(row);
    }
    return report;
}

std::vector<ThresholdMismatch> threshold_rule_mismatches(int r, const SearchBudget &budget)
{
    require_r(r);
    std::vector<ThresholdMismatch> out;
    for (int t = 3; t <= (1 << r) - 1; ++t) {
        for (int k = 1; 2 * k < t; ++k) {
            const bool rule = t <= r * (k + 1) / 2 + 1;
            const Classified c = classify(t, k, r, budget);
            if (c.status == Status::Unresolved)
                continue;
            const bool actual = c.status == Status::Known;
            if (rule != actual)
                out.push_back({t, k, actual ? c.det : r + 1});
        }
    }
    return out;
}

} // namespace kneser
