#include "kneser/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <mutex>
#include <numeric>
#include <thread>

#include "kneser/bounds.hpp"

namespace kneser {

const char *to_string(Decision decision)
{
    switch (decision) {
    case Decision::Feasible: return "Feasible";
    case Decision::Infeasible: return "Infeasible";
    case Decision::BudgetExceeded: return "BudgetExceeded";
    }
    return "?";
}

const char *to_string(Certificate certificate)
{
    switch (certificate) {
    case Certificate::ExactSearch: return "ExactSearch";
    case Certificate::ClosedForm: return "ClosedForm";
    case Certificate::BudgetExceeded: return "BudgetExceeded";
    case Certificate::AboveCap: return "AboveCap";
    }
    return "?";
}

namespace {

using Clock = std::chrono::steady_clock;
using Column = std::uint32_t;

// Row-permutation symmetries, each as the ascending list of moved candidates w paired with the
// preimage u with pi(u) = w. Fixed points never decide a lexicographic comparison.
struct Symmetries {
    std::vector<std::vector<std::pair<Column, Column>>> moved;

    explicit Symmetries(int r)
    {
        const Column count = Column{1} << r;
        auto add = [&](const std::vector<int> &perm) {
            // perm[i] = image row of row i
            std::vector<std::pair<Column, Column>> pairs;
            std::vector<Column> preimage(count);
            for (Column u = 0; u < count; ++u) {
                Column image = 0;
                for (int i = 0; i < r; ++i)
                    image |= ((u >> i) & 1U) << perm[static_cast<std::size_t>(i)];
                preimage[image] = u;
            }
            for (Column w = 0; w < count; ++w)
                if (preimage[w] != w)
                    pairs.emplace_back(w, preimage[w]);
            moved.push_back(std::move(pairs));
        };

        std::vector<int> perm(static_cast<std::size_t>(r));
        std::iota(perm.begin(), perm.end(), 0);
        if (r <= 6) {
            while (std::next_permutation(perm.begin(), perm.end()))
                add(perm);
        } else {
            for (int i = 0; i + 1 < r; ++i) {
                auto swap = perm;
                std::swap(swap[static_cast<std::size_t>(i)], swap[static_cast<std::size_t>(i) + 1]);
                add(swap);
            }
        }
    }
};

// The decision problem with the side (chosen or excluded columns) that is actually searched.
struct Problem {
    int r;
    Column candidates;   // 2^r
    int pick;            // how many columns to select
    int demand;          // required row sum of the selected columns
    bool complemented;   // selected columns are the ones left out of the family
    std::vector<std::vector<long>> binom;
    Symmetries symmetries;

    Problem(int rows, int n, int k)
        : r(rows), candidates(Column{1} << rows), pick(n), demand(k), complemented(false), symmetries(rows)
    {
        const int half = static_cast<int>(candidates / 2);
        if (n > half) {
            complemented = true;
            pick = static_cast<int>(candidates) - n;
            demand = half - k;
        }
        binom.assign(static_cast<std::size_t>(r) + 1, std::vector<long>(static_cast<std::size_t>(r) + 1, 0));
        for (int a = 0; a <= r; ++a) {
            binom[a][0] = 1;
            for (int b = 1; b <= a; ++b)
                binom[a][b] = binom[a - 1][b - 1] + binom[a - 1][b];
        }
    }

    // Candidates in [v, 2^r) with bit i set.
    long ones_from(Column v, int i) const
    {
        const long below = static_cast<long>((v >> (i + 1)) << i) +
                           std::max(0L, static_cast<long>(v & ((Column{2} << i) - 1)) - (1L << i));
        return static_cast<long>(candidates / 2) - below;
    }

    // Weight histogram of candidates in [v, 2^r).
    void weights_from(Column v, std::array<long, 33> &hist) const
    {
        for (int w = 0; w <= r; ++w)
            hist[static_cast<std::size_t>(w)] = binom[r][w];
        for (int b = r - 1; b >= 0; --b) {
            if (!((v >> b) & 1U))
                continue;
            const int above = std::popcount(v >> (b + 1));
            for (int j = 0; j <= b; ++j)
                hist[static_cast<std::size_t>(above + j)] -= binom[b][j];
        }
    }
};

enum class Outcome { Found, Exhausted, Aborted };

struct Shared {
    const Problem &problem;
    std::optional<std::uint64_t> node_limit;
    std::optional<Clock::time_point> deadline;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> out_of_budget{false};
    std::atomic<Column> best_branch{~Column{0}};

    // Nodes a worker counts locally before checking the shared budget; small limits are checked exactly.
    std::uint64_t flush_interval() const
    {
        return node_limit ? std::clamp<std::uint64_t>(*node_limit / 16, 1, 1024) : 1024;
    }
};

class Worker {
public:
    Worker(Shared &shared)
        : shared_(shared), p_(shared.problem), in_set_(p_.candidates, 0), interval_(shared.flush_interval())
    {
    }

    // Explores the subtree whose smallest selected column is `first`.
    Outcome run_branch(Column first, std::vector<Column> &solution)
    {
        branch_ = first;
        std::array<int, 32> demand{};
        demand.fill(p_.demand);
        const int total = p_.demand * p_.r;
        if (!feasible(first, p_.pick, demand, total))
            return Outcome::Exhausted;
        const Outcome result = try_include(first, p_.pick, demand, total);
        flush();
        if (result == Outcome::Found)
            solution = chosen_;
        for (Column c : chosen_)
            in_set_[c] = 0;
        chosen_.clear();
        return result;
    }

    // Whether no branch at or beyond `first` can succeed.
    bool exhausted_from(Column first) const
    {
        std::array<int, 32> demand{};
        demand.fill(p_.demand);
        return !feasible(first, p_.pick, demand, p_.demand * p_.r);
    }

private:
    Outcome try_include(Column v, int remaining, std::array<int, 32> &demand, int demand_sum)
    {
        for (int i = 0; i < p_.r; ++i)
            if (((v >> i) & 1U) && demand[static_cast<std::size_t>(i)] == 0)
                return Outcome::Exhausted;
        in_set_[v] = 1;
        chosen_.push_back(v);
        Outcome result = Outcome::Exhausted;
        if (lex_minimal(v + 1)) {
            for (int i = 0; i < p_.r; ++i)
                demand[static_cast<std::size_t>(i)] -= static_cast<int>((v >> i) & 1U);
            result = descend(v + 1, remaining - 1, demand, demand_sum - std::popcount(v));
            for (int i = 0; i < p_.r; ++i)
                demand[static_cast<std::size_t>(i)] += static_cast<int>((v >> i) & 1U);
        }
        if (result != Outcome::Found) {
            in_set_[v] = 0;
            chosen_.pop_back();
        }
        return result;
    }

    Outcome descend(Column from, int remaining, std::array<int, 32> &demand, int demand_sum)
    {
        if (++local_nodes_ >= interval_ && !flush())
            return Outcome::Aborted;
        if (remaining == 0)
            return demand_sum == 0 ? Outcome::Found : Outcome::Exhausted;

        Column must = 0;
        for (int i = 0; i < p_.r; ++i)
            if (demand[static_cast<std::size_t>(i)] == remaining)
                must |= Column{1} << i;

        for (Column v = from; v < p_.candidates; ++v) {
            // Feasibility only shrinks as the pool [v, 2^r) shrinks.
            if (!feasible(v, remaining, demand, demand_sum))
                break;
            if ((v & must) != must)
                continue;
            const Outcome result = try_include(v, remaining, demand, demand_sum);
            if (result != Outcome::Exhausted)
                return result;
        }
        return Outcome::Exhausted;
    }

    bool feasible(Column v, int remaining, const std::array<int, 32> &demand, int demand_sum) const
    {
        if (static_cast<long>(p_.candidates - v) < remaining)
            return false;
        const long pool = static_cast<long>(p_.candidates - v);
        for (int i = 0; i < p_.r; ++i) {
            const int d = demand[static_cast<std::size_t>(i)];
            if (d > remaining)
                return false;
            const long ones = p_.ones_from(v, i);
            if (ones < d || pool - ones < remaining - d)
                return false;
        }
        std::array<long, 33> hist{};
        p_.weights_from(v, hist);
        long low = 0, high = 0;
        long need = remaining;
        for (int w = 0; w <= p_.r && need > 0; ++w) {
            const long take = std::min(need, hist[static_cast<std::size_t>(w)]);
            low += take * w;
            need -= take;
        }
        need = remaining;
        for (int w = p_.r; w >= 0 && need > 0; --w) {
            const long take = std::min(need, hist[static_cast<std::size_t>(w)]);
            high += take * w;
            need -= take;
        }
        return low <= demand_sum && demand_sum <= high;
    }

    // Positions [0, prefix) are decided. Rejects when some row permutation provably maps the
    // selection to a lexicographically smaller one.
    bool lex_minimal(Column prefix) const
    {
        for (const auto &pairs : p_.symmetries.moved) {
            for (const auto &[w, u] : pairs) {
                if (w >= prefix || u >= prefix)
                    break;
                const bool x = in_set_[w];
                const bool y = in_set_[u];
                if (x != y) {
                    if (!x)
                        return false;
                    break;
                }
            }
        }
        return true;
    }

    bool flush()
    {
        const std::uint64_t total = shared_.nodes.fetch_add(local_nodes_) + local_nodes_;
        local_nodes_ = 0;
        if (shared_.out_of_budget.load(std::memory_order_relaxed))
            return false;
        if (shared_.best_branch.load(std::memory_order_relaxed) < branch_)
            return false;
        if ((shared_.node_limit && total > *shared_.node_limit) ||
            (shared_.deadline && Clock::now() > *shared_.deadline)) {
            shared_.out_of_budget = true;
            return false;
        }
        return true;
    }

    Shared &shared_;
    const Problem &p_;
    std::vector<unsigned char> in_set_;
    std::vector<Column> chosen_;
    std::uint64_t interval_;
    std::uint64_t local_nodes_ = 0;
    Column branch_ = 0;
};

enum class BranchState : unsigned char { Skipped, Exhausted, Found, Aborted };

Family witness_family(const Instance &instance, const Problem &problem, const std::vector<Column> &selection)
{
    std::vector<Column> columns;
    if (problem.complemented) {
        std::vector<unsigned char> excluded(problem.candidates, 0);
        for (Column c : selection)
            excluded[c] = 1;
        for (Column c = 0; c < problem.candidates; ++c)
            if (!excluded[c])
                columns.push_back(c);
    } else {
        columns = selection;
        std::sort(columns.begin(), columns.end());
    }
    std::vector<std::vector<Element>> sets(static_cast<std::size_t>(problem.r));
    for (std::size_t e = 0; e < columns.size(); ++e)
        for (int i = 0; i < problem.r; ++i)
            if ((columns[e] >> i) & 1U)
                sets[static_cast<std::size_t>(i)].push_back(static_cast<Element>(e) + 1);
    return Family(instance, sets);
}

unsigned worker_count(const SearchBudget &budget, Column branches)
{
    unsigned threads = budget.threads != 0 ? budget.threads : std::max(1U, std::thread::hardware_concurrency());
    if (branches < 16)
        threads = 1;
    return std::min<unsigned>(threads, branches);
}

} // namespace

DecisionResult det_decision(const Instance &instance, int r, const SearchBudget &budget)
{
    if (instance.regime() != Regime::Determining)
        throw invalid_input("det_decision needs a determining instance");
    if (r < 1)
        throw invalid_input("family size must be at least 1");
    const int n = instance.n();

    // n distinct columns need n <= 2^r; every column set of size 2^r has row sums 2^(r-1) > k.
    if (r < 31 && n >= (1L << r))
        return {Decision::Infeasible, std::nullopt, 0};
    if (r > kMaxSearchRows)
        return {Decision::BudgetExceeded, std::nullopt, 0};

    const Problem problem(r, n, instance.k());
    if (problem.pick == 0) {
        if (problem.demand != 0)
            return {Decision::Infeasible, std::nullopt, 0};
        return {Decision::Feasible, witness_family(instance, problem, {}), 0};
    }

    Shared shared{problem, budget.node_limit, std::nullopt};
    if (budget.time_limit)
        shared.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(*budget.time_limit));

    const Column branches = problem.candidates;
    std::vector<BranchState> states(branches, BranchState::Skipped);
    std::vector<std::vector<Column>> solutions(branches);
    std::atomic<Column> next{0};
    std::atomic<Column> horizon{branches};

    auto work = [&] {
        Worker worker(shared);
        for (;;) {
            const Column b = next.fetch_add(1);
            if (b >= horizon.load() || b > shared.best_branch.load() || shared.out_of_budget.load())
                return;
            if (worker.exhausted_from(b)) {
                Column h = horizon.load();
                while (b < h && !horizon.compare_exchange_weak(h, b)) {
                }
                return;
            }
            const Outcome outcome = worker.run_branch(b, solutions[b]);
            if (outcome == Outcome::Found) {
                states[b] = BranchState::Found;
                Column best = shared.best_branch.load();
                while (b < best && !shared.best_branch.compare_exchange_weak(best, b)) {
                }
            } else {
                states[b] = outcome == Outcome::Exhausted ? BranchState::Exhausted : BranchState::Aborted;
            }
        }
    };

    const unsigned threads = worker_count(budget, branches);
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back(work);
    }

    DecisionResult result;
    result.nodes = shared.nodes.load();
    const Column best = shared.best_branch.load();
    if (best != ~Column{0}) {
        result.decision = Decision::Feasible;
        result.witness = witness_family(instance, problem, solutions[best]);
        return result;
    }
    const Column end = std::min(horizon.load(), branches);
    for (Column b = 0; b < end; ++b) {
        if (states[b] != BranchState::Exhausted) {
            result.decision = Decision::BudgetExceeded;
            return result;
        }
    }
    result.decision = Decision::Infeasible;
    return result;
}

DetResult det_exact(const Instance &instance, const SearchBudget &budget)
{
    if (instance.regime() != Regime::Determining)
        throw invalid_input("det_exact needs a determining instance");
    const int ceiling = instance.n() - instance.k();
    const int max_r = budget.max_r > 0 ? budget.max_r : ceiling;
    const auto start = Clock::now();

    DetResult result;
    result.proven_lower = lower_bound(instance);
    for (int r = result.proven_lower; r <= max_r; ++r) {
        SearchBudget step = budget;
        if (budget.node_limit)
            step.node_limit = *budget.node_limit > result.nodes ? *budget.node_limit - result.nodes : 0;
        if (budget.time_limit)
            step.time_limit = *budget.time_limit -
                              std::chrono::duration<double>(Clock::now() - start).count();
        const DecisionResult decision = det_decision(instance, r, step);
        result.nodes += decision.nodes;
        switch (decision.decision) {
        case Decision::Feasible:
            result.value = r;
            result.witness = decision.witness;
            result.certificate = Certificate::ExactSearch;
            return result;
        case Decision::BudgetExceeded:
            result.certificate = Certificate::BudgetExceeded;
            return result;
        case Decision::Infeasible:
            result.proven_lower = r + 1;
            result.last_decided = r;
            break;
        }
    }
    if (max_r >= ceiling)
        throw internal_inconsistency("no determining family of size n-k found for K(" +
                                     std::to_string(instance.n()) + "," + std::to_string(instance.k()) + ")");
    result.certificate = Certificate::AboveCap;
    return result;
}

} // namespace kneser
