#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "kneser/bounds.hpp"
#include "kneser/constructions.hpp"
#include "kneser/search.hpp"

using namespace kneser;

namespace {

using Sets = std::vector<std::vector<Element>>;

std::vector<Element> intersection_of(const Family &f) { return common_elements(f); }

std::vector<Element> union_of(const Family &f)
{
    std::vector<Element> out;
    for (Element e = 1; e <= f.n(); ++e)
        if (std::any_of(f.sets().begin(), f.sets().end(), [e](const VertexSet &s) { return s.contains(e); }))
            out.push_back(e);
    return out;
}

std::vector<Element> range(int lo, int hi)
{
    std::vector<Element> out;
    for (int e = lo; e <= hi; ++e)
        out.push_back(e);
    return out;
}

// Minimum witnesses for every (n, k) with 2k < n <= max_n, computed once.
const std::vector<Family> &witnesses(int max_n)
{
    static std::map<int, std::vector<Family>> cache;
    auto &out = cache[max_n];
    if (out.empty())
        for (int n = 3; n <= max_n; ++n)
            for (int k = 1; 2 * k < n; ++k)
                out.push_back(*det_exact(Instance::determining(n, k)).witness);
    return out;
}

Family shuffled_labels(const Family &f, std::mt19937 &rng)
{
    auto perm = identity_relabeling(f.n());
    std::shuffle(perm.begin() + 1, perm.end(), rng);
    return relabel(f, perm);
}

} // namespace

TEST_SUITE("constructions") {

TEST_CASE("aux_base")
{
    const auto s = aux_base(AuxBase::K42);
    CHECK(s.as_lists() == Sets{{1, 2}, {1, 3}, {2, 4}});
    CHECK(s.n() == 4);
    CHECK(s.k() == 2);
    CHECK(is_auxiliary(s));
    CHECK(intersection_of(s).empty());

    const auto t = aux_base(AuxBase::K63);
    CHECK(t.as_lists() == Sets{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
    CHECK(t.n() == 6);
    CHECK(is_auxiliary(t));
    CHECK(intersection_of(t).empty());
}

TEST_CASE("aux_double")
{
    const auto a = aux_double(aux_base(AuxBase::K42));
    CHECK(a.as_lists() == Sets{{1, 2, 5, 6}, {1, 3, 5, 7}, {2, 4, 6, 8}, {1, 2, 3, 4}});
    CHECK(a.n() == 8);
    CHECK(is_auxiliary(a));
    CHECK(intersection_of(a).empty());

    const auto b = aux_double(aux_base(AuxBase::K63));
    CHECK(b.n() == 12);
    CHECK(b.k() == 6);
    CHECK(b.size() == 4);
    CHECK(is_auxiliary(b));
    CHECK(intersection_of(b).empty());

    CHECK_THROWS_AS(aux_double(Family(Instance::auxiliary(4, 2), Sets{{1, 2}, {1, 3}})), invalid_input);
}

TEST_CASE("det_lift_odd")
{
    const auto t7 = aux_base(AuxBase::K63).reread(Instance::determining(7, 3));
    const auto w = det_lift_odd(t7);
    CHECK(w.as_lists() == Sets{{1, 2, 3, 8, 9, 10, 14}, {1, 4, 5, 8, 11, 12, 14}, {2, 4, 6, 9, 11, 13, 14},
                               {1, 2, 3, 4, 5, 6, 7}});
    CHECK(w.n() == 15);
    CHECK(w.k() == 7);
    CHECK(is_determining(w));
    CHECK(union_of(w) == range(1, 14));
    CHECK(intersection_of(w).empty());

    // union must be [2k]
    CHECK_THROWS_AS(det_lift_odd(Family(Instance::determining(7, 3), Sets{{1, 2, 3}, {1, 4, 5}, {2, 4, 7}})),
                    invalid_input);
    CHECK_THROWS_AS(det_lift_odd(Family(Instance::determining(7, 3), Sets{{1, 2, 3}})), invalid_input);
}

TEST_CASE("aux_set examples")
{
    const auto two = aux_set(2);
    CHECK(two.final == aux_base(AuxBase::K42));
    REQUIRE(two.steps.size() == 1);
    CHECK(two.steps[0].rule == "base-K42");

    const auto five = aux_set(5);
    CHECK(five.final.as_lists() == Sets{{1, 2, 6, 7, 10}, {1, 3, 6, 8, 10}, {2, 4, 7, 9, 10}, {1, 2, 3, 4, 5}});
    CHECK(five.final.n() == 10);
    CHECK(is_auxiliary(five.final));
    REQUIRE(five.steps.size() == 2);
    CHECK(five.steps[1].rule == "det-lift-odd");

    const auto four = aux_set(4);
    CHECK(four.final == aux_double(aux_base(AuxBase::K42)));
    CHECK(four.steps.back().rule == "aux-double");

    CHECK_THROWS_AS(aux_set(1), invalid_input);
}

TEST_CASE("aux_set and det_set_odd for k <= 20")
{
    for (int k = 2; k <= 20; ++k) {
        CAPTURE(k);
        const auto trace = aux_set(k);
        const int r = ceil_log2_succ(2 * k + 1);
        CHECK(is_auxiliary(trace.final));
        CHECK(trace.final.size() == static_cast<std::size_t>(r));
        CHECK(intersection_of(trace.final).empty());
        CHECK(trace.steps.back().output == Instance::auxiliary(2 * k, k));
        CHECK(trace.steps.front().rule.rfind("base-", 0) == 0);

        const auto d = det_set_odd(k);
        CHECK(d.n() == 2 * k + 1);
        CHECK(is_determining(d));
        CHECK(d.size() == static_cast<std::size_t>(r));
    }
    CHECK(det_set_odd(2).as_lists() == Sets{{1, 2}, {1, 3}, {2, 4}});
    CHECK(det_set_odd(3).as_lists() == Sets{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
    CHECK(det_set_odd(7).size() == 4);
}

TEST_CASE("construct_triangular examples")
{
    CHECK(construct_triangular(3).as_lists() == Sets{{1, 2, 3}, {1, 4, 5}, {2, 4, 6}});
    CHECK(construct_triangular(4).as_lists() == Sets{{1, 2, 3, 4}, {1, 5, 6, 7}, {2, 5, 8, 9}, {3, 6, 8, 10}});
    const auto five = construct_triangular(5);
    CHECK(five.n() == 16);
    CHECK(five.size() == 5);
    CHECK(union_of(five) == range(1, 15));
    CHECK_THROWS_AS(construct_triangular(2), invalid_input);
}

TEST_CASE("construct_triangular structure for r <= 10")
{
    for (int r = 3; r <= 10; ++r) {
        CAPTURE(r);
        const auto f = construct_triangular(r);
        const int n = r * (r + 1) / 2 + 1;
        CHECK(f.n() == n);
        CHECK(f.k() == r);
        CHECK(f.size() == static_cast<std::size_t>(r));
        CHECK(is_determining(f));
        CHECK(union_of(f) == range(1, n - 1));
        for (std::size_t i = 0; i < f.size(); ++i)
            for (std::size_t j = i + 1; j < f.size(); ++j) {
                const auto &a = f.sets()[i].elements();
                const auto &b = f.sets()[j].elements();
                std::vector<Element> both;
                std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
                CHECK(both.size() == 1);
            }
        // diagonal r, 2r-1, 3r-3, ...: the elements covered once
        std::vector<Element> once;
        std::vector<Element> diagonal;
        for (int i = 1, e = r; i <= r; ++i, e += r - i + 1)
            diagonal.push_back(e);
        const auto m = signature_matrix(f);
        for (Element e = 1; e < n; ++e) {
            CHECK((m.weight(e) == 1 || m.weight(e) == 2));
            if (m.weight(e) == 1)
                once.push_back(e);
        }
        CHECK(once == diagonal);
        CHECK(diagonal.back() == r * (r + 1) / 2);
    }
}

TEST_CASE("extend_n examples")
{
    const auto s = aux_base(AuxBase::K42).reread(Instance::determining(5, 2));
    CHECK(extend_n(s).as_lists() == Sets{{1, 2}, {1, 3}, {2, 4}, {1, 6}});
    CHECK(extend_n(s).n() == 6);

    const auto full = Family(Instance::determining(6, 2), Sets{{1, 2}, {1, 3}, {4, 6}, {5, 6}});
    const auto same = extend_n(full);
    CHECK(same.as_lists() == full.as_lists());
    CHECK(same.n() == 7);

    const auto t = aux_base(AuxBase::K63).reread(Instance::determining(7, 3));
    const auto t8 = extend_n(t);
    CHECK(t8.n() == 8);
    CHECK(t8.size() == 4);
    CHECK(is_determining(t8));

    CHECK_THROWS_AS(extend_n(Family(Instance::determining(5, 2), Sets{{1, 2}, {3, 4}})), invalid_input);
}

TEST_CASE("reduce_n examples")
{
    const auto seven = Family(Instance::determining(7, 2), Sets{{1, 2}, {3, 4}, {1, 5}, {3, 6}});
    const auto six = reduce_n(seven);
    CHECK(six.n() == 6);
    CHECK(six.as_lists() == seven.as_lists());
    CHECK(is_determining(six));

    const auto full = Family(Instance::determining(6, 2), Sets{{1, 2}, {1, 3}, {4, 6}, {5, 6}});
    const auto five = reduce_n(full);
    CHECK(five.n() == 5);
    CHECK(five.size() == 4);
    CHECK(is_determining(five));

    const auto w = det_exact(Instance::determining(7, 3)).witness;
    REQUIRE(w);
    CHECK_THROWS_AS(reduce_n(*w), invalid_input);
}

TEST_CASE("lift_nk examples")
{
    const auto t = aux_base(AuxBase::K63).reread(Instance::determining(7, 3));
    const auto lifted = lift_nk(extend_n(t));
    CHECK(lifted.as_lists() == Sets{{1, 2, 3, 8}, {1, 4, 5, 8}, {2, 4, 6, 8}, {1, 2, 7, 8}});
    CHECK(lifted.n() == 9);
    CHECK(lifted.k() == 4);
    CHECK(is_determining(lifted));

    CHECK_THROWS_AS(lift_nk(aux_base(AuxBase::K42).reread(Instance::determining(5, 2))), invalid_input);
}

TEST_CASE("lift_nk repairs a one-element common intersection on (9,3)")
{
    std::mt19937 rng(31337);
    std::optional<Family> found;
    for (int trial = 0; trial < 200000 && !found; ++trial) {
        Sets sets;
        for (int i = 0; i < 5; ++i) {
            std::vector<Element> rest = range(2, 9);
            std::shuffle(rest.begin(), rest.end(), rng);
            sets.push_back({1, rest[0], rest[1]});
        }
        Family f(Instance::determining(9, 3), sets);
        if (is_determining(f) && common_elements(f).size() == 1)
            found = f;
    }
    REQUIRE(found);
    const auto lifted = lift_nk(*found);
    CHECK(lifted.n() == 10);
    CHECK(lifted.k() == 4);
    CHECK(lifted.size() == found->size());
    CHECK(is_determining(lifted));
}

TEST_CASE("recursions on minimum witnesses for n <= 12")
{
    for (const auto &w : witnesses(12)) {
        const int n = w.n();
        const int k = w.k();
        CAPTURE(n);
        CAPTURE(k);
        REQUIRE(is_determining(w));

        const auto up = extend_n(w);
        CHECK(up.n() == n + 1);
        CHECK(is_determining(up));
        CHECK(up.size() <= w.size() + 1);

        if (n - 1 > 2 * k) {
            const auto down = reduce_n(w);
            CHECK(down.n() == n - 1);
            CHECK(is_determining(down));
            CHECK(down.size() == w.size());
        } else {
            CHECK_THROWS_AS(reduce_n(w), invalid_input);
        }

        if (n + 1 >= 2 * k + 3) {
            const auto lifted = lift_nk(w);
            CHECK(lifted.n() == n + 1);
            CHECK(lifted.k() == k + 1);
            CHECK(is_determining(lifted));
            CHECK(lifted.size() == w.size());
        } else {
            CHECK_THROWS_AS(lift_nk(w), invalid_input);
        }
    }
}

TEST_CASE("property: recursions on perturbed witnesses")
{
    std::mt19937 rng(424242);
    const auto &pool = witnesses(11);
    int reduced = 0;
    for (int trial = 0; trial < 600; ++trial) {
        auto f = shuffled_labels(pool[rng() % pool.size()], rng);
        if (rng() % 2) {
            // one extra random set keeps the family determining
            std::vector<Element> ground = range(1, f.n());
            std::shuffle(ground.begin(), ground.end(), rng);
            auto sets = f.as_lists();
            sets.emplace_back(ground.begin(), ground.begin() + f.k());
            f = Family(f.instance(), sets);
        }
        REQUIRE(is_determining(f));
        const auto up = extend_n(f);
        CHECK(is_determining(up));
        CHECK(up.size() <= f.size() + 1);
        if (f.n() - 1 > 2 * f.k()) {
            const auto down = reduce_n(f);
            CHECK(is_determining(down));
            CHECK(down.size() == f.size());
            ++reduced;
        }
        if (f.n() + 1 >= 2 * f.k() + 3) {
            const auto lifted = lift_nk(f);
            CHECK(is_determining(lifted));
            CHECK(lifted.size() == f.size());
        }
        // round trip never beats the minimum
        const auto back = reduce_n(up);
        CHECK(is_determining(back));
        CHECK(back.size() >= static_cast<std::size_t>(*det_exact(f.instance()).value));
    }
    CHECK(reduced > 100);
}

} // TEST_SUITE
