#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "repzoo/chardeg.hpp"
#include "repzoo/matgrp.hpp"

using namespace repzoo;

namespace {

using DM = DegreeMultiset;

std::shared_ptr<const MatrixGroup> grp(const char* scheme, const RingSpec& r) { return build_group(parse_group_scheme(scheme), r); }

RingSpec field(int q) {
    for (int p : {2, 3, 5, 7, 11})
        for (int f = 1, pf = p; pf <= q; ++f, pf *= p)
            if (pf == q) return RingSpec::unramified(p, f, 1);
    throw std::logic_error("not a prime power");
}

// |G / [G, G]| with the derived subgroup grown from all commutators.
std::size_t abelianization_order(const FiniteGroup& g) {
    std::set<Ordinal> d{g.identity()};
    for (Ordinal a = 0; a < g.order(); ++a)
        for (Ordinal b = 0; b < g.order(); ++b) d.insert(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    std::vector<Ordinal> frontier(d.begin(), d.end());
    while (!frontier.empty()) {
        std::vector<Ordinal> next;
        for (auto x : frontier)
            for (auto y : std::vector<Ordinal>(d.begin(), d.end()))
                if (d.insert(g.mul(x, y)).second) next.push_back(g.mul(x, y));
        frontier = std::move(next);
    }
    return g.order() / d.size();
}

std::size_t brute_class_count(const FiniteGroup& g) {
    std::vector<bool> seen(g.order(), false);
    std::size_t n = 0;
    for (Ordinal x = 0; x < g.order(); ++x) {
        if (seen[x]) continue;
        ++n;
        for (Ordinal y = 0; y < g.order(); ++y) seen[g.conjugate(y, x)] = true;
    }
    return n;
}

DM gl2_field_degrees(std::uint64_t q) {
    return DM({{1, q - 1}, {q - 1, q * (q - 1) / 2}, {q, q - 1}, {q + 1, (q - 1) * (q - 2) / 2}});
}

}  // namespace

TEST_CASE("degree multiset basics") {
    DM d({{2, 1}, {1, 1}, {1, 1}, {5, 0}});
    CHECK(d.entries() == std::vector<std::pair<std::uint64_t, std::uint64_t>>{{1, 2}, {2, 1}});
    CHECK(d.count() == 3);
    CHECK(d.sum_of_squares() == 6);
    CHECK(d.to_string() == "[(1,2),(2,1)]");
    CHECK(d == DM::from_degrees({2, 1, 1}));
    CHECK(d.scaled(3) == DM({{3, 2}, {6, 1}}));
    CHECK_NOTHROW(d.check(6, 3));
    CHECK_THROWS_AS(d.check(6, 4), MathError);
    CHECK_THROWS_AS(d.check(8, 3), MathError);
    CHECK_THROWS_AS(DM({{1, 5}, {2, 1}}).check(9, 6), MathError);
    nlohmann::json j = d;
    CHECK(j.dump() == "[[1,2],[2,1]]");
    CHECK(j.get<DM>() == d);
}

TEST_CASE("GL2 degree formula over F_2, F_3, F_5") {
    CHECK(character_degrees(*grp("GL2", field(2))) == DM({{1, 2}, {2, 1}}));
    CHECK(character_degrees(*grp("GL2", field(3))) == DM({{1, 2}, {2, 3}, {3, 2}, {4, 1}}));
    for (std::uint64_t q : {2, 3, 5}) CHECK(character_degrees(*grp("GL2", field(static_cast<int>(q)))) == gl2_field_degrees(q));
}

TEST_CASE("GL2 over further fields follows the same rows") {
    for (std::uint64_t q : {4, 7}) CHECK(character_degrees(*grp("GL2", field(static_cast<int>(q)))) == gl2_field_degrees(q));
}

TEST_CASE("SL2 over fields") {
    CHECK(character_degrees(*grp("SL2", field(2))) == DM({{1, 2}, {2, 1}}));
    CHECK(character_degrees(*grp("SL2", field(4))) == DM({{1, 1}, {3, 2}, {4, 1}, {5, 1}}));
    for (std::uint64_t q : {3, 5, 7}) {
        DM expect({{1, 1}, {q, 1}, {q + 1, (q - 3) / 2}, {q - 1, (q - 1) / 2}, {(q + 1) / 2, 2}, {(q - 1) / 2, 2}});
        CHECK(character_degrees(*grp("SL2", field(static_cast<int>(q)))) == expect);
    }
}

TEST_CASE("Borel of GL2 over fields") {
    for (std::uint64_t q : {2, 3, 4, 5}) CHECK(character_degrees(*grp("B2", field(static_cast<int>(q)))) == DM({{1, (q - 1) * (q - 1)}, {q - 1, q - 1}}));
}

TEST_CASE("Heisenberg group over F_3") {
    auto g = grp("U3", field(3));
    auto d = character_degrees(*g);
    CHECK(d == DM({{1, 9}, {3, 2}}));
    // linear characters from the abelianization, the rest from the class count
    std::size_t lin = abelianization_order(*g);
    std::size_t rest = brute_class_count(*g) - lin;
    CHECK(lin == 9);
    CHECK(rest == 2);
    CHECK((g->order() - lin) / rest == 9);
}

TEST_CASE("abelian fast path") {
    auto g = grp("GL2", RingSpec::unramified(2, 1, 2));
    auto k = std::make_shared<SubgroupView>(g, congruence_kernel(*g, 1));
    CHECK(abelian_degrees(*k) == DM({{1, 16}}));
    CHECK(character_degrees(*k) == DM({{1, 16}}));
    auto one = std::make_shared<SubgroupView>(g, std::vector<Ordinal>{g->identity()});
    CHECK(abelian_degrees(*one) == DM({{1, 1}}));
    CHECK(character_degrees(*one) == DM({{1, 1}}));
    CHECK(abelian_degrees(*grp("T2", field(4))) == DM({{1, 9}}));
    CHECK_THROWS_AS(abelian_degrees(*g), ConfigError);
}

TEST_CASE("modulus choice") {
    for (auto [order, exp] : {std::pair<std::uint64_t, std::uint64_t>{6, 6}, {48, 24}, {3888, 72}, {300000, 120}}) {
        auto l = choose_modulus(order, exp);
        CHECK(l % exp == 1);
        CHECK(static_cast<double>(l) > 2 * std::sqrt(static_cast<double>(order)));
        auto prime = [](std::uint64_t n) {
            for (std::uint64_t d = 2; d * d <= n; ++d)
                if (n % d == 0) return false;
            return n > 1;
        };
        CHECK(prime(l));
        for (std::uint64_t m = l - exp; m > 2 * std::sqrt(static_cast<double>(order)) && m > exp; m -= exp) CHECK_FALSE(prime(m));
    }
}

TEST_CASE("property: row orthogonality of the mod-l table") {
    for (const auto& [s, r] : std::vector<std::pair<const char*, RingSpec>>{
             {"GL2", field(3)}, {"SL2", field(5)}, {"U3", field(2)}, {"GL2", RingSpec::unramified(2, 1, 2)}}) {
        auto g = grp(s, r);
        auto cls = conjugacy_classes(*g);
        auto t = character_table_mod_p(*g, cls);
        REQUIRE(t.size() == cls.count());
        CHECK((t.ell - 1) % t.exponent == 0);
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = 0; j < t.size(); ++j) {
                unsigned __int128 acc = 0;
                for (std::size_t k = 0; k < cls.count(); ++k)
                    acc += static_cast<unsigned __int128>(cls.sizes[k]) * t.values[i][k] % t.ell * t.values[j][cls.inverse_class[k]];
                CHECK(static_cast<std::uint64_t>(acc % t.ell) == (i == j ? g->order() % t.ell : 0));
            }
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.values[i][t.identity_class] == t.degrees[i] % t.ell);
        CHECK(std::is_sorted(t.degrees.begin(), t.degrees.end()));
    }
}

TEST_CASE("property: regular representation identities over many groups") {
    std::vector<std::pair<const char*, RingSpec>> cases{
        {"GL1", field(7)},
        {"GL2", field(2)},
        {"GL2", field(3)},
        {"GL2", field(4)},
        {"GL2", field(5)},
        {"SL2", field(3)},
        {"SL2", field(4)},
        {"U3", field(2)},
        {"U3", field(3)},
        {"U3", field(4)},
        {"U4", field(2)},
        {"B2", field(5)},
        {"B3", field(2)},
        {"B3", field(3)},
        {"T3", field(3)},
        {"GL3", field(2)},
        {"SL3", field(2)},
        {"GL2", RingSpec::unramified(2, 1, 2)},
        {"GL2", RingSpec::eqchar(2, 1, 2)},
        {"SL2", RingSpec::unramified(2, 1, 2)},
        {"SL2", RingSpec::unramified(3, 1, 2)},
        {"SL2", RingSpec::eqchar(3, 1, 2)},
        {"GL2", RingSpec::unramified(2, 1, 3)},
        {"U3", RingSpec::unramified(2, 1, 2)},
        {"B2", RingSpec::unramified(3, 1, 2)},
    };
    CHECK(cases.size() >= 20);
    for (const auto& [s, r] : cases) {
        CAPTURE(std::string(s) + " " + r.label());
        auto g = grp(s, r);
        auto cls = conjugacy_classes(*g);
        auto d = character_degrees(*g, cls);
        CHECK(d.sum_of_squares() == g->order());
        CHECK(d.count() == cls.count());
        for (auto deg : d.degrees()) CHECK(g->order() % deg == 0);
        if (g->order() <= 1500) CHECK(d.multiplicity(1) == abelianization_order(*g));
    }
}

TEST_CASE("property: unipotent degrees are powers of q") {
    for (int n : {3, 4})
        for (int q : {2, 3, 4}) {
            if (n == 4 && q == 4) continue;
            auto d = character_degrees(*grp(n == 3 ? "U3" : "U4", field(q)));
            for (auto deg : d.degrees()) {
                std::uint64_t x = deg;
                while (x % static_cast<std::uint64_t>(q) == 0) x /= static_cast<std::uint64_t>(q);
                CHECK(x == 1);
            }
        }
}
