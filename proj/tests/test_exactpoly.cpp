#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "repzoo/exactpoly.hpp"

using namespace repzoo;

namespace {

Rational R(long long n, long long d = 1) { return Rational(Integer(n), Integer(d)); }

// Naive power-sum evaluation, independent of Horner.
Rational naive_eval(const RationalPoly& p, const Rational& x) {
    Rational acc = 0, xp = 1;
    for (const auto& c : p.coefficients()) {
        acc += c * xp;
        xp *= x;
    }
    return acc;
}

RationalPoly random_poly(std::mt19937_64& rng, int max_degree, int range) {
    std::uniform_int_distribution<int> deg(0, max_degree), coef(-range, range), den(1, 4);
    std::vector<Rational> c;
    int d = deg(rng);
    for (int i = 0; i <= d; ++i) c.push_back(R(coef(rng), den(rng)));
    return RationalPoly(c);
}

}  // namespace

TEST_CASE("canonical form drops trailing zeros") {
    RationalPoly p{R(1), R(2), R(0), R(0)};
    CHECK(p.degree() == 1);
    CHECK(RationalPoly{R(0)}.is_zero());
    CHECK(RationalPoly{}.degree() == -1);
    CHECK((p - p).is_zero());
    CHECK((p - p).coefficients().empty());
}

TEST_CASE("evaluation examples") {
    CHECK(RationalPoly{R(1), R(1)}(R(3)) == 4);
    CHECK(RationalPoly{}(R(17)) == 0);
    RationalPoly half{R(0), R(-1, 2), R(1, 2)};
    CHECK(half(R(5)) == 10);
}

TEST_CASE("interpolation examples") {
    CHECK(interpolate(SamplePointSet({{Integer(2), R(3)}, {Integer(3), R(4)}, {Integer(5), R(6)}})) == RationalPoly{R(1), R(1)});
    CHECK(interpolate(SamplePointSet({{Integer(2), R(1)}, {Integer(3), R(3)}, {Integer(5), R(10)}})) ==
          RationalPoly{R(0), R(-1, 2), R(1, 2)});
    CHECK(interpolate(SamplePointSet({{Integer(7), R(42)}})) == RationalPoly::constant(R(42)));
    CHECK_THROWS_AS(SamplePointSet({{Integer(2), R(1)}, {Integer(2), R(3)}}), ConfigError);
}

TEST_CASE("to_string") {
    CHECK(RationalPoly{R(0), R(-1, 2), R(1, 2)}.to_string() == "1/2*x^2 - 1/2*x");
    CHECK(RationalPoly{R(-1), R(1)}.to_string("q") == "q - 1");
    CHECK(RationalPoly{}.to_string() == "0");
}

TEST_CASE("property: ring identities and naive evaluation") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
        auto a = random_poly(rng, 5, 9), b = random_poly(rng, 5, 9), c = random_poly(rng, 3, 9);
        Rational x = R(static_cast<long long>(rng() % 41) - 20, static_cast<long long>(rng() % 5) + 1);
        CHECK((a * b)(x) == naive_eval(a, x) * naive_eval(b, x));
        CHECK((a + b)(x) == naive_eval(a, x) + naive_eval(b, x));
        CHECK(a * (b + c) == a * b + a * c);
        if (!b.is_zero()) {
            auto [qt, rm] = divmod(a, b);
            CHECK(qt * b + rm == a);
            CHECK(rm.degree() < b.degree());
            auto exact = divide_exact(a * b, b);
            REQUIRE(exact);
            CHECK(*exact == a);
        }
    }
    CHECK_THROWS_AS(divmod(RationalPoly::x(), RationalPoly{}), ConfigError);
}

TEST_CASE("property: interpolation round trip") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 150; ++t) {
        std::vector<std::pair<Integer, Rational>> pts;
        std::set<long long> used;
        int n = 1 + static_cast<int>(rng() % 7);
        while (static_cast<int>(pts.size()) < n) {
            long long a = static_cast<long long>(rng() % 61) - 30;
            if (!used.insert(a).second) continue;
            pts.emplace_back(Integer(a), R(static_cast<long long>(rng() % 201) - 100, static_cast<long long>(rng() % 7) + 1));
        }
        auto p = interpolate(SamplePointSet(pts));
        CHECK(p.degree() < n);
        for (const auto& [a, v] : pts) CHECK(naive_eval(p, Rational(a)) == v);
    }
}

TEST_CASE("porc quotient examples") {
    RationalPoly x = RationalPoly::x();
    PorcFunction f(Integer(3), {x * x - RationalPoly::constant(1)});
    PorcFunction g(Integer(3), {x - RationalPoly::constant(1)});
    auto h = porc_quotient(f, g);
    CHECK(h.period() == 1);
    CHECK(h.constituents()[0] == x + RationalPoly::constant(1));

    PorcFunction f2(Integer(3), {x * x - RationalPoly::constant(1), x * x - x});
    PorcFunction g2(Integer(3), {x});
    CHECK_THROWS_AS(porc_quotient(f2, g2), MathError);

    PorcFunction p(Integer(2), {x, x * x, x + RationalPoly::constant(3)});
    auto one = porc_quotient(p, p);
    CHECK(one.period() == 3);
    for (const auto& c : one.constituents()) CHECK(c == RationalPoly::constant(1));
}

TEST_CASE("porc counting flag checks integrality") {
    RationalPoly half{R(0), R(1, 2)};
    CHECK_THROWS_AS(PorcFunction(Integer(3), {half}, true), MathError);
    CHECK_NOTHROW(PorcFunction(Integer(2), {half}, true));
}

TEST_CASE("porc consolidation examples") {
    RationalPoly x = RationalPoly::x();
    auto single = porc_consolidate({PorcFunction(Integer(5), {x + RationalPoly::constant(1)})}, 4, 4);
    CHECK(single.polynomials == std::vector<RationalPoly>{x + RationalPoly::constant(1)});

    PorcFunction a(Integer(2), {x, x * x}), b(Integer(2), {x * x, x});
    auto two = porc_consolidate({a, b}, 2, 2, 6);
    std::vector<RationalPoly> expect{x, x * x};
    std::sort(expect.begin(), expect.end());
    CHECK(two.polynomials == expect);
    CHECK(two.period == 2);

    // x and 2x - 2 agree at q^d = 2 (d = 1).
    PorcFunction c(Integer(2), {x}), d(Integer(2), {RationalPoly{R(-2), R(2)}});
    auto agree = porc_consolidate({c, d}, 1, 2, 10);
    CHECK(std::find(agree.polynomials.begin(), agree.polynomials.end(), x) != agree.polynomials.end());

    CHECK_THROWS_AS(porc_consolidate({c, d, PorcFunction(Integer(2), {x + RationalPoly::constant(7)})}, 1, 2, 10), MathError);
    CHECK_THROWS_AS(porc_consolidate({}, 1, 1), ConfigError);
}

TEST_CASE("property: randomized porc consolidation covers the family") {
    std::mt19937_64 rng(2026);
    int cases = 0;
    for (int t = 0; t < 120; ++t) {
        Integer q(std::vector<int>{2, 3, 4, 5, 7, 8, 9}[rng() % 7]);
        std::size_t members = 1 + rng() % 3;
        std::vector<PorcFunction> fam;
        for (std::size_t m = 0; m < members; ++m) {
            std::size_t period = 1 + rng() % 3;
            std::vector<RationalPoly> cons;
            for (std::size_t i = 0; i < period; ++i) cons.push_back(random_poly(rng, 3, 5));
            fam.emplace_back(q, cons);
        }
        auto out = porc_consolidate(fam, 3, members * 3, 20);
        for (const auto& f : fam)
            for (std::uint64_t d = 1; d <= 20; ++d) {
                Rational qd{ipow(q, static_cast<unsigned>(d))};
                Rational v = naive_eval(f.constituent_for(d), qd);
                bool hit = std::any_of(out.polynomials.begin(), out.polynomials.end(),
                                       [&](const RationalPoly& g) { return naive_eval(g, qd) == v; });
                CHECK(hit);
            }
        ++cases;
    }
    CHECK(cases >= 100);
}

TEST_CASE("property: randomized porc quotient of a product") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 120; ++t) {
        Integer q(2 + static_cast<int>(rng() % 8));
        std::vector<RationalPoly> fc, gc;
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) fc.push_back(random_poly(rng, 4, 6));
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) {
            auto g = random_poly(rng, 3, 6);
            if (g.is_zero()) g = RationalPoly::constant(1);
            gc.push_back(g);
        }
        PorcFunction f(q, fc), g(q, gc);
        auto back = porc_quotient(f * g, g);
        for (std::uint64_t d = 1; d <= 20; ++d) CHECK(back.value(d) == f.value(d));
    }
}

TEST_CASE("prime power roots") {
    RationalPoly x = RationalPoly::x();
    auto roots = prime_power_roots((x - RationalPoly::constant(4)) * (x - RationalPoly::constant(8)), Integer(2));
    CHECK(roots == std::vector<std::uint64_t>{2, 3});
    CHECK(prime_power_roots(x + RationalPoly::constant(1), Integer(3)).empty());
}

TEST_CASE("json round trip") {
    RationalPoly p{R(3, 7), R(0), R(-5, 2)};
    nlohmann::json j = p;
    CHECK(j.get<RationalPoly>() == p);
}
