#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "repzoo/localring.hpp"

using namespace repzoo;

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::uint64_t brute_unit_count(const QuotientRing& R) {
    auto els = R.elements();
    std::uint64_t n = 0;
    for (auto a : els)
        for (auto b : els)
            if (R.mul(a, b) == R.one()) {
                ++n;
                break;
            }
    return n;
}

std::uint64_t repeated_addition_order(const QuotientRing& R, RingElement a) {
    RingElement s = a;
    std::uint64_t n = 1;
    while (s != R.zero()) {
        s = R.add(s, a);
        ++n;
    }
    return n;
}

void check_axioms(const QuotientRing& R) {
    auto els = R.elements();
    REQUIRE(els.size() == R.size());
    for (auto a : els) {
        CHECK(R.add(a, R.neg(a)) == R.zero());
        CHECK(R.mul(a, R.one()) == a);
        for (auto b : els) {
            CHECK(R.add(a, b) == R.add(b, a));
            CHECK(R.mul(a, b) == R.mul(b, a));
        }
    }
    // associativity and distributivity on a stride of triples
    std::size_t stride = std::max<std::size_t>(1, els.size() / 23);
    for (std::size_t i = 0; i < els.size(); i += stride)
        for (std::size_t j = 0; j < els.size(); j += stride)
            for (std::size_t k = 0; k < els.size(); k += 1 + stride / 2) {
                auto a = els[i], b = els[j], c = els[k];
                CHECK(R.mul(R.mul(a, b), c) == R.mul(a, R.mul(b, c)));
                CHECK(R.mul(a, R.add(b, c)) == R.add(R.mul(a, b), R.mul(a, c)));
                CHECK(R.add(R.add(a, b), c) == R.add(a, R.add(b, c)));
            }
}

}  // namespace

TEST_CASE("spec validation and parsing") {
    CHECK_THROWS_AS(validate(RingSpec::unramified(4, 1, 2)), ConfigError);
    CHECK_THROWS_AS(validate(RingSpec::eisenstein(3, 1, 3, 2)), ConfigError);
    CHECK_THROWS_AS(validate(RingSpec::eisenstein(3, 1, 1, 2)), ConfigError);
    RingSpec bad = RingSpec::unramified(2, 2, 1);
    bad.modulus = {1, 0, 1};  // x^2 + 1 = (x + 1)^2 mod 2
    CHECK_THROWS_AS(validate(bad), ConfigError);
    CHECK_THROWS_AS(parse_ring_spec("unram:3,1"), ConfigError);
    CHECK_THROWS_AS(parse_ring_spec("foo:3,1,2"), ConfigError);
    for (const char* s : {"unram:3,1,2", "eqchar:2,3,2", "eis:5,1,2,2", "unram:2,2,3"}) {
        auto spec = parse_ring_spec(s);
        CHECK(spec.label() == s);
        nlohmann::json j = spec;
        CHECK(j.get<RingSpec>() == spec);
    }
    nlohmann::json j = RingSpec::eqchar(3, 1, 2);
    CHECK(j["e"].is_null());
    CHECK(j["kind"] == "eqchar");
}

TEST_CASE("default moduli are least irreducible") {
    CHECK(default_modulus(2, 2) == std::vector<int>{1, 1, 1});
    CHECK(default_modulus(3, 2) == std::vector<int>{1, 0, 1});
    for (int p : {2, 3, 5})
        for (int f : {1, 2, 3}) CHECK(is_irreducible_mod_p(default_modulus(p, f), p));
}

TEST_CASE("Z/p^r matches integer arithmetic") {
    for (auto [p, r] : {std::pair{2, 3}, {3, 2}, {5, 2}, {7, 1}}) {
        QuotientRing R(RingSpec::unramified(p, 1, r));
        std::int64_t m = static_cast<std::int64_t>(ipow(p, r));
        std::set<std::uint64_t> codes;
        for (std::int64_t a = 0; a < m; ++a) {
            codes.insert(R.from_integer(a).code);
            for (std::int64_t b = 0; b < m; ++b) {
                CHECK(R.add(R.from_integer(a), R.from_integer(b)) == R.from_integer((a + b) % m));
                CHECK(R.mul(R.from_integer(a), R.from_integer(b)) == R.from_integer((a * b) % m));
            }
        }
        CHECK(codes.size() == static_cast<std::size_t>(m));
    }
}

TEST_CASE("F_p[t]/t^r matches truncated convolution") {
    for (auto [p, r] : {std::pair{2, 3}, {3, 2}, {3, 3}}) {
        QuotientRing R(RingSpec::eqchar(p, 1, r));
        for (auto a : R.elements())
            for (auto b : R.elements()) {
                auto ca = R.coordinates(a), cb = R.coordinates(b);
                std::vector<std::int64_t> prod(r, 0);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; i + j < r; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
                CHECK(R.mul(a, b) == R.from_coordinates(prod));
            }
    }
}

TEST_CASE("ring examples") {
    QuotientRing z9(RingSpec::unramified(3, 1, 2));
    CHECK(z9.size() == 9);
    CHECK(z9.additive_order(z9.one()) == 9);
    CHECK(brute_unit_count(z9) == 6);
    QuotientRing f3t(RingSpec::eqchar(3, 1, 2));
    CHECK(f3t.additive_order(f3t.one()) == 3);
    QuotientRing gr(RingSpec::unramified(2, 2, 2));
    CHECK(gr.size() == 16);
    CHECK(gr.residue_size() == 4);
    CHECK(brute_unit_count(gr) == 12);
    CHECK(brute_unit_count(QuotientRing(RingSpec::eqchar(2, 1, 3))) == 4);
    CHECK(brute_unit_count(QuotientRing(RingSpec::eisenstein(3, 1, 2, 2))) == 6);
}

TEST_CASE("property: axioms, units, characteristic") {
    std::vector<RingSpec> specs{RingSpec::unramified(2, 1, 3), RingSpec::unramified(2, 2, 2), RingSpec::unramified(3, 2, 2),
                                RingSpec::unramified(5, 1, 2), RingSpec::eqchar(2, 2, 2),    RingSpec::eqchar(3, 1, 3),
                                RingSpec::eisenstein(3, 1, 2, 2), RingSpec::eisenstein(3, 1, 2, 3), RingSpec::eisenstein(5, 1, 2, 3),
                                RingSpec::eisenstein(5, 1, 3, 2), RingSpec::eisenstein(3, 2, 2, 3)};
    for (const auto& s : specs) {
        CAPTURE(s.label());
        QuotientRing R(s);
        CHECK(R.size() == ipow(s.q(), s.r));
        check_axioms(R);
        std::uint64_t units = brute_unit_count(R);
        CHECK(units == R.size() - R.size() / s.q());
        CHECK(units == R.unit_count());
        for (auto a : R.elements()) {
            CHECK(R.is_unit(a) == (R.reduce(a, QuotientRing(s.at_level(1))) != RingElement{0}));
            if (R.is_unit(a))
                CHECK(R.mul(a, R.inverse(a)) == R.one());
            else
                CHECK_THROWS_AS(R.inverse(a), MathError);
        }
        std::uint64_t expect = s.kind == RingKind::Unramified ? ipow(s.p, s.r)
                               : s.kind == RingKind::EqChar  ? static_cast<std::uint64_t>(s.p)
                                                             : ipow(s.p, (s.r + s.e - 1) / s.e);
        CHECK(repeated_addition_order(R, R.one()) == expect);
        CHECK(R.additive_order(R.one()) == expect);
        // pi^(r-1) != 0 = pi^r
        CHECK(R.pow(R.uniformizer(), s.r - 1) != R.zero());
        CHECK(R.pow(R.uniformizer(), s.r) == R.zero());
        if (s.kind == RingKind::Eisenstein) CHECK(R.pow(R.uniformizer(), s.e) == R.from_integer(s.p));
    }
}

TEST_CASE("property: reduction is a surjective homomorphism") {
    for (const auto& s : {RingSpec::unramified(2, 1, 3), RingSpec::unramified(3, 2, 2), RingSpec::eqchar(3, 1, 3),
                          RingSpec::eisenstein(5, 1, 2, 3), RingSpec::eisenstein(3, 1, 2, 3)}) {
        QuotientRing R(s);
        for (int i = 1; i < s.r; ++i) {
            INFO(s.label(), " level ", i);
            QuotientRing L(s.at_level(i));
            std::map<std::uint64_t, std::uint64_t> fibre;
            for (auto a : R.elements()) {
                ++fibre[R.reduce(a, L).code];
                CHECK(R.reduce(R.mul(a, R.uniformizer()), L) == L.mul(R.reduce(a, L), L.uniformizer()));
            }
            CHECK(fibre.size() == L.size());
            for (auto& [c, n] : fibre) CHECK(n == ipow(s.q(), s.r - i));
            auto els = R.elements();
            for (std::size_t x = 0; x < els.size(); x += 3)
                for (std::size_t y = 0; y < els.size(); y += 5) {
                    CHECK(R.reduce(R.add(els[x], els[y]), L) == L.add(R.reduce(els[x], L), R.reduce(els[y], L)));
                    CHECK(R.reduce(R.mul(els[x], els[y]), L) == L.mul(R.reduce(els[x], L), R.reduce(els[y], L)));
                }
            CHECK(R.reduce(R.one(), L) == L.one());
        }
    }
}

TEST_CASE("truncation isomorphism holds iff e >= r") {
    for (int p : {3, 5, 7})
        for (int e : {2, 3})
            for (int r : {2, 3}) {
                auto spec = RingSpec::eisenstein(p, 1, e, r);
                CAPTURE(spec.label());
                auto iso = iso_check_truncated(spec);
                CHECK(iso.isomorphic == (e >= r));
                if (!iso.isomorphic) {
                    CHECK(iso.map.empty());
                    continue;
                }
                // independent homomorphism check of the returned table
                QuotientRing src(iso.source), dst(iso.target, Ramification::AllowWild);
                REQUIRE(iso.map.size() == src.size());
                std::set<std::uint64_t> image(iso.map.begin(), iso.map.end());
                CHECK(image.size() == dst.size());
                auto els = src.elements();
                for (auto a : els)
                    for (auto b : els) {
                        CHECK(iso.map[src.add(a, b).code] == dst.add(RingElement{iso.map[a.code]}, RingElement{iso.map[b.code]}).code);
                        CHECK(iso.map[src.mul(a, b).code] == dst.mul(RingElement{iso.map[a.code]}, RingElement{iso.map[b.code]}).code);
                    }
                CHECK(iso.map[src.one().code] == dst.one().code);
                REQUIRE(iso.image_of_t);
                CHECK(*iso.image_of_t == dst.uniformizer());
                CHECK(iso.verified);
            }
    CHECK(iso_check_truncated(RingSpec::eisenstein(7, 2, 3, 3)).isomorphic);
    CHECK_THROWS_AS(iso_check_truncated(RingSpec::unramified(3, 1, 2)), ConfigError);
}

TEST_CASE("ring tables agree with the ring") {
    QuotientRing R(RingSpec::unramified(3, 2, 2));
    RingTables t(R);
    for (auto a : R.elements())
        for (auto b : R.elements()) {
            auto ia = static_cast<std::uint32_t>(a.code), ib = static_cast<std::uint32_t>(b.code);
            CHECK(t.add(ia, ib) == R.add(a, b).code);
            CHECK(t.mul(ia, ib) == R.mul(a, b).code);
        }
}

TEST_CASE("wild ramification is rejected outside the truncation check") {
    auto wild = RingSpec::eisenstein(3, 1, 3, 2);
    CHECK_THROWS_AS(QuotientRing{wild}, ConfigError);
    CHECK_THROWS_AS(QuotientRing{parse_ring_spec("eis:3,1,3,2")}, ConfigError);
    CHECK(iso_check_truncated(wild).isomorphic);
}
