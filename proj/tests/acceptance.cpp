// Acceptance run: one PASS/FAIL line per criterion.
//   acceptance            all criteria
//   acceptance 3 7        selected criteria

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "repzoo/clifford.hpp"
#include "repzoo/harness.hpp"
#include "repzoo/lietype.hpp"

using namespace repzoo;

namespace {

using DM = DegreeMultiset;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (pass) detail << what;
            else detail << "; " << what;
            pass = false;
        }
    }
};

std::shared_ptr<const MatrixGroup> grp(const char* scheme, const RingSpec& r) { return build_group(parse_group_scheme(scheme), r); }

RingSpec field(std::uint64_t q) { return field_family_ring(q, 1); }

DM gl2_field_degrees(std::uint64_t q) {
    return DM({{1, q - 1}, {q - 1, q * (q - 1) / 2}, {q, q - 1}, {q + 1, (q - 1) * (q - 2) / 2}});
}

RingElement det(const QuotientRing& R, const std::vector<RingElement>& a, int n) {
    if (n == 1) return a[0];
    RingElement acc = R.zero();
    for (int c = 0; c < n; ++c) {
        std::vector<RingElement> minor;
        for (int i = 1; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (j != c) minor.push_back(a[i * n + j]);
        auto term = R.mul(a[c], det(R, minor, n - 1));
        acc = c % 2 ? R.sub(acc, term) : R.add(acc, term);
    }
    return acc;
}

Rational at(const RationalPoly& p, std::uint64_t q) { return p(Rational(Integer(q))); }

// ---------------------------------------------------------------------------

void c1(Outcome& o) {
    for (std::uint64_t q : {2, 3, 5}) {
        auto d = character_degrees(*grp("GL2", field(q)));
        o.require(d == gl2_field_degrees(q), "q=" + std::to_string(q) + " gave " + d.to_string());
    }
}

void c2(Outcome& o) {
    std::vector<std::pair<const char*, RingSpec>> cases{
        {"GL1", field(5)},  {"GL2", field(2)},  {"GL2", field(3)},  {"GL2", field(4)},  {"GL2", field(5)},
        {"GL2", field(7)},  {"SL2", field(3)},  {"SL2", field(5)},  {"U3", field(2)},   {"U3", field(3)},
        {"U4", field(2)},   {"U4", field(3)},   {"B2", field(4)},   {"B3", field(3)},   {"T3", field(3)},
        {"GL3", field(2)},  {"SL3", field(3)},  {"GL2", RingSpec::unramified(2, 1, 2)}, {"GL2", RingSpec::eqchar(2, 1, 2)},
        {"GL2", RingSpec::unramified(3, 1, 2)}, {"GL2", RingSpec::eqchar(3, 1, 2)}, {"SL2", RingSpec::unramified(3, 1, 2)},
        {"GL2", RingSpec::eisenstein(3, 1, 2, 2)}, {"GL2", RingSpec::unramified(2, 1, 3)}, {"U3", RingSpec::unramified(2, 1, 2)}};
    std::size_t checked = 0;
    for (const auto& [s, r] : cases) {
        auto g = grp(s, r);
        auto cls = conjugacy_classes(*g);
        std::vector<DM> outputs{character_degrees(*g, cls)};
        auto n = default_normal_subgroup(*g);
        if (n.size() > 1) outputs.push_back(clifford_dimirr(g, n).degrees);
        for (const auto& d : outputs) {
            ++checked;
            std::string label = std::string(s) + "(" + r.label() + ")";
            o.require(d.sum_of_squares() == g->order(), label + " sum m d^2 != |G|");
            o.require(d.count() == cls.count(), label + " sum m != #classes");
        }
    }
    o.require(cases.size() >= 20, "fewer than 20 groups");
    o.detail << (o.pass ? "" : "; ") << checked << " multisets over " << cases.size() << " groups";
}

void c3(Outcome& o) {
    std::vector<std::pair<const char*, RingSpec>> cases;
    for (const char* s : {"GL2", "SL2"})
        for (int p : {2, 3}) {
            cases.emplace_back(s, RingSpec::unramified(p, 1, 2));
            cases.emplace_back(s, RingSpec::eqchar(p, 1, 2));
        }
    for (std::uint64_t q : {2, 3, 4}) cases.emplace_back("U3", field(q));
    for (const auto& [s, r] : cases) {
        auto g = grp(s, r);
        auto a = clifford_dimirr(g, default_normal_subgroup(*g)).degrees;
        auto b = character_degrees(*g);
        o.require(a == b, std::string(s) + "(" + r.label() + "): clifford " + a.to_string() + " vs " + b.to_string());
    }
}

void c4(Outcome& o) {
    for (int p : {2, 3}) {
        auto rep = compare_rings(parse_group_scheme("GL2"), RingSpec::unramified(p, 1, 2), RingSpec::eqchar(p, 1, 2), Engine::Chardeg);
        o.require(rep.equal, "p=" + std::to_string(p) + ": " + rep.degrees_a.to_string() + " vs " + rep.degrees_b.to_string());
    }
}

void c5(Outcome& o) {
    auto datum = RootDatum::gl(2);
    TwistedWeylGroup w(datum, Twist::Split);
    auto cands = candidate_set(w);
    auto rep = verify_containment(datum, Twist::Split, {2, 3, 4, 5, 7}, cands);
    for (const auto& pq : rep.results) {
        // recheck every degree against the candidate values directly
        for (auto d : pq.degrees.degrees()) {
            bool hit = false;
            for (const auto& c : cands.polys) hit = hit || at(c, pq.q) == d;
            o.require(hit, "q=" + std::to_string(pq.q) + " degree " + std::to_string(d) + " not a candidate value");
        }
        o.require(pq.contained, "report says q=" + std::to_string(pq.q) + " not contained");
    }
    o.require(rep.contained, "containment failed");
}

void c6(Outcome& o) {
    TwistedWeylGroup w(RootDatum::gl(2), Twist::Split);
    auto ord = order_polynomial(w);
    o.require(ord == RationalPoly({Rational(0), Rational(1), Rational(-1), Rational(-1), Rational(1)}), "order polynomial " + ord.to_string("q"));
    std::set<RationalPoly> dl, tori;
    for (const auto& e : w.elements()) {
        dl.insert(dl_degree(w, e));
        tori.insert(torus_order(w, e));
    }
    RationalPoly x = RationalPoly::x(), one = RationalPoly::constant(1);
    o.require(dl == std::set<RationalPoly>{x + one, x - one}, "dl degrees");
    o.require(tori == std::set<RationalPoly>{(x - one) * (x - one), x * x - one}, "torus orders");
    for (std::uint64_t q : {2, 3, 5}) {
        QuotientRing F(field(q));
        auto els = F.elements();
        std::uint64_t inv = 0, diag = 0;
        for (auto a : els)
            for (auto b : els) {
                diag += F.is_unit(a) && F.is_unit(b);
                for (auto c : els)
                    for (auto d : els) inv += det(F, {a, b, c, d}, 2) != F.zero();
            }
        QuotientRing F2(RingSpec::unramified(static_cast<int>(q), 2, 1));
        std::uint64_t nonsplit = 0;
        for (auto a : F2.elements()) nonsplit += F2.is_unit(a);
        std::string qs = "q=" + std::to_string(q);
        o.require(at(ord, q) == inv, qs + " order count " + std::to_string(inv));
        o.require(at((x - one) * (x - one), q) == diag, qs + " split torus count");
        o.require(at(x * x - one, q) == nonsplit, qs + " nonsplit torus count");
        // q+1 and q-1 are values of the Deligne-Lusztig degrees; both divide |G| and sit in dimirr where their rows are nonzero
        auto d = character_degrees(*grp("GL2", field(q)));
        o.require(d.multiplicity(q - 1) > 0, qs + " q-1 missing");
        if (q > 2) o.require(d.multiplicity(q + 1) > 0, qs + " q+1 missing");
    }
}

void c7(Outcome& o) {
    for (const char* s : {"U3", "U4"})
        for (std::uint64_t q : {2, 3}) {
            auto d = character_degrees(*grp(s, field(q)));
            for (auto deg : d.degrees()) {
                auto x = deg;
                while (x % q == 0) x /= q;
                o.require(x == 1, std::string(s) + "(F_" + std::to_string(q) + ") degree " + std::to_string(deg));
            }
        }
}

void c8(Outcome& o) {
    std::mt19937_64 rng(20261014);
    auto random_poly = [&](int max_degree) {
        std::vector<Rational> c;
        int d = static_cast<int>(rng() % static_cast<unsigned>(max_degree + 1));
        for (int i = 0; i <= d; ++i)
            c.emplace_back(Integer(static_cast<long long>(rng() % 11) - 5), Integer(static_cast<long long>(rng() % 3) + 1));
        return RationalPoly(c);
    };
    int cases = 0;
    for (int t = 0; t < 100; ++t, ++cases) {
        Integer q(std::vector<int>{2, 3, 4, 5, 7, 8, 9, 11}[rng() % 8]);
        std::vector<PorcFunction> fam;
        std::size_t members = 1 + rng() % 3;
        for (std::size_t m = 0; m < members; ++m) {
            std::vector<RationalPoly> cons;
            for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) cons.push_back(random_poly(3));
            fam.emplace_back(q, cons);
        }
        auto out = porc_consolidate(fam, 3, 3 * members, 20);
        for (const auto& f : fam)
            for (std::uint64_t d = 1; d <= 20; ++d) {
                bool hit = false;
                for (const auto& g : out.polynomials) hit = hit || g(Rational(ipow(q, static_cast<unsigned>(d)))) == f.value(d);
                o.require(hit, "case " + std::to_string(t) + " d=" + std::to_string(d) + " uncovered");
            }
        std::vector<RationalPoly> gc;
        for (std::size_t i = 0, n = 1 + rng() % 3; i < n; ++i) {
            auto g = random_poly(2);
            gc.push_back(g.is_zero() ? RationalPoly::constant(1) : g);
        }
        PorcFunction g(q, gc);
        auto back = porc_quotient(fam[0] * g, g);
        for (std::uint64_t d = 1; d <= 20; ++d) o.require(back.value(d) == fam[0].value(d), "quotient mismatch in case " + std::to_string(t));
    }
    o.detail << (o.pass ? "" : "; ") << cases << " randomized cases";
}

void c9(Outcome& o) {
    for (int p : {3, 5, 7})
        for (int e : {2, 3})
            for (int r : {2, 3}) {
                auto spec = RingSpec::eisenstein(p, 1, e, r);
                auto iso = iso_check_truncated(spec);
                std::string label = spec.label();
                o.require(iso.isomorphic == (e >= r), label + " returned " + (iso.isomorphic ? "true" : "false"));
                if (!iso.isomorphic) continue;
                QuotientRing src(iso.source), dst(iso.target, Ramification::AllowWild);
                std::set<std::uint64_t> image(iso.map.begin(), iso.map.end());
                o.require(iso.map.size() == src.size() && image.size() == dst.size(), label + " map not bijective");
                bool hom = iso.map[src.one().code] == dst.one().code;
                for (auto a : src.elements())
                    for (auto b : src.elements()) {
                        hom = hom && iso.map[src.add(a, b).code] == dst.add(RingElement{iso.map[a.code]}, RingElement{iso.map[b.code]}).code;
                        hom = hom && iso.map[src.mul(a, b).code] == dst.mul(RingElement{iso.map[a.code]}, RingElement{iso.map[b.code]}).code;
                    }
                o.require(hom, label + " map is not a ring homomorphism");
            }
}

void c10(Outcome& o) {
    ExperimentConfig cfg;
    cfg.scheme = parse_group_scheme("GL2");
    for (std::uint64_t q : {2, 3, 4}) cfg.rings.push_back(field_family_ring(q, 2));
    auto res = run_dimirr(cfg);
    std::map<std::uint64_t, DM> samples;
    for (std::size_t i = 0; i < 3; ++i) samples[std::uint64_t{2} + i] = res[i].degrees();
    ExperimentConfig hold = cfg;
    hold.rings = {field_family_ring(5, 2)};
    hold.engine = Engine::Clifford;
    auto h = run_dimirr(hold);
    o.require(!h[0].error && h[0].order == 300000, "holdout group GL2(Z/25) not built");
    if (!o.pass) return;
    const auto& observed = h[0].degrees();
    o.require(observed.sum_of_squares() == 300000, "holdout sum of squares");
    auto fit = fit_polynomials(samples, std::pair{std::uint64_t{5}, observed}, FitOptions{4});
    o.require(fit.holdout && fit.holdout->match, "holdout mismatch");
    if (!o.pass) {
        o.detail << " (k=" << fit.k() << ", " << fit.optimal_alignments << " optimal alignments; observed " << observed.to_string()
                 << ", predicted " << fit.holdout->predicted.to_string() << ")";
    }
}

struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> all{
        {1, "GL2(F_q) degree formula", c1},
        {2, "regular-representation identity", c2},
        {3, "dual-engine equivalence", c3},
        {4, "GL2 over Z/p^2 vs F_p[t]/t^2", c4},
        {5, "containment in the candidate set", c5},
        {6, "Lie-type polynomials", c6},
        {7, "unipotent power law", c7},
        {8, "PORC consolidation and quotient", c8},
        {9, "truncated Eisenstein isomorphism", c9},
        {10, "level-2 fit with holdout q=5", c10},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : all) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        Outcome o;
        auto t0 = std::chrono::steady_clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name;
        auto d = o.detail.str();
        if (!d.empty()) std::cout << " [" << d << "]";
        std::cout << " (" << std::fixed << std::setprecision(1) << secs << " s)" << std::endl;
        failures += !o.pass;
    }
    return failures ? 1 : 0;
}
