// repzoo command line: dimirr, fit, compare, lietype, porc.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "repzoo/clifford.hpp"
#include "repzoo/exactpoly.hpp"
#include "repzoo/harness.hpp"
#include "repzoo/lietype.hpp"

using namespace repzoo;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kMath = 1, kConfig = 2 };

std::vector<std::uint64_t> parse_q_list(const std::string& text) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            unsigned long long v = std::stoull(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("bad q value '" + item + "' in list '" + text + "'");
        }
    }
    if (out.empty()) throw ConfigError("empty q list");
    return out;
}

struct Common {
    bool no_cache = false;
    std::string format = "json";
    std::string output;
    std::uint64_t budget = kDefaultBudget;
};

std::optional<std::filesystem::path> cache_dir(const Common& c) {
    if (c.no_cache) return std::nullopt;
    return ResultCache::default_dir();
}

void emit(const Common& c, const std::string& text) {
    if (c.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.output, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + c.output);
    out << text;
}

json result_json(const RingResult& r) {
    json j{{"ring", r.ring.label()}};
    if (r.error) {
        j["error"] = *r.error;
        return j;
    }
    j["order"] = r.order;
    j["classes"] = r.classes;
    j["degrees"] = r.degrees();
    if (r.chardeg) j["chardeg"] = *r.chardeg;
    if (r.clifford) j["clifford"] = *r.clifford;
    j["engines_agree"] = r.engines_agree();
    return j;
}

int cmd_dimirr(const Common& c, const std::string& scheme, const std::vector<std::string>& rings, const std::string& engine) {
    ExperimentConfig cfg;
    cfg.scheme = parse_group_scheme(scheme);
    for (const auto& r : rings) cfg.rings.push_back(parse_ring_spec(r));
    cfg.engine = parse_engine(engine);
    cfg.budget = c.budget;
    cfg.cache_dir = cache_dir(c);
    auto results = run_dimirr(cfg);
    json out{{"scheme", cfg.scheme.label()}, {"results", json::array()}};
    bool disagree = false, failed = false;
    for (const auto& r : results) {
        out["results"].push_back(result_json(r));
        failed = failed || r.error;
        disagree = disagree || !r.engines_agree();
    }
    emit(c, out.dump(2) + "\n");
    if (disagree) return kMath;
    return failed ? kConfig : kOk;
}

int cmd_fit(const Common& c, const std::string& scheme_text, int level, const std::string& samples_text,
            std::optional<std::uint64_t> holdout_q, const std::string& engine) {
    ExperimentConfig cfg;
    cfg.scheme = parse_group_scheme(scheme_text);
    cfg.engine = parse_engine(engine);
    cfg.budget = c.budget;
    cfg.cache_dir = cache_dir(c);
    auto qs = parse_q_list(samples_text);
    for (auto q : qs) cfg.rings.push_back(field_family_ring(q, level));
    if (holdout_q) cfg.rings.push_back(field_family_ring(*holdout_q, level));
    auto results = run_dimirr(cfg);
    std::map<std::uint64_t, DegreeMultiset> samples;
    for (std::size_t i = 0; i < qs.size(); ++i) {
        if (results[i].error) throw ConfigError(*results[i].error);
        if (!samples.emplace(qs[i], results[i].degrees()).second) throw ConfigError("duplicate sample q=" + std::to_string(qs[i]));
    }
    std::optional<std::pair<std::uint64_t, DegreeMultiset>> holdout;
    if (holdout_q) {
        if (results.back().error) throw ConfigError(*results.back().error);
        holdout.emplace(*holdout_q, results.back().degrees());
    }
    FitOptions opts;
    int n = cfg.scheme.n;
    opts.degree_ceiling = n * (n - 1) / 2 * level + n;
    auto fit = fit_polynomials(samples, holdout, opts);
    emit(c, render(fit, parse_report_format(c.format)));
    if (fit.holdout && !fit.holdout->match) {
        json w{{"error", "holdout mismatch"}, {"q", fit.holdout->q}, {"witnesses", fit.holdout->witnesses}};
        std::cerr << w.dump(2) << "\n";
        return kMath;
    }
    return kOk;
}

int cmd_compare(const Common& c, const std::string& scheme, const std::string& a, const std::string& b,
                const std::string& engine) {
    auto rep = compare_rings(parse_group_scheme(scheme), parse_ring_spec(a), parse_ring_spec(b), parse_engine(engine),
                             cache_dir(c));
    emit(c, json(rep).dump(2) + "\n");
    return rep.equal ? kOk : kMath;
}

int cmd_lietype(const Common& c, const std::string& family, const std::string& twist, const std::string& verify,
                std::optional<int> max_degree) {
    auto datum = RootDatum::parse(family);
    TwistedWeylGroup w(datum, parse_twist(twist));
    json out{{"family", datum.label()}, {"twist", to_string(w.twist())}, {"weyl_order", w.order()}};
    out["order_polynomial"] = order_polynomial(w).to_string("q");
    out["central_torus_order"] = central_torus_order(w).to_string("q");
    json classes = json::array();
    for (const auto& cls : w.twisted_classes()) {
        const auto& rep = w.elements()[cls.front()];
        classes.push_back({{"representative", rep},
                           {"size", cls.size()},
                           {"torus_order", torus_order(w, rep).to_string("q")},
                           {"dl_degree", dl_degree(w, rep).to_string("q")}});
    }
    out["classes"] = classes;
    int code = kOk;
    if (!verify.empty()) {
        auto cands = candidate_set(w, max_degree);
        out["candidates"] = {{"count", cands.polys.size()}, {"bound", cands.bound}, {"enumerated", cands.enumerated}};
        auto report = verify_containment(datum, w.twist(), parse_q_list(verify), cands);
        out["containment"] = report;
        if (!report.contained) code = kMath;
    }
    emit(c, out.dump(2) + "\n");
    return code;
}

int cmd_porc_demo(const Common& c) {
    // Two period-2 functions over q = 2 swapping x and x^2.
    RationalPoly x = RationalPoly::x();
    RationalPoly x2 = x * x;
    PorcFunction f(Integer(2), {x, x2}, true);
    PorcFunction g(Integer(2), {x2, x}, true);
    auto cons = porc_consolidate({f, g}, 2, 2, 6);
    json polys = json::array();
    for (const auto& p : cons.polynomials) polys.push_back(p.to_string("x"));
    PorcFunction h(Integer(2), {x + RationalPoly::constant(1)}, true);
    auto fh = f * h;
    auto back = porc_quotient(fh, h);
    bool ok = back == f.lifted(back.period());
    json quotient_constituents = json::array();
    for (const auto& p : back.constituents()) quotient_constituents.push_back(p.to_string("x"));
    json out{{"consolidation", {{"polynomials", polys}, {"period", cons.period}, {"crossover", cons.crossover}}},
             {"quotient", {{"constituents", quotient_constituents}, {"recovers_f", ok}}}};
    emit(c, out.dump(2) + "\n");
    return ok ? kOk : kMath;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"repzoo: irreducible character degrees of matrix groups over finite local rings"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_flag("--no-cache", common.no_cache, "Skip the result cache");
    app.add_option("--format", common.format, "json, csv or markdown (fit)");
    app.add_option("--output", common.output, "Write output to a file");
    app.add_option("--budget", common.budget, "Maximum group order to enumerate");

    std::string scheme = "GL2", engine = "auto";
    std::vector<std::string> rings;
    auto* dimirr = app.add_subcommand("dimirr", "Degree multiset of G(o_r)");
    dimirr->add_option("--scheme", scheme, "GL2, SL3, U3, B2, T2")->required();
    dimirr->add_option("--ring", rings, "unram:p,f,r | eqchar:p,f,r | eis:p,f,e,r (repeatable)")->required();
    dimirr->add_option("--engine", engine, "chardeg, clifford, both or auto");

    int level = 1;
    std::string samples;
    std::optional<std::uint64_t> holdout;
    auto* fit = app.add_subcommand("fit", "Fit degree and multiplicity polynomials over the unramified family");
    fit->add_option("--scheme", scheme)->required();
    fit->add_option("--level", level)->check(CLI::PositiveNumber);
    fit->add_option("--samples", samples, "Comma-separated q values")->required();
    fit->add_option("--holdout", holdout);
    fit->add_option("--engine", engine);

    std::string ring_a, ring_b;
    auto* compare = app.add_subcommand("compare", "Compare degree multisets over two rings");
    compare->add_option("--scheme", scheme)->required();
    compare->add_option("--a", ring_a)->required();
    compare->add_option("--b", ring_b)->required();
    compare->add_option("--engine", engine);

    std::string family = "GL2", twist = "split", verify;
    std::optional<int> max_degree;
    auto* lie = app.add_subcommand("lietype", "Order, torus and Deligne-Lusztig degree polynomials");
    lie->add_option("--family", family)->required();
    lie->add_option("--twist", twist);
    lie->add_option("--verify", verify, "Comma-separated q values for the containment check");
    lie->add_option("--max-degree", max_degree);

    auto* porc = app.add_subcommand("porc", "PORC function utilities");
    auto* demo = porc->add_subcommand("demo", "Consolidation and quotient example");
    porc->require_subcommand(1);
    demo->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kConfig;
    }

    try {
        if (*dimirr) return cmd_dimirr(common, scheme, rings, engine);
        if (*fit) return cmd_fit(common, scheme, level, samples, holdout, engine);
        if (*compare) return cmd_compare(common, scheme, ring_a, ring_b, engine);
        if (*lie) return cmd_lietype(common, family, twist, verify, max_degree);
        if (*demo) return cmd_porc_demo(common);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kConfig;
    } catch (const MathError& e) {
        std::cout << json{{"error", "math"}, {"message", e.what()}}.dump(2) << "\n";
        return kMath;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kMath;
    }
    return kOk;
}
