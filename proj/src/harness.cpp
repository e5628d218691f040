#include "repzoo/harness.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "repzoo/clifford.hpp"
#include "repzoo/lietype.hpp"

namespace repzoo {

std::string to_string(Engine e) {
    switch (e) {
        case Engine::Chardeg: return "chardeg";
        case Engine::Clifford: return "clifford";
        case Engine::Both: return "both";
        case Engine::Auto: return "auto";
    }
    return "?";
}

Engine parse_engine(const std::string& text) {
    if (text == "chardeg") return Engine::Chardeg;
    if (text == "clifford") return Engine::Clifford;
    if (text == "both") return Engine::Both;
    if (text == "auto") return Engine::Auto;
    throw ConfigError("unknown engine '" + text + "' (expected chardeg, clifford, both or auto)");
}

// ---------------------------------------------------------------------------

namespace {

std::string hash_hex(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

}  // namespace

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path ResultCache::default_dir() {
    if (const char* env = std::getenv("REPZOO_CACHE"); env && *env) return env;
    return ".repzoo-cache";
}

std::filesystem::path ResultCache::path_for(const nlohmann::json& key) const {
    std::string label = key.value("scheme", "group") + "_" + hash_hex(key.dump());
    return dir_ / (label + ".json");
}

std::optional<std::string> ResultCache::load(const nlohmann::json& key) const {
    std::ifstream in(path_for(key), std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    std::string text = os.str();
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("key") != key) return std::nullopt;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    return text;
}

void ResultCache::store(const nlohmann::json& key, const std::string& text) const {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) throw ConfigError("cannot create cache directory " + dir_.string() + ": " + ec.message());
    auto target = path_for(key);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write cache file " + tmp.string());
        out << text;
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw ConfigError("cannot move cache file into place: " + ec.message());
}

// ---------------------------------------------------------------------------

const DegreeMultiset& RingResult::degrees() const {
    if (clifford) return *clifford;
    if (chardeg) return *chardeg;
    throw ConfigError("no degrees computed for " + ring.label() + (error ? ": " + *error : ""));
}

std::vector<RingResult> run_dimirr(const ExperimentConfig& config) {
    std::optional<ResultCache> cache;
    if (config.cache_dir) cache.emplace(*config.cache_dir);
    std::vector<RingResult> out;
    for (const auto& ring : config.rings) {
        RingResult res;
        res.ring = ring;
        try {
            Integer predicted = predicted_order(config.scheme, ring);
            if (predicted > config.budget)
                throw ConfigError(config.scheme.label() + "(" + ring.label() + ") has predicted order " + predicted.str() +
                                  ", above the enumeration budget " + std::to_string(config.budget));
            res.order = static_cast<std::uint64_t>(predicted);
            std::vector<Engine> engines;
            switch (config.engine) {
                case Engine::Both: engines = {Engine::Chardeg, Engine::Clifford}; break;
                case Engine::Auto:
                    engines = {res.order > config.auto_threshold ? Engine::Clifford : Engine::Chardeg};
                    break;
                default: engines = {config.engine};
            }
            std::shared_ptr<const MatrixGroup> group;
            for (Engine e : engines) {
                nlohmann::json key{{"scheme", config.scheme.label()}, {"ring", ring}, {"engine", to_string(e)}, {"format", 1}};
                std::optional<std::string> text;
                if (cache) text = cache->load(key);
                if (!text) {
                    if (!group) group = build_group(config.scheme, ring, config.budget);
                    nlohmann::json art{{"key", key}, {"order", group->order()}};
                    if (e == Engine::Chardeg) {
                        auto classes = conjugacy_classes(*group);
                        art["classes"] = classes.count();
                        art["degrees"] = character_degrees(*group, classes);
                    } else {
                        auto report = clifford_dimirr(group, default_normal_subgroup(*group));
                        art["classes"] = report.degrees.count();
                        art["degrees"] = report.degrees;
                        art["clifford"] = report;
                    }
                    text = art.dump(1) + "\n";
                    if (cache) cache->store(key, *text);
                }
                auto art = nlohmann::json::parse(*text);
                res.classes = art.at("classes").get<std::uint64_t>();
                auto d = art.at("degrees").get<DegreeMultiset>();
                if (e == Engine::Chardeg)
                    res.chardeg = d;
                else
                    res.clifford = d;
                res.artifacts[to_string(e)] = std::move(*text);
            }
        } catch (const ConfigError& ex) {
            res.error = ex.what();
        }
        out.push_back(std::move(res));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

int poly_cost(const RationalPoly& p) { return std::max(p.degree(), 0); }

struct Choice {
    int value = -1;  // index into the sample's entries, -1 when absent
    std::uint64_t share = 0;
};

std::string note_values(std::uint64_t q, const std::vector<std::size_t>& rows, std::uint64_t degree) {
    std::ostringstream os;
    os << "q=" << q << ": rows ";
    for (std::size_t i = 0; i < rows.size(); ++i) os << (i ? "," : "") << rows[i] + 1;
    os << " share degree " << degree;
    return os.str();
}

std::pair<DegreeMultiset, std::vector<std::string>> evaluate_rows(const FitReport& fit, std::uint64_t q) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries;
    std::vector<std::string> problems;
    const Rational x{Integer(q)};
    for (std::size_t i = 0; i < fit.rows.size(); ++i) {
        Rational d = fit.rows[i].degree(x);
        Rational m = fit.rows[i].multiplicity(x);
        std::string row = "row " + std::to_string(i + 1) + " at q=" + std::to_string(q);
        if (!is_integer(m) || m < 0) {
            problems.push_back(row + ": multiplicity " + to_display_string(m) + " is not a non-negative integer");
            continue;
        }
        if (m == 0) continue;
        if (!is_integer(d) || d <= 0) {
            problems.push_back(row + ": degree " + to_display_string(d) + " is not a positive integer");
            continue;
        }
        entries.emplace_back(static_cast<std::uint64_t>(numerator(d)), static_cast<std::uint64_t>(numerator(m)));
    }
    return {DegreeMultiset(std::move(entries)), problems};
}

}  // namespace

DegreeMultiset evaluate_fit(const FitReport& fit, std::uint64_t q) {
    auto [d, problems] = evaluate_rows(fit, q);
    if (!problems.empty()) throw MathError(problems.front());
    return d;
}

FitReport fit_polynomials(const std::map<std::uint64_t, DegreeMultiset>& samples,
                          const std::optional<std::pair<std::uint64_t, DegreeMultiset>>& holdout, const FitOptions& options) {
    if (samples.size() < 3) throw ConfigError("fitting needs at least 3 sample values of q");
    FitReport report;
    std::size_t k = 0;
    for (const auto& [q, d] : samples) {
        if (d.empty()) throw ConfigError("empty degree multiset at q=" + std::to_string(q));
        k = std::max(k, d.entries().size());
        report.samples.push_back(q);
    }
    std::vector<std::uint64_t> full, deficient;
    for (const auto& [q, d] : samples) (d.entries().size() == k ? full : deficient).push_back(q);

    // Per-row options: one choice per deficient sample.
    std::vector<std::vector<std::pair<int, std::uint64_t>>> per_sample;  // sample -> [(value, share)]
    for (std::uint64_t q : deficient) {
        std::vector<std::pair<int, std::uint64_t>> opts{{-1, 0}};
        const auto& e = samples.at(q).entries();
        for (std::size_t j = 0; j < e.size(); ++j)
            for (std::uint64_t s = 1; s <= e[j].second; ++s) opts.emplace_back(static_cast<int>(j), s);
        per_sample.push_back(std::move(opts));
    }
    std::size_t option_count = 1;
    for (const auto& o : per_sample) {
        option_count *= o.size();
        if (option_count > 1'000'000) throw ConfigError("alignment search space too large; add samples with distinct degrees");
    }

    struct Option {
        std::vector<Choice> choices;
        RationalPoly d, m;
        int cost = 0;
    };
    auto fit_row = [&](std::size_t i, const std::vector<Choice>& choices) {
        std::vector<std::pair<Integer, Rational>> dp, mp;
        for (std::uint64_t q : full) {
            const auto& e = samples.at(q).entries()[i];
            dp.emplace_back(Integer(q), Rational(Integer(e.first)));
            mp.emplace_back(Integer(q), Rational(Integer(e.second)));
        }
        for (std::size_t s = 0; s < deficient.size(); ++s) {
            std::uint64_t q = deficient[s];
            if (choices[s].value < 0) {
                mp.emplace_back(Integer(q), Rational(0));
                continue;
            }
            const auto& e = samples.at(q).entries()[static_cast<std::size_t>(choices[s].value)];
            dp.emplace_back(Integer(q), Rational(Integer(e.first)));
            mp.emplace_back(Integer(q), Rational(Integer(choices[s].share)));
        }
        Option o;
        o.choices = choices;
        o.d = interpolate(SamplePointSet(std::move(dp)));
        o.m = interpolate(SamplePointSet(std::move(mp)));
        o.cost = poly_cost(o.d) + poly_cost(o.m);
        return o;
    };

    std::vector<std::vector<Option>> options_by_row(k);
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::size_t> idx(per_sample.size(), 0);
        while (true) {
            std::vector<Choice> ch;
            for (std::size_t s = 0; s < per_sample.size(); ++s) ch.push_back({per_sample[s][idx[s]].first, per_sample[s][idx[s]].second});
            Option o = fit_row(i, ch);
            bool allowed = !options.degree_ceiling ||
                           (o.d.degree() <= *options.degree_ceiling && o.m.degree() <= *options.degree_ceiling);
            if (allowed) options_by_row[i].push_back(std::move(o));
            std::size_t s = 0;
            for (; s < idx.size(); ++s) {
                if (++idx[s] < per_sample[s].size()) break;
                idx[s] = 0;
            }
            if (s == idx.size()) break;
        }
    }

    // DP over rows; the state is the multiplicity still to be covered at each
    // (deficient sample, value).
    using State = std::vector<std::uint64_t>;
    struct Node {
        int cost = std::numeric_limits<int>::max();
        std::uint64_t count = 0;
        State parent;
        std::size_t option = 0;
    };
    State start;
    std::vector<std::size_t> offset;
    for (std::uint64_t q : deficient) {
        offset.push_back(start.size());
        for (const auto& e : samples.at(q).entries()) start.push_back(e.second);
    }
    std::vector<std::map<State, Node>> layers(k + 1);
    layers[0][start] = Node{0, 1, {}, 0};
    constexpr std::uint64_t kSaturate = 1ull << 62;
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& [state, node] : layers[i]) {
            for (std::size_t oi = 0; oi < options_by_row[i].size(); ++oi) {
                const Option& o = options_by_row[i][oi];
                State next = state;
                bool ok = true;
                for (std::size_t s = 0; s < deficient.size() && ok; ++s) {
                    if (o.choices[s].value < 0) continue;
                    auto& slot = next[offset[s] + static_cast<std::size_t>(o.choices[s].value)];
                    if (slot < o.choices[s].share)
                        ok = false;
                    else
                        slot -= o.choices[s].share;
                }
                if (!ok) continue;
                int cost = node.cost + o.cost;
                Node& target = layers[i + 1][next];
                if (cost < target.cost) {
                    target = Node{cost, node.count, state, oi};
                } else if (cost == target.cost) {
                    target.count = std::min(kSaturate, target.count + node.count);
                }
            }
        }
    }
    State done(start.size(), 0);
    auto it = layers[k].find(done);
    if (it == layers[k].end()) {
        std::ostringstream os;
        os << "inconsistent row alignment across q: slot counts";
        for (const auto& [q, d] : samples) os << " q=" << q << ":" << d.entries().size();
        throw MathError(os.str());
    }
    report.total_degree = it->second.cost;
    report.optimal_alignments = it->second.count;

    std::vector<std::size_t> chosen(k);
    State cur = done;
    for (std::size_t i = k; i-- > 0;) {
        const Node& n = layers[i + 1].at(cur);
        chosen[i] = n.option;
        cur = n.parent;
    }
    for (std::size_t i = 0; i < k; ++i) {
        const Option& o = options_by_row[i][chosen[i]];
        report.rows.push_back(FitRow{o.d, o.m});
    }
    for (std::size_t s = 0; s < deficient.size(); ++s) {
        const auto& e = samples.at(deficient[s]).entries();
        for (std::size_t j = 0; j < e.size(); ++j) {
            std::vector<std::size_t> rows;
            for (std::size_t i = 0; i < k; ++i)
                if (options_by_row[i][chosen[i]].choices[s].value == static_cast<int>(j)) rows.push_back(i);
            if (rows.size() > 1) report.notes.push_back(note_values(deficient[s], rows, e[j].first));
        }
        for (std::size_t i = 0; i < k; ++i)
            if (options_by_row[i][chosen[i]].choices[s].value < 0)
                report.notes.push_back("q=" + std::to_string(deficient[s]) + ": row " + std::to_string(i + 1) +
                                       " is absent (m_" + std::to_string(i + 1) + " = 0)");
    }
    if (report.optimal_alignments > 1)
        report.ambiguity.push_back(std::to_string(report.optimal_alignments) + " alignments reach total degree " +
                                   std::to_string(report.total_degree) + "; the first in row order is reported");

    for (const auto& [q, d] : samples) {
        auto [eval, problems] = evaluate_rows(report, q);
        if (!problems.empty() || eval != d) throw InternalError("fitted rows do not reproduce the sample at q=" + std::to_string(q));
    }

    if (holdout) {
        HoldoutResult h;
        h.q = holdout->first;
        h.observed = holdout->second;
        auto [pred, problems] = evaluate_rows(report, h.q);
        h.predicted = pred;
        h.witnesses = problems;
        std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> both;
        for (const auto& [deg, m] : h.predicted.entries()) both[deg].first = m;
        for (const auto& [deg, m] : h.observed.entries()) both[deg].second = m;
        for (const auto& [deg, pm] : both)
            if (pm.first != pm.second)
                h.witnesses.push_back("degree " + std::to_string(deg) + ": predicted multiplicity " + std::to_string(pm.first) +
                                      ", observed " + std::to_string(pm.second));
        h.match = h.witnesses.empty() && h.predicted == h.observed;
        report.holdout = std::move(h);
    }
    return report;
}

void to_json(nlohmann::json& j, const FitReport& r) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < r.rows.size(); ++i) rows.push_back({{"i", i + 1}, {"d", r.rows[i].degree}, {"m", r.rows[i].multiplicity}});
    j = nlohmann::json{{"samples", r.samples},
                       {"k", r.k()},
                       {"rows", rows},
                       {"total_degree", r.total_degree},
                       {"optimal_alignments", r.optimal_alignments},
                       {"ambiguity", r.ambiguity},
                       {"notes", r.notes}};
    if (r.holdout)
        j["holdout"] = {{"q", r.holdout->q},
                        {"predicted", r.holdout->predicted},
                        {"observed", r.holdout->observed},
                        {"match", r.holdout->match},
                        {"witnesses", r.holdout->witnesses}};
    else
        j["holdout"] = nullptr;
}

void from_json(const nlohmann::json& j, FitReport& r) {
    try {
        r = FitReport{};
        r.samples = j.at("samples").get<std::vector<std::uint64_t>>();
        for (const auto& row : j.at("rows")) r.rows.push_back(FitRow{row.at("d").get<RationalPoly>(), row.at("m").get<RationalPoly>()});
        r.total_degree = j.at("total_degree").get<int>();
        r.optimal_alignments = j.at("optimal_alignments").get<std::uint64_t>();
        r.ambiguity = j.at("ambiguity").get<std::vector<std::string>>();
        r.notes = j.at("notes").get<std::vector<std::string>>();
        if (!j.at("holdout").is_null()) {
            const auto& h = j.at("holdout");
            r.holdout = HoldoutResult{h.at("q").get<std::uint64_t>(), h.at("predicted").get<DegreeMultiset>(),
                                      h.at("observed").get<DegreeMultiset>(), h.at("match").get<bool>(),
                                      h.at("witnesses").get<std::vector<std::string>>()};
        }
    } catch (const nlohmann::json::exception& ex) {
        throw ConfigError(std::string("malformed fit report JSON: ") + ex.what());
    }
}

// ---------------------------------------------------------------------------

void to_json(nlohmann::json& j, const CompareReport& r) {
    nlohmann::json diff = nlohmann::json::array();
    for (const auto& [d, m] : r.diff) diff.push_back({{"degree", d}, {"a", m.first}, {"b", m.second}});
    j = nlohmann::json{{"a", r.a.label()}, {"b", r.b.label()}, {"degrees_a", r.degrees_a},
                       {"degrees_b", r.degrees_b}, {"equal", r.equal}, {"diff", diff}};
}

CompareReport compare_rings(const GroupScheme& scheme, const RingSpec& a, const RingSpec& b, Engine engine,
                            std::optional<std::filesystem::path> cache_dir) {
    ExperimentConfig cfg;
    cfg.scheme = scheme;
    cfg.rings = {a, b};
    cfg.engine = engine;
    cfg.cache_dir = std::move(cache_dir);
    auto results = run_dimirr(cfg);
    for (const auto& r : results)
        if (r.error) throw ConfigError(*r.error);
    CompareReport rep;
    rep.a = a;
    rep.b = b;
    rep.degrees_a = results[0].degrees();
    rep.degrees_b = results[1].degrees();
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> all;
    for (const auto& [d, m] : rep.degrees_a.entries()) all[d].first = m;
    for (const auto& [d, m] : rep.degrees_b.entries()) all[d].second = m;
    for (const auto& [d, m] : all)
        if (m.first != m.second) rep.diff[d] = m;
    rep.equal = rep.diff.empty();
    return rep;
}

// ---------------------------------------------------------------------------

ReportFormat parse_report_format(const std::string& text) {
    if (text == "json") return ReportFormat::Json;
    if (text == "csv") return ReportFormat::Csv;
    if (text == "markdown" || text == "md") return ReportFormat::Markdown;
    throw ConfigError("unknown report format '" + text + "' (expected json, csv or markdown)");
}

std::string render(const FitReport& fit, ReportFormat format) {
    std::ostringstream os;
    switch (format) {
        case ReportFormat::Json: os << nlohmann::json(fit).dump(2) << "\n"; break;
        case ReportFormat::Csv:
            os << "i,d_i,m_i\n";
            for (std::size_t i = 0; i < fit.rows.size(); ++i)
                os << i + 1 << ",\"" << fit.rows[i].degree.to_string() << "\",\"" << fit.rows[i].multiplicity.to_string() << "\"\n";
            break;
        case ReportFormat::Markdown:
            os << "| i | d_i | m_i |\n|---|---|---|\n";
            for (std::size_t i = 0; i < fit.rows.size(); ++i)
                os << "| " << i + 1 << " | " << fit.rows[i].degree.to_string() << " | " << fit.rows[i].multiplicity.to_string() << " |\n";
            break;
    }
    return os.str();
}

void write_report(const FitReport& fit, ReportFormat format, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write report to " + path.string());
    out << render(fit, format);
    if (!out) throw ConfigError("failed writing report to " + path.string());
}

RingSpec field_family_ring(std::uint64_t q, int level) {
    auto pf = prime_power(q);
    if (!pf) throw ConfigError(std::to_string(q) + " is not a prime power");
    return RingSpec::unramified(pf->first, pf->second, level);
}

}  // namespace repzoo
