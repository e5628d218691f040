#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "repzoo/chardeg.hpp"
#include "repzoo/exactpoly.hpp"
#include "repzoo/localring.hpp"
#include "repzoo/matgrp.hpp"

namespace repzoo {

enum class Engine { Chardeg, Clifford, Both, Auto };

std::string to_string(Engine e);
Engine parse_engine(const std::string& text);

/// Content-addressed JSON store: one file per key, named by a hash of the
/// key's canonical dump. Writes go through a temporary file and a rename.
class ResultCache {
   public:
    explicit ResultCache(std::filesystem::path dir);

    /// REPZOO_CACHE if set, else ".repzoo-cache".
    static std::filesystem::path default_dir();

    const std::filesystem::path& dir() const noexcept { return dir_; }
    std::filesystem::path path_for(const nlohmann::json& key) const;
    /// Raw file text on a hit.
    std::optional<std::string> load(const nlohmann::json& key) const;
    void store(const nlohmann::json& key, const std::string& text) const;

   private:
    std::filesystem::path dir_;
};

struct ExperimentConfig {
    GroupScheme scheme;
    std::vector<RingSpec> rings;
    Engine engine = Engine::Auto;
    std::uint64_t budget = kDefaultBudget;
    /// Auto picks Clifford above this order.
    std::uint64_t auto_threshold = 50'000;
    std::optional<std::filesystem::path> cache_dir;
};

struct RingResult {
    RingSpec ring;
    std::uint64_t order = 0;
    std::uint64_t classes = 0;
    std::optional<DegreeMultiset> chardeg;
    std::optional<DegreeMultiset> clifford;
    /// Canonical JSON text per engine, as stored in or read from the cache.
    std::map<std::string, std::string> artifacts;
    std::optional<std::string> error;

    /// The answer: Clifford if present, else chardeg.
    const DegreeMultiset& degrees() const;
    bool engines_agree() const { return !chardeg || !clifford || *chardeg == *clifford; }
};

/// One result per ring; budget and configuration problems become per-ring errors.
std::vector<RingResult> run_dimirr(const ExperimentConfig& config);

struct FitRow {
    RationalPoly degree;
    RationalPoly multiplicity;
    friend bool operator==(const FitRow&, const FitRow&) = default;
};

struct HoldoutResult {
    std::uint64_t q = 0;
    DegreeMultiset predicted;
    DegreeMultiset observed;
    bool match = false;
    std::vector<std::string> witnesses;
    friend bool operator==(const HoldoutResult&, const HoldoutResult&) = default;
};

struct FitReport {
    std::vector<std::uint64_t> samples;
    std::vector<FitRow> rows;
    /// Sum of polynomial degrees over all rows (the alignment objective).
    int total_degree = 0;
    /// Number of alignments reaching the minimum.
    std::uint64_t optimal_alignments = 1;
    std::vector<std::string> ambiguity;
    /// Collisions and absent rows at individual samples.
    std::vector<std::string> notes;
    std::optional<HoldoutResult> holdout;

    std::size_t k() const noexcept { return rows.size(); }
    friend bool operator==(const FitReport&, const FitReport&) = default;
};

void to_json(nlohmann::json& j, const FitReport& r);
void from_json(const nlohmann::json& j, FitReport& r);

struct FitOptions {
    /// Alignments needing a polynomial above this degree are excluded.
    std::optional<int> degree_ceiling;
};

/// Aligns rows by ascending degree at the samples with the most distinct
/// degrees; at the other samples each row takes a value (sharing its
/// multiplicity with other rows) or is absent, and the alignment of least
/// total polynomial degree is chosen. Ties are reported in `ambiguity`.
FitReport fit_polynomials(const std::map<std::uint64_t, DegreeMultiset>& samples,
                          const std::optional<std::pair<std::uint64_t, DegreeMultiset>>& holdout = std::nullopt,
                          const FitOptions& options = {});

/// Rows evaluated at q, zero multiplicities dropped. MathError if a value is
/// not a positive integer degree with a non-negative integer multiplicity.
DegreeMultiset evaluate_fit(const FitReport& fit, std::uint64_t q);

struct CompareReport {
    RingSpec a, b;
    DegreeMultiset degrees_a, degrees_b;
    bool equal = false;
    /// degree -> (multiplicity in a, multiplicity in b) where they differ.
    std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> diff;
};

void to_json(nlohmann::json& j, const CompareReport& r);

CompareReport compare_rings(const GroupScheme& scheme, const RingSpec& a, const RingSpec& b, Engine engine = Engine::Auto,
                            std::optional<std::filesystem::path> cache_dir = std::nullopt);

enum class ReportFormat { Json, Csv, Markdown };
ReportFormat parse_report_format(const std::string& text);

/// Table with columns i, d_i, m_i.
std::string render(const FitReport& fit, ReportFormat format);
/// Writes render(fit, format); ConfigError if the path is not writable.
void write_report(const FitReport& fit, ReportFormat format, const std::filesystem::path& path);

/// Unramified ring of residue size q at the given level.
RingSpec field_family_ring(std::uint64_t q, int level);

}  // namespace repzoo
