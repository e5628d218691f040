#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "repzoo/group.hpp"
#include "repzoo/localring.hpp"
#include "repzoo/rational.hpp"

namespace repzoo {

enum class SchemeFamily { GL, SL, Unitriangular, Borel, Torus };

struct GroupScheme {
    SchemeFamily family = SchemeFamily::GL;
    int n = 2;

    /// "GL2", "SL3", "U3", "B2", "T2".
    std::string label() const;
    friend bool operator==(const GroupScheme&, const GroupScheme&) = default;
};

/// Parses the labels produced by GroupScheme::label(). Throws ConfigError.
GroupScheme parse_group_scheme(const std::string& text);

/// |scheme(ring)| from the closed formulas.
Integer predicted_order(const GroupScheme& scheme, const RingSpec& ring);

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

/// Enumerated matrix group G(o_r). Ordinals follow the row-major code order of
/// the matrices, so every build of the same (scheme, ring) is identical.
class MatrixGroup final : public FiniteGroup {
   public:
    /// Throws ConfigError when the predicted order exceeds `budget`.
    static std::shared_ptr<const MatrixGroup> build(const GroupScheme& scheme, const RingSpec& ring,
                                                    std::uint64_t budget = kDefaultBudget);

    std::size_t order() const override { return codes_.size(); }
    Ordinal identity() const override { return identity_; }
    Ordinal mul(Ordinal a, Ordinal b) const override;
    Ordinal inv(Ordinal a) const override { return inverse_[a]; }

    const GroupScheme& scheme() const noexcept { return scheme_; }
    const QuotientRing& ring() const noexcept { return ring_; }
    int n() const noexcept { return scheme_.n; }

    /// Row-major entries.
    std::vector<RingElement> matrix(Ordinal a) const;
    std::optional<Ordinal> find(std::span<const RingElement> entries) const;

   private:
    MatrixGroup(GroupScheme scheme, QuotientRing ring);

    std::uint64_t encode(std::span<const std::uint32_t> entries) const;
    std::optional<Ordinal> find_code(std::uint64_t code) const;
    void multiply(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;
    std::uint32_t radd(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t rmul(std::uint32_t a, std::uint32_t b) const;

    void enumerate(std::uint64_t budget);

    GroupScheme scheme_;
    QuotientRing ring_;
    std::optional<RingTables> tables_;
    std::vector<std::uint64_t> codes_;     // sorted
    std::vector<std::uint32_t> entries_;   // n*n ring codes per element
    std::vector<Ordinal> inverse_;
    Ordinal identity_ = 0;
};

std::shared_ptr<const MatrixGroup> build_group(const GroupScheme& scheme, const RingSpec& ring,
                                               std::uint64_t budget = kDefaultBudget);

/// K^i = ker(G(o_r) -> G(o_i)) for 1 <= i <= r, as sorted ordinals.
std::vector<Ordinal> congruence_kernel(const MatrixGroup& g, int i);

/// Matrices I + v e_n^T with v supported on rows 0..n-2, intersected with G.
/// Normal and abelian in the unitriangular and Borel families.
std::vector<Ordinal> last_column_subgroup(const MatrixGroup& g);

/// Scheme, ring, order and a hash of the sorted class sizes.
nlohmann::json fingerprint(const MatrixGroup& g, const ConjugacyClassData& classes);

}  // namespace repzoo
