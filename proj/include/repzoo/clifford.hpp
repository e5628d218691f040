#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <vector>

#include <json.hpp>

#include "repzoo/chardeg.hpp"
#include "repzoo/group.hpp"
#include "repzoo/matgrp.hpp"

namespace repzoo {

/// psi(b_1^x_1 ... b_k^x_k) = exp(2 pi i sum_j c_j x_j / d_j) for the basis b_j of
/// orders d_j fixed by the owning DualGroup.
struct DualCharacter {
    std::vector<std::uint64_t> exponents;  // c_j mod d_j
    friend auto operator<=>(const DualCharacter&, const DualCharacter&) = default;
};

/// Character group of a finite abelian group given as a sorted set of
/// ordinals of an ambient group.
class DualGroup {
   public:
    /// Throws ConfigError if the subset is not an abelian subgroup.
    DualGroup(std::shared_ptr<const FiniteGroup> ambient, std::vector<Ordinal> members);

    const FiniteGroup& ambient() const noexcept { return *ambient_; }
    const std::vector<Ordinal>& members() const noexcept { return members_; }
    /// Basis elements (ambient ordinals) and their orders; N is their direct product.
    const std::vector<Ordinal>& basis() const noexcept { return basis_; }
    const std::vector<std::uint64_t>& basis_orders() const noexcept { return orders_; }
    std::uint64_t exponent() const noexcept { return exponent_; }
    std::size_t size() const noexcept { return members_.size(); }

    /// Coordinates of an ambient element of N in the basis.
    const std::vector<std::uint64_t>& coordinates(Ordinal n) const;
    std::optional<std::size_t> index_of(Ordinal n) const;

    /// Characters in lexicographic order of exponent vectors.
    std::uint64_t code(const DualCharacter& psi) const;
    DualCharacter character(std::uint64_t code) const;
    std::vector<DualCharacter> all() const;
    DualCharacter trivial() const { return DualCharacter{std::vector<std::uint64_t>(orders_.size(), 0)}; }

    /// psi(n) = zeta_E^k with E = exponent(); returns k.
    std::uint64_t value_exponent(const DualCharacter& psi, Ordinal n) const;
    DualCharacter product(const DualCharacter& a, const DualCharacter& b) const;
    std::uint64_t character_order(const DualCharacter& psi) const;

    /// (^g psi)(n) = psi(g^-1 n g), g an ambient element normalizing N.
    DualCharacter act(Ordinal g, const DualCharacter& psi) const;

   private:
    std::shared_ptr<const FiniteGroup> ambient_;
    std::vector<Ordinal> members_;
    std::vector<Ordinal> basis_;
    std::vector<std::uint64_t> orders_;
    std::vector<std::vector<std::uint64_t>> coords_;  // by position in members_
    std::uint64_t exponent_ = 1;
};

struct OrbitRecord {
    DualCharacter representative;  // lexicographically least in its orbit
    std::size_t orbit_size = 0;
    std::vector<Ordinal> stabilizer;  // sorted ordinals of G
    /// Degrees of Irr(Stab | psi).
    DegreeMultiset above;
    /// |Irr(Stab/N)|, the count an extension of psi to Stab would predict.
    std::size_t quotient_irr_count = 0;
    bool isotypic = false;

    std::size_t irr_count() const { return static_cast<std::size_t>(above.count()); }
    bool extension_count_matches() const { return irr_count() == quotient_irr_count; }
};

struct CliffordReport {
    std::size_t group_order = 0;
    std::size_t normal_order = 0;
    std::vector<OrbitRecord> orbits;
    DegreeMultiset degrees;
    /// Irreducibles whose restriction to N is a multiple of one character.
    std::size_t isotypic_count = 0;
};

void to_json(nlohmann::json& j, const CliffordReport& r);

/// All |N| characters of N, pairwise distinct. ConfigError unless N is abelian.
std::vector<DualCharacter> dual_group(const DualGroup& dual);

/// G-orbits on Irr(N) with exact stabilizers; `above` and the counts are left empty.
std::vector<OrbitRecord> orbits_and_stabilizers(std::shared_ptr<const FiniteGroup> g, const DualGroup& dual);

/// Degrees of Irr(G | psi): Irr(Stab | psi) scaled by [G : Stab].
DegreeMultiset irr_above(std::shared_ptr<const FiniteGroup> g, const DualGroup& dual, const DualCharacter& psi);

/// dimirr(G) assembled orbit by orbit from a normal abelian subgroup N.
CliffordReport clifford_dimirr(std::shared_ptr<const FiniteGroup> g, std::vector<Ordinal> normal_subgroup);

/// K^ceil(r/2) for r >= 2; the last-column subgroup for unitriangular and
/// Borel groups over a field; otherwise the trivial subgroup.
std::vector<Ordinal> default_normal_subgroup(const MatrixGroup& g);

}  // namespace repzoo
