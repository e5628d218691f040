#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "repzoo/group.hpp"
#include "repzoo/rational.hpp"

namespace repzoo {

/// Multiset of irreducible degrees as (degree, multiplicity), sorted by degree.
class DegreeMultiset {
   public:
    DegreeMultiset() = default;
    /// Merges repeated degrees; drops zero multiplicities.
    explicit DegreeMultiset(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries);
    static DegreeMultiset from_degrees(const std::vector<std::uint64_t>& degrees);

    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }
    /// Number of irreducibles.
    std::uint64_t count() const;
    /// Sum of m * d^2.
    Integer sum_of_squares() const;
    std::uint64_t multiplicity(std::uint64_t degree) const;
    std::vector<std::uint64_t> degrees() const;

    /// Throws MathError unless sum m d^2 = order, sum m = class_count and every d divides order.
    void check(std::uint64_t order, std::uint64_t class_count) const;

    void merge(const DegreeMultiset& other);
    /// Every degree multiplied by `factor`.
    DegreeMultiset scaled(std::uint64_t factor) const;

    /// "[(1,2),(2,1)]"
    std::string to_string() const;

    friend bool operator==(const DegreeMultiset&, const DegreeMultiset&) = default;

   private:
    std::vector<std::pair<std::uint64_t, std::uint64_t>> entries_;
};

void to_json(nlohmann::json& j, const DegreeMultiset& d);
void from_json(const nlohmann::json& j, DegreeMultiset& d);

/// Irreducible characters with values in F_l, one row per character and one
/// column per conjugacy class. Rows are sorted by degree, then by values.
struct CharacterTableModP {
    std::uint64_t ell = 0;
    std::uint64_t exponent = 1;        // exponent of G; divides ell - 1
    std::uint64_t primitive_root = 1;  // generator of F_ell^x
    std::vector<std::uint64_t> degrees;
    std::vector<std::vector<std::uint64_t>> values;
    std::size_t identity_class = 0;

    std::size_t size() const noexcept { return degrees.size(); }
    /// Primitive m-th root of unity in F_ell (m must divide ell - 1).
    std::uint64_t root_of_unity(std::uint64_t m) const;
};

/// Smallest prime l = 1 mod exp(G) with l > 2 sqrt(|G|).
std::uint64_t choose_modulus(std::uint64_t order, std::uint64_t exponent);

/// Dixon-Schneider: class matrices, simultaneous eigenvectors over F_l and
/// lifting of degrees. Throws InternalError if the eigenspaces fail to split.
CharacterTableModP character_table_mod_p(const FiniteGroup& g, const ConjugacyClassData& classes);

/// dimirr(G); the three identities of DegreeMultiset::check are asserted.
DegreeMultiset character_degrees(const FiniteGroup& g, const ConjugacyClassData& classes);
DegreeMultiset character_degrees(const FiniteGroup& g);

/// [(1, |G|)]; ConfigError unless G is abelian.
DegreeMultiset abelian_degrees(const FiniteGroup& g);

/// lcm of the orders of the class representatives.
std::uint64_t group_exponent(const FiniteGroup& g, const ConjugacyClassData& classes);

}  // namespace repzoo
