#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "repzoo/error.hpp"

namespace repzoo {

enum class RingKind { Unramified, EqChar, Eisenstein };

std::string to_string(RingKind kind);

/// Finite quotient o/p^r of a local ring with residue field F_q, q = p^f.
///
///  Unramified(p, f, r)   Galois ring Z[y]/(p^r, h(y))
///  EqChar(p, f, r)       F_q[t]/(t^r)
///  Eisenstein(p,f,e,r)   W(F_q)[pi]/(pi^e - p, pi^r), tame (p does not divide e)
///
/// `modulus` holds h ascending, monic of degree f, irreducible mod p.
struct RingSpec {
    RingKind kind = RingKind::Unramified;
    int p = 2;
    int f = 1;
    int e = 1;  // 1 for Unramified, 0 (unused) for EqChar
    int r = 1;
    std::vector<int> modulus;

    static RingSpec unramified(int p, int f, int r);
    static RingSpec eqchar(int p, int f, int r);
    static RingSpec eisenstein(int p, int f, int e, int r);

    std::uint64_t q() const;
    std::uint64_t cardinality() const;
    /// Same ring family at another level.
    RingSpec at_level(int level) const;
    /// Short label, e.g. "unram:3,1,2", "eis:5,1,2,2".
    std::string label() const;

    friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Wild Eisenstein rings (p | e) are only built for the truncation check.
enum class Ramification { Tame, AllowWild };

/// Throws ConfigError unless p is prime, f, r >= 1, the modulus is monic of
/// degree f and irreducible mod p, and (Eisenstein) e >= 2 with p not dividing e.
void validate(const RingSpec& spec, Ramification ram = Ramification::Tame);

/// Parses "unram:p,f,r", "eqchar:p,f,r", "eis:p,f,e,r" with the default modulus.
RingSpec parse_ring_spec(const std::string& text);

/// Lexicographically least monic irreducible of degree f over F_p, ascending.
std::vector<int> default_modulus(int p, int f);

bool is_irreducible_mod_p(const std::vector<int>& poly, int p);
bool is_prime(std::uint64_t n);

void to_json(nlohmann::json& j, const RingSpec& s);
void from_json(const nlohmann::json& j, RingSpec& s);

/// Canonical handle for a ring element: a mixed-radix code of its coordinate vector.
struct RingElement {
    std::uint64_t code = 0;
    friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

class QuotientRing {
   public:
    explicit QuotientRing(RingSpec spec, Ramification ram = Ramification::Tame);

    const RingSpec& spec() const noexcept { return spec_; }
    std::uint64_t size() const noexcept { return size_; }
    std::uint64_t residue_size() const noexcept { return q_; }
    int level() const noexcept { return spec_.r; }

    RingElement zero() const { return RingElement{0}; }
    RingElement one() const;
    RingElement from_integer(std::int64_t n) const;
    /// Generator of the maximal ideal: p (Unramified), t (EqChar), pi (Eisenstein).
    RingElement uniformizer() const;
    /// Element whose digit-0 coordinates are the given residue coordinates (each mod p).
    RingElement lift_residue(std::span<const std::int64_t> residue_coords) const;

    RingElement element(std::uint64_t code) const;
    std::vector<RingElement> elements() const;

    /// Coordinates: for each pi-digit j < min(e, r), f integers mod p^{ceil((r-j)/e)}.
    std::vector<std::int64_t> coordinates(RingElement a) const;
    RingElement from_coordinates(std::span<const std::int64_t> coords) const;
    std::size_t coordinate_count() const noexcept { return radix_.size(); }

    RingElement add(RingElement a, RingElement b) const;
    RingElement sub(RingElement a, RingElement b) const;
    RingElement neg(RingElement a) const;
    RingElement mul(RingElement a, RingElement b) const;
    RingElement pow(RingElement a, std::uint64_t n) const;

    bool is_unit(RingElement a) const;
    /// Throws MathError for non-units.
    RingElement inverse(RingElement a) const;
    /// q^r - q^(r-1).
    std::uint64_t unit_count() const noexcept { return size_ - size_ / q_; }
    std::uint64_t additive_order(RingElement a) const;

    /// Image under the reduction map onto `lower`, which must be this ring family at a level <= r.
    RingElement reduce(RingElement a, const QuotientRing& lower) const;

   private:
    using Digits = std::vector<std::int64_t>;
    Digits decode(RingElement a) const;
    RingElement encode(const Digits& d) const;
    void normalize(Digits& d) const;

    RingSpec spec_;
    int e_eff_ = 1;       // pi^e = p; EqChar behaves as e = r
    int digits_ = 1;      // min(e_eff, r)
    std::int64_t top_modulus_ = 2;        // p^ceil(r / e_eff)
    std::vector<std::int64_t> radix_;     // per coordinate
    std::vector<std::uint64_t> place_;    // positional weight per coordinate
    std::uint64_t q_ = 2;
    std::uint64_t size_ = 2;
};

/// Dense operation tables for small rings (size <= 1024), used by matrix-group kernels.
class RingTables {
   public:
    explicit RingTables(const QuotientRing& ring);

    std::uint32_t size() const noexcept { return n_; }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept { return add_[a * n_ + b]; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return mul_[a * n_ + b]; }
    std::uint32_t neg(std::uint32_t a) const noexcept { return neg_[a]; }
    bool is_unit(std::uint32_t a) const noexcept { return unit_[a] != 0; }
    /// Meaningful only for units.
    std::uint32_t inverse(std::uint32_t a) const noexcept { return inv_[a]; }

    static constexpr std::uint64_t kMaxSize = 1024;

   private:
    std::uint32_t n_;
    std::vector<std::uint16_t> add_, mul_, neg_, inv_;
    std::vector<std::uint8_t> unit_;
};

/// Outcome of comparing Eisenstein(p,f,e,r) with F_q[t]/(t^r).
struct TruncationIsomorphism {
    bool isomorphic = false;
    RingSpec source;  // EqChar(p, f, r) with the same modulus
    RingSpec target;
    /// source code -> target code; filled when isomorphic.
    std::vector<std::uint64_t> map;
    /// Image of t.
    std::optional<RingElement> image_of_t;
    bool verified = false;
    std::string reason;
};

/// True iff e >= r; p | e is accepted here. Then builds t -> pi and verifies bijectivity plus
/// additivity and multiplicativity against every element for each additive
/// generator. Throws ConfigError if `spec` is not Eisenstein.
TruncationIsomorphism iso_check_truncated(const RingSpec& spec);

}  // namespace repzoo
