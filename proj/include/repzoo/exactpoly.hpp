#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "repzoo/error.hpp"
#include "repzoo/rational.hpp"

namespace repzoo {

/// Univariate polynomial over Q, coefficients in ascending degree order.
///
/// Always canonical: no trailing zero coefficient, and the zero polynomial
/// has no coefficients at all. Every operation returns canonical values.
class RationalPoly {
   public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<Rational> coefficients);
    RationalPoly(std::initializer_list<Rational> coefficients);

    static RationalPoly constant(const Rational& c);
    static RationalPoly monomial(const Rational& c, std::size_t degree);
    /// The polynomial x.
    static RationalPoly x();

    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Rational coefficient(std::size_t i) const;
    Rational leading() const;
    bool has_integer_coefficients() const;

    Rational operator()(const Rational& x) const;  // Horner

    RationalPoly operator-() const;
    RationalPoly& operator+=(const RationalPoly& rhs);
    RationalPoly& operator-=(const RationalPoly& rhs);
    RationalPoly& operator*=(const RationalPoly& rhs);
    RationalPoly& operator*=(const Rational& s);

    friend RationalPoly operator+(RationalPoly a, const RationalPoly& b) { return a += b; }
    friend RationalPoly operator-(RationalPoly a, const RationalPoly& b) { return a -= b; }
    friend RationalPoly operator*(RationalPoly a, const RationalPoly& b) { return a *= b; }
    friend RationalPoly operator*(RationalPoly a, const Rational& s) { return a *= s; }
    friend RationalPoly operator*(const Rational& s, RationalPoly a) { return a *= s; }

    friend bool operator==(const RationalPoly&, const RationalPoly&) = default;
    /// Lexicographic on the ascending coefficient sequence (shorter prefix first).
    friend std::strong_ordering operator<=>(const RationalPoly& a, const RationalPoly& b);

    /// Human-readable, highest degree first: "1/2*x^2 - 1/2*x".
    std::string to_string(const std::string& var = "x") const;

   private:
    void canonicalize();
    std::vector<Rational> coeffs_;
};

/// Quotient and remainder of a / b over Q. Throws ConfigError if b is zero.
std::pair<RationalPoly, RationalPoly> divmod(const RationalPoly& a, const RationalPoly& b);

/// Exact quotient, or nullopt when b does not divide a.
std::optional<RationalPoly> divide_exact(const RationalPoly& a, const RationalPoly& b);

/// Interpolation input: distinct integer arguments with rational values,
/// kept sorted by argument.
class SamplePointSet {
   public:
    SamplePointSet() = default;
    /// Throws ConfigError on duplicate arguments.
    explicit SamplePointSet(std::vector<std::pair<Integer, Rational>> points);

    const std::vector<std::pair<Integer, Rational>>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }

   private:
    std::vector<std::pair<Integer, Rational>> points_;
};

/// Unique polynomial of degree < #points through every sample (Lagrange form).
RationalPoly interpolate(const SamplePointSet& samples);

/// Polynomial on residue classes: value at q^d is constituents[d mod period](q^d).
class PorcFunction {
   public:
    /// With `counting` set, integrality of the values at q^d, d = 1..20, is
    /// checked on construction (MathError if violated).
    PorcFunction(Integer base, std::vector<RationalPoly> constituents, bool counting = false);

    const Integer& base() const noexcept { return base_; }
    std::size_t period() const noexcept { return constituents_.size(); }
    const std::vector<RationalPoly>& constituents() const noexcept { return constituents_; }
    const RationalPoly& constituent_for(std::uint64_t d) const { return constituents_[d % period()]; }

    Rational value(std::uint64_t d) const;

    /// Same function re-expressed with a period that is a multiple of the current one.
    PorcFunction lifted(std::size_t new_period) const;

    friend bool operator==(const PorcFunction&, const PorcFunction&) = default;

   private:
    Integer base_;
    std::vector<RationalPoly> constituents_;
};

PorcFunction operator*(const PorcFunction& f, const PorcFunction& g);

/// f / g with period lcm(N_f, N_g). Throws MathError when some residue class
/// does not divide exactly.
PorcFunction porc_quotient(const PorcFunction& f, const PorcFunction& g);

struct PorcConsolidation {
    /// Sorted, deduplicated.
    std::vector<RationalPoly> polynomials;
    /// lcm of the member periods.
    std::size_t period = 1;
    /// Beyond this index every residue class uses pairwise-separated constituents.
    std::uint64_t crossover = 1;
    /// Number of constant polynomials added for d < crossover.
    std::size_t exceptional_constants = 0;
};

/// Finite set of polynomials realizing every value f(q^d) of the family.
///
/// Preconditions checked: non-empty family, shared base, each period at most
/// `period_bound`, and at most `value_count_bound` distinct values at every
/// d <= max(horizon, crossover). Violation of the value-count bound raises
/// MathError naming the witness d.
PorcConsolidation porc_consolidate(const std::vector<PorcFunction>& family, std::size_t period_bound,
                                   std::size_t value_count_bound, std::uint64_t horizon = 20);

/// Every d >= 1 with p(q^d) == 0, for nonzero p and q >= 2 (searched up to the Cauchy root bound).
std::vector<std::uint64_t> prime_power_roots(const RationalPoly& p, const Integer& q);

void to_json(nlohmann::json& j, const RationalPoly& p);
void from_json(const nlohmann::json& j, RationalPoly& p);

}  // namespace repzoo
