#pragma once

// Dense linear algebra over F_l for l < 2^31.

#include <cstdint>
#include <optional>
#include <vector>

namespace repzoo::modp {

class Field {
   public:
    explicit Field(std::uint64_t l);

    std::uint64_t modulus() const noexcept { return l_; }
    std::uint64_t reduce(std::uint64_t x) const noexcept {
        auto qt = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * barrett_) >> 64);
        std::uint64_t r = x - qt * l_;
        return r >= l_ ? r - l_ : r;
    }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= l_ ? s - l_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept { return a >= b ? a - b : a + l_ - b; }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : l_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return reduce(a * b); }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    /// a must be nonzero.
    std::uint64_t inv(std::uint64_t a) const noexcept { return pow(a, l_ - 2); }
    std::uint64_t from_signed(std::int64_t a) const noexcept;

    /// Generator of F_l^x.
    std::uint64_t primitive_root() const;

   private:
    std::uint64_t l_;
    std::uint64_t barrett_;
};

using Matrix = std::vector<std::vector<std::uint64_t>>;
using Vector = std::vector<std::uint64_t>;

/// Row-reduces in place; returns pivot columns.
std::vector<std::size_t> rref(const Field& f, Matrix& rows);

/// Basis (as RREF rows) of {x : A x = 0} for square A.
Matrix nullspace(const Field& f, Matrix a);

/// Characteristic polynomial det(xI - A), ascending coefficients, via a Hessenberg reduction.
Vector charpoly(const Field& f, Matrix a);

/// Distinct roots in F_l with their multiplicities, found by exhaustive evaluation and deflation.
std::vector<std::pair<std::uint64_t, int>> roots(const Field& f, Vector poly);

bool is_prime(std::uint64_t n);

/// Smallest prime l > lower_exclusive with l = 1 mod m.
std::uint64_t prime_congruent_one(std::uint64_t m, std::uint64_t lower_exclusive, std::uint64_t limit);

}  // namespace repzoo::modp
