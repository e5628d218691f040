#include "modp.hpp"

#include <algorithm>
#include <limits>

#include "repzoo/error.hpp"

namespace repzoo::modp {

Field::Field(std::uint64_t l) : l_(l), barrett_(std::numeric_limits<std::uint64_t>::max() / l) {
    if (l < 2 || l >= (1ull << 31)) throw InternalError("modular field size out of range");
}

std::uint64_t Field::pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1 % l_, b = a % l_;
    while (e) {
        if (e & 1u) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

std::uint64_t Field::from_signed(std::int64_t a) const noexcept {
    auto m = static_cast<std::int64_t>(l_);
    a %= m;
    return static_cast<std::uint64_t>(a < 0 ? a + m : a);
}

std::uint64_t Field::primitive_root() const {
    std::vector<std::uint64_t> factors;
    std::uint64_t n = l_ - 1;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        factors.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) factors.push_back(n);
    for (std::uint64_t g = 2; g < l_; ++g) {
        bool ok = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t p) { return pow(g, (l_ - 1) / p) != 1; });
        if (ok) return g;
    }
    return 1;  // l = 2
}

std::vector<std::size_t> rref(const Field& f, Matrix& rows) {
    std::vector<std::size_t> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t p = r;
        while (p < rows.size() && rows[p][c] == 0) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[r]);
        std::uint64_t s = f.inv(rows[r][c]);
        for (std::size_t j = c; j < cols; ++j) rows[r][j] = f.mul(rows[r][j], s);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            std::uint64_t factor = f.neg(rows[i][c]);
            for (std::size_t j = c; j < cols; ++j)
                if (rows[r][j]) rows[i][j] = f.add(rows[i][j], f.mul(factor, rows[r][j]));
        }
        pivots.push_back(c);
        ++r;
    }
    rows.resize(r);
    return pivots;
}

Matrix nullspace(const Field& f, Matrix a) {
    const std::size_t n = a.empty() ? 0 : a[0].size();
    auto pivots = rref(f, a);
    std::vector<char> is_pivot(n, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    Matrix basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        Vector v(n, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(a[i][free]);
        basis.push_back(std::move(v));
    }
    rref(f, basis);
    return basis;
}

Vector charpoly(const Field& f, Matrix a) {
    const std::size_t n = a.size();
    // Similarity reduction to upper Hessenberg form.
    for (std::size_t c = 0; c + 2 < n; ++c) {
        std::size_t p = c + 1;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        if (p != c + 1) {
            std::swap(a[p], a[c + 1]);
            for (auto& row : a) std::swap(row[p], row[c + 1]);
        }
        std::uint64_t pivot_inv = f.inv(a[c + 1][c]);
        for (std::size_t r = c + 2; r < n; ++r) {
            if (a[r][c] == 0) continue;
            std::uint64_t m = f.mul(a[r][c], pivot_inv);
            for (std::size_t j = 0; j < n; ++j) a[r][j] = f.sub(a[r][j], f.mul(m, a[c + 1][j]));
            for (std::size_t i = 0; i < n; ++i) a[i][c + 1] = f.add(a[i][c + 1], f.mul(m, a[i][r]));
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    std::vector<Vector> p(n + 1);
    p[0] = Vector{1};
    for (std::size_t k = 1; k <= n; ++k) {
        Vector next(k + 1, 0);
        const Vector& prev = p[k - 1];
        for (std::size_t i = 0; i < prev.size(); ++i) {
            next[i + 1] = f.add(next[i + 1], prev[i]);
            next[i] = f.sub(next[i], f.mul(a[k - 1][k - 1], prev[i]));
        }
        std::uint64_t prod = 1;
        for (std::size_t i = k - 1; i-- > 0;) {
            prod = f.mul(prod, a[i + 1][i]);
            if (prod == 0) break;
            std::uint64_t coef = f.mul(a[i][k - 1], prod);
            if (coef == 0) continue;
            const Vector& lower = p[i];
            for (std::size_t t = 0; t < lower.size(); ++t) next[t] = f.sub(next[t], f.mul(coef, lower[t]));
        }
        p[k] = std::move(next);
    }
    return p[n];
}

std::vector<std::pair<std::uint64_t, int>> roots(const Field& f, Vector poly) {
    std::vector<std::pair<std::uint64_t, int>> out;
    const std::uint64_t l = f.modulus();
    auto eval = [&](std::uint64_t x) {
        std::uint64_t acc = 0;
        for (std::size_t i = poly.size(); i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
        return acc;
    };
    auto deflate = [&](std::uint64_t x) {
        // Synthetic division by (t - x).
        Vector q(poly.size() - 1, 0);
        std::uint64_t carry = 0;
        for (std::size_t i = poly.size(); i-- > 1;) {
            carry = f.add(f.mul(carry, x), poly[i]);
            q[i - 1] = carry;
        }
        poly = std::move(q);
    };
    for (std::uint64_t x = 0; x < l && poly.size() > 1; ++x) {
        int mult = 0;
        while (poly.size() > 1 && eval(x) == 0) {
            deflate(x);
            ++mult;
        }
        if (mult) out.emplace_back(x, mult);
    }
    return out;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::uint64_t prime_congruent_one(std::uint64_t m, std::uint64_t lower_exclusive, std::uint64_t limit) {
    std::uint64_t start = lower_exclusive / m + 1;
    for (std::uint64_t k = start;; ++k) {
        std::uint64_t l = k * m + 1;
        if (l > limit) break;
        if (l > lower_exclusive && is_prime(l)) return l;
    }
    throw MathError("no prime l = 1 mod " + std::to_string(m) + " between " + std::to_string(lower_exclusive) +
                    " and " + std::to_string(limit));
}

}  // namespace repzoo::modp
