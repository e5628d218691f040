#include "repzoo/matgrp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

namespace repzoo {

std::string GroupScheme::label() const {
    switch (family) {
        case SchemeFamily::GL: return "GL" + std::to_string(n);
        case SchemeFamily::SL: return "SL" + std::to_string(n);
        case SchemeFamily::Unitriangular: return "U" + std::to_string(n);
        case SchemeFamily::Borel: return "B" + std::to_string(n);
        case SchemeFamily::Torus: return "T" + std::to_string(n);
    }
    return "?";
}

GroupScheme parse_group_scheme(const std::string& text) {
    std::size_t split = 0;
    while (split < text.size() && std::isalpha(static_cast<unsigned char>(text[split]))) ++split;
    std::string head = text.substr(0, split);
    std::string tail = text.substr(split);
    for (auto& c : head) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    GroupScheme s;
    if (head == "GL")
        s.family = SchemeFamily::GL;
    else if (head == "SL")
        s.family = SchemeFamily::SL;
    else if (head == "U")
        s.family = SchemeFamily::Unitriangular;
    else if (head == "B")
        s.family = SchemeFamily::Borel;
    else if (head == "T")
        s.family = SchemeFamily::Torus;
    else
        throw ConfigError("unknown group scheme '" + text + "' (expected GL<n>, SL<n>, U<n>, B<n> or T<n>)");
    if (tail.empty() || !std::all_of(tail.begin(), tail.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw ConfigError("group scheme '" + text + "' needs a matrix size");
    s.n = std::stoi(tail);
    if (s.n < 1 || s.n > 8) throw ConfigError("matrix size must lie in 1..8");
    return s;
}

Integer predicted_order(const GroupScheme& scheme, const RingSpec& ring) {
    const Integer q = ring.q();
    const auto n = static_cast<unsigned>(scheme.n);
    const auto r = static_cast<unsigned>(ring.r);
    const Integer units = ipow(q, r) - ipow(q, r - 1);
    const Integer upper = ipow(q, r * n * (n - 1) / 2);
    auto gl = [&] {
        Integer out = ipow(q, (r - 1) * n * n);
        for (unsigned i = 0; i < n; ++i) out *= ipow(q, n) - ipow(q, i);
        return out;
    };
    switch (scheme.family) {
        case SchemeFamily::GL: return gl();
        case SchemeFamily::SL: return gl() / units;
        case SchemeFamily::Unitriangular: return upper;
        case SchemeFamily::Borel: return upper * ipow(units, n);
        case SchemeFamily::Torus: return ipow(units, n);
    }
    return 0;
}

// ---------------------------------------------------------------------------

MatrixGroup::MatrixGroup(GroupScheme scheme, QuotientRing ring) : scheme_(scheme), ring_(std::move(ring)) {
    if (ring_.size() <= RingTables::kMaxSize) tables_.emplace(ring_);
}

std::uint32_t MatrixGroup::radd(std::uint32_t a, std::uint32_t b) const {
    if (tables_) return tables_->add(a, b);
    return static_cast<std::uint32_t>(ring_.add(RingElement{a}, RingElement{b}).code);
}

std::uint32_t MatrixGroup::rmul(std::uint32_t a, std::uint32_t b) const {
    if (tables_) return tables_->mul(a, b);
    return static_cast<std::uint32_t>(ring_.mul(RingElement{a}, RingElement{b}).code);
}

void MatrixGroup::multiply(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    const int n = scheme_.n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::uint32_t acc = 0;
            for (int k = 0; k < n; ++k) acc = radd(acc, rmul(a[i * n + k], b[k * n + j]));
            out[i * n + j] = acc;
        }
}

std::uint64_t MatrixGroup::encode(std::span<const std::uint32_t> entries) const {
    std::uint64_t code = 0;
    for (std::uint32_t e : entries) code = code * ring_.size() + e;
    return code;
}

std::optional<Ordinal> MatrixGroup::find_code(std::uint64_t code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) return std::nullopt;
    return static_cast<Ordinal>(it - codes_.begin());
}

Ordinal MatrixGroup::mul(Ordinal a, Ordinal b) const {
    const std::size_t nn = static_cast<std::size_t>(scheme_.n) * scheme_.n;
    std::uint32_t buf[64];
    multiply(&entries_[a * nn], &entries_[b * nn], buf);
    auto found = find_code(encode(std::span<const std::uint32_t>(buf, nn)));
    if (!found) throw InternalError("matrix group " + scheme_.label() + " not closed under multiplication");
    return *found;
}

std::vector<RingElement> MatrixGroup::matrix(Ordinal a) const {
    const std::size_t nn = static_cast<std::size_t>(scheme_.n) * scheme_.n;
    std::vector<RingElement> out(nn);
    for (std::size_t k = 0; k < nn; ++k) out[k] = RingElement{entries_[a * nn + k]};
    return out;
}

std::optional<Ordinal> MatrixGroup::find(std::span<const RingElement> entries) const {
    const std::size_t nn = static_cast<std::size_t>(scheme_.n) * scheme_.n;
    if (entries.size() != nn) return std::nullopt;
    std::vector<std::uint32_t> raw(nn);
    for (std::size_t k = 0; k < nn; ++k) {
        if (entries[k].code >= ring_.size()) return std::nullopt;
        raw[k] = static_cast<std::uint32_t>(entries[k].code);
    }
    return find_code(encode(raw));
}

namespace {

std::vector<std::vector<int>> permutations_with_sign(int n, std::vector<int>& signs) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
        out.push_back(perm);
        signs.push_back(inversions % 2 ? -1 : 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

// Advances a mixed odometer over `slots` positions each ranging over `choices`.
bool advance(std::vector<std::size_t>& idx, std::size_t choices) {
    for (auto& i : idx) {
        if (++i < choices) return true;
        i = 0;
    }
    return false;
}

}  // namespace

void MatrixGroup::enumerate(std::uint64_t budget) {
    const int n = scheme_.n;
    const std::size_t nn = static_cast<std::size_t>(n) * n;
    const Integer predicted = predicted_order(scheme_, ring_.spec());
    if (predicted > budget)
        throw ConfigError(scheme_.label() + "(" + ring_.spec().label() + ") has predicted order " + predicted.str() +
                          ", above the enumeration budget " + std::to_string(budget));
    {
        long double bits = nn * std::log2(static_cast<long double>(ring_.size()));
        if (bits > 63) throw ConfigError("matrix codes for " + scheme_.label() + " over " + ring_.spec().label() + " exceed 64 bits");
    }

    const auto one = static_cast<std::uint32_t>(ring_.one().code);
    std::vector<std::uint32_t> units, ideal, all;
    for (std::uint64_t c = 0; c < ring_.size(); ++c) {
        all.push_back(static_cast<std::uint32_t>(c));
        if (ring_.is_unit(RingElement{c}))
            units.push_back(static_cast<std::uint32_t>(c));
        else
            ideal.push_back(static_cast<std::uint32_t>(c));
    }

    std::vector<int> signs;
    const auto perms = permutations_with_sign(n, signs);
    auto det = [&](const std::uint32_t* m) {
        std::uint32_t acc = 0;
        for (std::size_t p = 0; p < perms.size(); ++p) {
            std::uint32_t term = one;
            for (int i = 0; i < n; ++i) term = rmul(term, m[i * n + perms[p][static_cast<std::size_t>(i)]]);
            if (signs[p] < 0) term = static_cast<std::uint32_t>(ring_.neg(RingElement{term}).code);
            acc = radd(acc, term);
        }
        return acc;
    };

    std::vector<std::uint32_t> found;  // flat entries
    auto emit = [&](const std::vector<std::uint32_t>& m) { found.insert(found.end(), m.begin(), m.end()); };

    // Positions above the diagonal, on the diagonal.
    std::vector<std::size_t> upper_pos, diag_pos;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) diag_pos.push_back(static_cast<std::size_t>(i * n + j));
            if (i < j) upper_pos.push_back(static_cast<std::size_t>(i * n + j));
        }

    switch (scheme_.family) {
        case SchemeFamily::GL:
        case SchemeFamily::SL: {
            const bool special = scheme_.family == SchemeFamily::SL;
            // Residue-field matrices through their digit-0 lifts, then kernel fibers.
            std::vector<std::uint32_t> lifts;
            {
                const auto f = static_cast<std::size_t>(ring_.spec().f);
                const auto p = ring_.spec().p;
                std::vector<std::int64_t> coords(f, 0);
                for (std::uint64_t k = 0; k < ring_.residue_size(); ++k) {
                    std::uint64_t c = k;
                    for (std::size_t t = 0; t < f; ++t, c /= static_cast<std::uint64_t>(p))
                        coords[t] = static_cast<std::int64_t>(c % static_cast<std::uint64_t>(p));
                    lifts.push_back(static_cast<std::uint32_t>(ring_.lift_residue(coords).code));
                }
            }
            std::vector<std::size_t> ri(nn, 0);
            std::vector<std::uint32_t> base(nn), m(nn);
            do {
                for (std::size_t k = 0; k < nn; ++k) base[k] = lifts[ri[k]];
                if (!ring_.is_unit(RingElement{det(base.data())})) continue;
                std::vector<std::size_t> ki(nn, 0);
                do {
                    for (std::size_t k = 0; k < nn; ++k) m[k] = radd(base[k], ideal[ki[k]]);
                    if (special && det(m.data()) != one) continue;
                    emit(m);
                } while (advance(ki, ideal.size()));
            } while (advance(ri, lifts.size()));
            break;
        }
        case SchemeFamily::Unitriangular:
        case SchemeFamily::Borel: {
            const bool borel = scheme_.family == SchemeFamily::Borel;
            std::vector<std::uint32_t> m(nn, 0);
            std::vector<std::size_t> di(diag_pos.size(), 0);
            do {
                for (std::size_t k = 0; k < diag_pos.size(); ++k) m[diag_pos[k]] = borel ? units[di[k]] : one;
                std::vector<std::size_t> ui(upper_pos.size(), 0);
                do {
                    for (std::size_t k = 0; k < upper_pos.size(); ++k) m[upper_pos[k]] = all[ui[k]];
                    emit(m);
                } while (!upper_pos.empty() && advance(ui, all.size()));
            } while (borel && advance(di, units.size()));
            break;
        }
        case SchemeFamily::Torus: {
            std::vector<std::uint32_t> m(nn, 0);
            std::vector<std::size_t> di(diag_pos.size(), 0);
            do {
                for (std::size_t k = 0; k < diag_pos.size(); ++k) m[diag_pos[k]] = units[di[k]];
                emit(m);
            } while (advance(di, units.size()));
            break;
        }
    }

    const std::size_t count = found.size() / nn;
    if (Integer(count) != predicted)
        throw InternalError("enumerated " + std::to_string(count) + " elements of " + scheme_.label() + "(" +
                            ring_.spec().label() + "), expected " + predicted.str());

    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(count);
    for (std::size_t e = 0; e < count; ++e)
        keyed[e] = {encode(std::span<const std::uint32_t>(&found[e * nn], nn)), e};
    std::sort(keyed.begin(), keyed.end());
    codes_.resize(count);
    entries_.resize(found.size());
    for (std::size_t e = 0; e < count; ++e) {
        codes_[e] = keyed[e].first;
        std::copy_n(&found[keyed[e].second * nn], nn, &entries_[e * nn]);
    }

    std::vector<std::uint32_t> id(nn, 0);
    for (std::size_t k : diag_pos) id[k] = one;
    auto id_ord = find_code(encode(id));
    if (!id_ord) throw InternalError("identity missing from " + scheme_.label());
    identity_ = *id_ord;

    // Inverses by Gauss-Jordan over the local ring: every column of an
    // invertible matrix has a unit entry at or below the diagonal.
    auto rinv = [&](std::uint32_t a) {
        if (tables_) return tables_->inverse(a);
        return static_cast<std::uint32_t>(ring_.inverse(RingElement{a}).code);
    };
    auto rneg = [&](std::uint32_t a) {
        if (tables_) return tables_->neg(a);
        return static_cast<std::uint32_t>(ring_.neg(RingElement{a}).code);
    };
    inverse_.resize(count);
    std::vector<std::uint32_t> a(nn), b(nn);
    for (std::size_t e = 0; e < count; ++e) {
        std::copy_n(&entries_[e * nn], nn, a.begin());
        b = id;
        for (int c = 0; c < n; ++c) {
            int pivot = c;
            while (pivot < n && !ring_.is_unit(RingElement{a[static_cast<std::size_t>(pivot * n + c)]})) ++pivot;
            if (pivot == n) throw InternalError("non-invertible matrix in " + scheme_.label());
            if (pivot != c)
                for (int j = 0; j < n; ++j) {
                    std::swap(a[static_cast<std::size_t>(pivot * n + j)], a[static_cast<std::size_t>(c * n + j)]);
                    std::swap(b[static_cast<std::size_t>(pivot * n + j)], b[static_cast<std::size_t>(c * n + j)]);
                }
            std::uint32_t s = rinv(a[static_cast<std::size_t>(c * n + c)]);
            for (int j = 0; j < n; ++j) {
                a[static_cast<std::size_t>(c * n + j)] = rmul(s, a[static_cast<std::size_t>(c * n + j)]);
                b[static_cast<std::size_t>(c * n + j)] = rmul(s, b[static_cast<std::size_t>(c * n + j)]);
            }
            for (int i = 0; i < n; ++i) {
                if (i == c) continue;
                std::uint32_t factor = rneg(a[static_cast<std::size_t>(i * n + c)]);
                if (factor == 0) continue;
                for (int j = 0; j < n; ++j) {
                    a[static_cast<std::size_t>(i * n + j)] =
                        radd(a[static_cast<std::size_t>(i * n + j)], rmul(factor, a[static_cast<std::size_t>(c * n + j)]));
                    b[static_cast<std::size_t>(i * n + j)] =
                        radd(b[static_cast<std::size_t>(i * n + j)], rmul(factor, b[static_cast<std::size_t>(c * n + j)]));
                }
            }
        }
        auto inv_ord = find_code(encode(b));
        if (!inv_ord) throw InternalError("inverse escapes " + scheme_.label());
        inverse_[e] = *inv_ord;
    }
}

std::shared_ptr<const MatrixGroup> MatrixGroup::build(const GroupScheme& scheme, const RingSpec& ring,
                                                      std::uint64_t budget) {
    if (scheme.n < 1) throw ConfigError("matrix size must be >= 1");
    std::shared_ptr<MatrixGroup> g(new MatrixGroup(scheme, QuotientRing(ring)));
    g->enumerate(budget);
    return g;
}

std::shared_ptr<const MatrixGroup> build_group(const GroupScheme& scheme, const RingSpec& ring, std::uint64_t budget) {
    return MatrixGroup::build(scheme, ring, budget);
}

// ---------------------------------------------------------------------------

std::vector<Ordinal> congruence_kernel(const MatrixGroup& g, int i) {
    const QuotientRing& ring = g.ring();
    if (i < 1 || i > ring.level())
        throw ConfigError("congruence kernel level " + std::to_string(i) + " outside 1.." + std::to_string(ring.level()));
    QuotientRing lower(ring.spec().at_level(i));
    std::vector<std::uint64_t> reduced(ring.size());
    for (std::uint64_t c = 0; c < ring.size(); ++c) reduced[c] = ring.reduce(RingElement{c}, lower).code;
    const std::uint64_t one = lower.one().code;
    const int n = g.n();
    std::vector<Ordinal> out;
    for (Ordinal a = 0; a < g.order(); ++a) {
        auto m = g.matrix(a);
        bool trivial = true;
        for (int r = 0; r < n && trivial; ++r)
            for (int c = 0; c < n && trivial; ++c)
                trivial = reduced[m[static_cast<std::size_t>(r * n + c)].code] == (r == c ? one : 0);
        if (trivial) out.push_back(a);
    }
    return out;
}

std::vector<Ordinal> last_column_subgroup(const MatrixGroup& g) {
    const int n = g.n();
    const std::uint64_t one = g.ring().one().code;
    std::vector<Ordinal> out;
    for (Ordinal a = 0; a < g.order(); ++a) {
        auto m = g.matrix(a);
        bool shape = true;
        for (int r = 0; r < n && shape; ++r)
            for (int c = 0; c < n && shape; ++c) {
                if (c == n - 1 && r < n - 1) continue;
                shape = m[static_cast<std::size_t>(r * n + c)].code == (r == c ? one : 0);
            }
        if (shape) out.push_back(a);
    }
    return out;
}

nlohmann::json fingerprint(const MatrixGroup& g, const ConjugacyClassData& classes) {
    std::vector<std::size_t> sizes = classes.sizes;
    std::sort(sizes.begin(), sizes.end());
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (std::size_t s : sizes) {
        for (int b = 0; b < 8; ++b) {
            h ^= (static_cast<std::uint64_t>(s) >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    std::ostringstream hex;
    hex << std::hex << h;
    return nlohmann::json{{"scheme", g.scheme().label()},
                          {"ring", g.ring().spec()},
                          {"order", g.order()},
                          {"classes", classes.count()},
                          {"class_sizes_hash", hex.str()}};
}

}  // namespace repzoo
