#include "repzoo/chardeg.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "modp.hpp"

namespace repzoo {

DegreeMultiset::DegreeMultiset(std::vector<std::pair<std::uint64_t, std::uint64_t>> entries) {
    std::sort(entries.begin(), entries.end());
    for (const auto& [d, m] : entries) {
        if (d == 0) throw ConfigError("degree multiset entries need positive degrees");
        if (m == 0) continue;
        if (!entries_.empty() && entries_.back().first == d)
            entries_.back().second += m;
        else
            entries_.emplace_back(d, m);
    }
}

DegreeMultiset DegreeMultiset::from_degrees(const std::vector<std::uint64_t>& degrees) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> e;
    e.reserve(degrees.size());
    for (auto d : degrees) e.emplace_back(d, 1);
    return DegreeMultiset(std::move(e));
}

std::uint64_t DegreeMultiset::count() const {
    std::uint64_t n = 0;
    for (const auto& e : entries_) n += e.second;
    return n;
}

Integer DegreeMultiset::sum_of_squares() const {
    Integer s = 0;
    for (const auto& [d, m] : entries_) s += Integer(m) * d * d;
    return s;
}

std::uint64_t DegreeMultiset::multiplicity(std::uint64_t degree) const {
    for (const auto& [d, m] : entries_)
        if (d == degree) return m;
    return 0;
}

std::vector<std::uint64_t> DegreeMultiset::degrees() const {
    std::vector<std::uint64_t> out;
    for (const auto& e : entries_) out.push_back(e.first);
    return out;
}

void DegreeMultiset::check(std::uint64_t order, std::uint64_t class_count) const {
    if (sum_of_squares() != order)
        throw MathError("sum of squared degrees " + sum_of_squares().str() + " differs from |G| = " + std::to_string(order) +
                        " for " + to_string());
    if (count() != class_count)
        throw MathError("number of irreducibles " + std::to_string(count()) + " differs from class count " +
                        std::to_string(class_count));
    for (const auto& e : entries_)
        if (order % e.first != 0)
            throw MathError("degree " + std::to_string(e.first) + " does not divide |G| = " + std::to_string(order));
}

void DegreeMultiset::merge(const DegreeMultiset& other) {
    auto all = entries_;
    all.insert(all.end(), other.entries_.begin(), other.entries_.end());
    *this = DegreeMultiset(std::move(all));
}

DegreeMultiset DegreeMultiset::scaled(std::uint64_t factor) const {
    auto e = entries_;
    for (auto& x : e) x.first *= factor;
    return DegreeMultiset(std::move(e));
}

std::string DegreeMultiset::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < entries_.size(); ++i)
        os << (i ? "," : "") << "(" << entries_[i].first << "," << entries_[i].second << ")";
    os << "]";
    return os.str();
}

void to_json(nlohmann::json& j, const DegreeMultiset& d) {
    j = nlohmann::json::array();
    for (const auto& [deg, m] : d.entries()) j.push_back({deg, m});
}

void from_json(const nlohmann::json& j, DegreeMultiset& d) {
    if (!j.is_array()) throw ConfigError("degree multiset JSON must be an array");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> e;
    for (const auto& row : j) {
        if (!row.is_array() || row.size() != 2) throw ConfigError("degree multiset rows must be [degree, multiplicity]");
        e.emplace_back(row[0].get<std::uint64_t>(), row[1].get<std::uint64_t>());
    }
    d = DegreeMultiset(std::move(e));
}

// ---------------------------------------------------------------------------

std::uint64_t CharacterTableModP::root_of_unity(std::uint64_t m) const {
    if (m == 0 || (ell - 1) % m != 0) throw InternalError("no primitive root of unity of order " + std::to_string(m) + " mod " + std::to_string(ell));
    modp::Field f(ell);
    return f.pow(primitive_root, (ell - 1) / m);
}

std::uint64_t group_exponent(const FiniteGroup& g, const ConjugacyClassData& classes) {
    std::uint64_t e = 1;
    for (Ordinal rep : classes.representatives) e = std::lcm(e, g.element_order(rep));
    return e;
}

std::uint64_t choose_modulus(std::uint64_t order, std::uint64_t exponent) {
    std::uint64_t bound = 0;  // floor(sqrt(4 |G|))
    while ((bound + 1) * (bound + 1) <= 4 * order) ++bound;
    return modp::prime_congruent_one(exponent, bound, (1ull << 31) - 1);
}

namespace {

using modp::Field;
using modp::Matrix;
using modp::Vector;

class ClassMatrices {
   public:
    ClassMatrices(const FiniteGroup& g, const ConjugacyClassData& c, const Field& f)
        : g_(g), c_(c), f_(f), cache_(c.count()) {}

    // (M_j)[k][i] = #{x in C_j : x^-1 z_i in C_k}
    const Matrix& get(std::size_t j) {
        if (cache_[j].empty()) {
            const std::size_t k = c_.count();
            Matrix m(k, Vector(k, 0));
            for (Ordinal x : c_.members[j]) {
                Ordinal xi = g_.inv(x);
                for (std::size_t i = 0; i < k; ++i) ++m[c_.class_of[g_.mul(xi, c_.representatives[i])]][i];
            }
            for (auto& row : m)
                for (auto& v : row) v = f_.reduce(v);
            cache_[j] = std::move(m);
        }
        return cache_[j];
    }

   private:
    const FiniteGroup& g_;
    const ConjugacyClassData& c_;
    const Field& f_;
    std::vector<Matrix> cache_;
};

// Splits the invariant subspace `w` (RREF rows) into eigenspaces of `m`.
std::vector<Matrix> split(const Field& f, const Matrix& m, const Matrix& w, const std::vector<std::size_t>& pivots) {
    const std::size_t d = w.size();
    const std::size_t k = m.size();
    Matrix r(d, Vector(d, 0));
    for (std::size_t s = 0; s < d; ++s) {
        for (std::size_t t = 0; t < d; ++t) {
            const Vector& row = m[pivots[t]];
            std::uint64_t acc = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (w[s][i]) acc = f.add(acc, f.mul(row[i], w[s][i]));
            r[t][s] = acc;
        }
    }
    bool scalar = true;
    for (std::size_t a = 0; a < d && scalar; ++a)
        for (std::size_t b = 0; b < d && scalar; ++b) scalar = r[a][b] == (a == b ? r[0][0] : 0);
    if (scalar) return {w};

    auto eig = modp::roots(f, modp::charpoly(f, r));
    int total = 0;
    for (const auto& e : eig) total += e.second;
    if (static_cast<std::size_t>(total) != d) throw InternalError("class matrix characteristic polynomial does not split mod l");

    std::vector<Matrix> out;
    std::size_t found = 0;
    for (const auto& [lambda, mult] : eig) {
        Matrix shifted = r;
        for (std::size_t a = 0; a < d; ++a) shifted[a][a] = f.sub(shifted[a][a], lambda);
        Matrix null = modp::nullspace(f, shifted);
        if (null.size() != static_cast<std::size_t>(mult)) throw InternalError("class matrix is not diagonalizable mod l");
        Matrix space;
        for (const auto& y : null) {
            Vector v(k, 0);
            for (std::size_t s = 0; s < d; ++s)
                if (y[s])
                    for (std::size_t i = 0; i < k; ++i) v[i] = f.add(v[i], f.mul(y[s], w[s][i]));
            space.push_back(std::move(v));
        }
        modp::rref(f, space);
        found += space.size();
        out.push_back(std::move(space));
    }
    if (found != d) throw InternalError("eigenspaces do not exhaust the invariant subspace");
    return out;
}

}  // namespace

CharacterTableModP character_table_mod_p(const FiniteGroup& g, const ConjugacyClassData& classes) {
    const std::size_t k = classes.count();
    const std::uint64_t order = g.order();
    CharacterTableModP table;
    table.exponent = group_exponent(g, classes);
    table.ell = choose_modulus(order, table.exponent);
    Field f(table.ell);
    table.primitive_root = f.primitive_root();
    table.identity_class = classes.class_of[g.identity()];

    Matrix start(k, Vector(k, 0));
    for (std::size_t i = 0; i < k; ++i) start[i][i] = 1;
    std::vector<Matrix> spaces{start};
    ClassMatrices cm(g, classes, f);
    for (std::size_t j = 0; j < k; ++j) {
        if (std::all_of(spaces.begin(), spaces.end(), [](const Matrix& s) { return s.size() == 1; })) break;
        if (j == table.identity_class) continue;
        std::vector<Matrix> next;
        for (auto& w : spaces) {
            if (w.size() == 1) {
                next.push_back(std::move(w));
                continue;
            }
            Matrix copy = w;
            auto pivots = modp::rref(f, copy);
            for (auto& piece : split(f, cm.get(j), copy, pivots)) next.push_back(std::move(piece));
        }
        spaces = std::move(next);
    }
    if (spaces.size() != k) throw InternalError("common eigenspaces of the class matrices are not one-dimensional");

    std::vector<std::uint64_t> inv_size(k);
    for (std::size_t i = 0; i < k; ++i) inv_size[i] = f.inv(f.reduce(classes.sizes[i]));

    std::vector<std::pair<std::uint64_t, Vector>> rows;
    for (const auto& s : spaces) {
        Vector v = s[0];
        std::uint64_t at_id = v[table.identity_class];
        if (at_id == 0) throw InternalError("central character vanishes at the identity class");
        std::uint64_t scale = f.inv(at_id);
        for (auto& x : v) x = f.mul(x, scale);
        std::uint64_t norm = 0;
        for (std::size_t i = 0; i < k; ++i)
            norm = f.add(norm, f.mul(f.mul(v[i], v[classes.inverse_class[i]]), inv_size[i]));
        if (norm == 0) throw InternalError("degenerate norm for a central character");
        std::uint64_t target = f.mul(f.reduce(order % table.ell), f.inv(norm));
        std::uint64_t degree = 0;
        for (std::uint64_t d = 1; d * d <= order; ++d)
            if (order % d == 0 && f.reduce(d * d) == target) {
                degree = d;
                break;
            }
        if (degree == 0) throw InternalError("character degree failed to lift from F_" + std::to_string(table.ell));
        Vector values(k);
        for (std::size_t i = 0; i < k; ++i) values[i] = f.mul(f.mul(v[i], degree % table.ell), inv_size[i]);
        rows.emplace_back(degree, std::move(values));
    }
    std::sort(rows.begin(), rows.end());
    for (auto& [d, vals] : rows) {
        table.degrees.push_back(d);
        table.values.push_back(std::move(vals));
    }
    return table;
}

DegreeMultiset character_degrees(const FiniteGroup& g, const ConjugacyClassData& classes) {
    auto table = character_table_mod_p(g, classes);
    auto result = DegreeMultiset::from_degrees(table.degrees);
    result.check(g.order(), classes.count());
    return result;
}

DegreeMultiset character_degrees(const FiniteGroup& g) { return character_degrees(g, conjugacy_classes(g)); }

DegreeMultiset abelian_degrees(const FiniteGroup& g) {
    if (!g.is_abelian()) throw ConfigError("abelian_degrees called on a non-abelian group");
    return DegreeMultiset({{1, g.order()}});
}

}  // namespace repzoo
