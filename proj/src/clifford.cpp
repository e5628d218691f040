#include "repzoo/clifford.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "modp.hpp"

namespace repzoo {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_power_of(std::uint64_t n, std::uint64_t p) {
    while (n % p == 0) n /= p;
    return n == 1;
}

// x with m x = c mod d, if any.
std::optional<std::uint64_t> solve_linear(std::uint64_t m, std::uint64_t c, std::uint64_t d) {
    std::uint64_t g = std::gcd(m % d, d);
    if (g == 0) g = d;
    if (c % g) return std::nullopt;
    std::uint64_t dd = d / g, mm = (m / g) % dd, cc = c / g;
    if (dd == 1) return 0;
    // Inverse of mm modulo dd by extended Euclid.
    std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(dd), r1 = static_cast<std::int64_t>(mm);
    while (r1) {
        std::int64_t qt = r0 / r1;
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
    }
    auto inv = static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(dd) + static_cast<std::int64_t>(dd)) % static_cast<std::int64_t>(dd));
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(cc % dd) * inv) % dd);
}

}  // namespace

DualGroup::DualGroup(std::shared_ptr<const FiniteGroup> ambient, std::vector<Ordinal> members)
    : ambient_(std::move(ambient)), members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    auto view = std::make_shared<SubgroupView>(ambient_, members_);
    if (!view->is_abelian()) throw ConfigError("dual group: N is not abelian");
    const FiniteGroup& g = *ambient_;
    const std::size_t n = members_.size();

    // Greedy basis inside each Sylow subgroup. `coord` maps a member to its
    // coordinates in the part of the basis built so far for that Sylow.
    for (std::uint64_t p : prime_factors(n)) {
        std::vector<Ordinal> sylow;
        for (Ordinal x : members_)
            if (is_power_of(g.element_order(x), p)) sylow.push_back(x);
        std::vector<Ordinal> local_basis;
        std::vector<std::uint64_t> local_orders;
        std::map<Ordinal, std::vector<std::uint64_t>> span{{g.identity(), {}}};
        while (span.size() < sylow.size()) {
            Ordinal best = g.identity();
            std::uint64_t best_m = 0;
            for (Ordinal x : sylow) {
                if (span.count(x)) continue;
                std::uint64_t m = 1;
                Ordinal y = x;
                while (!span.count(y)) {
                    y = g.mul(y, x);
                    ++m;
                }
                if (m > best_m) {
                    best_m = m;
                    best = x;
                }
            }
            Ordinal power = g.pow(best, best_m);
            const auto& c = span.at(power);
            Ordinal adjusted = best;
            for (std::size_t i = 0; i < local_basis.size(); ++i) {
                auto y = solve_linear(best_m, c[i], local_orders[i]);
                if (!y) throw InternalError("dual group: abelian basis adjustment failed");
                adjusted = g.mul(adjusted, g.pow(g.inv(local_basis[i]), *y));
            }
            if (g.pow(adjusted, best_m) != g.identity()) throw InternalError("dual group: adjusted element has wrong order");
            std::map<Ordinal, std::vector<std::uint64_t>> grown;
            for (const auto& [h, coords] : span) {
                Ordinal y = h;
                for (std::uint64_t j = 0; j < best_m; ++j) {
                    auto cj = coords;
                    cj.push_back(j);
                    grown.emplace(y, std::move(cj));
                    y = g.mul(y, adjusted);
                }
            }
            local_basis.push_back(adjusted);
            local_orders.push_back(best_m);
            span = std::move(grown);
        }
        basis_.insert(basis_.end(), local_basis.begin(), local_basis.end());
        orders_.insert(orders_.end(), local_orders.begin(), local_orders.end());
    }

    // Full coordinate table over the combined basis.
    coords_.assign(n, {});
    std::vector<std::uint64_t> x(basis_.size(), 0);
    std::size_t filled = 0;
    while (true) {
        Ordinal e = g.identity();
        for (std::size_t i = 0; i < basis_.size(); ++i) e = g.mul(e, g.pow(basis_[i], x[i]));
        auto idx = index_of(e);
        if (!idx || !coords_[*idx].empty() || basis_.empty()) {
            if (basis_.empty() && idx) {
                ++filled;
                break;
            }
            throw InternalError("dual group: basis does not decompose N");
        }
        coords_[*idx] = x;
        ++filled;
        std::size_t i = 0;
        for (; i < x.size(); ++i) {
            if (++x[i] < orders_[i]) break;
            x[i] = 0;
        }
        if (i == x.size()) break;
    }
    if (filled != n) throw InternalError("dual group: basis does not span N");
    for (auto d : orders_) exponent_ = std::lcm(exponent_, d);
}

std::optional<std::size_t> DualGroup::index_of(Ordinal n) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), n);
    if (it == members_.end() || *it != n) return std::nullopt;
    return static_cast<std::size_t>(it - members_.begin());
}

const std::vector<std::uint64_t>& DualGroup::coordinates(Ordinal n) const {
    auto idx = index_of(n);
    if (!idx) throw ConfigError("element " + std::to_string(n) + " is not in N");
    return coords_[*idx];
}

std::uint64_t DualGroup::code(const DualCharacter& psi) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) c = c * orders_[i] + psi.exponents[i];
    return c;
}

DualCharacter DualGroup::character(std::uint64_t code) const {
    DualCharacter psi{std::vector<std::uint64_t>(orders_.size(), 0)};
    for (std::size_t i = orders_.size(); i-- > 0;) {
        psi.exponents[i] = code % orders_[i];
        code /= orders_[i];
    }
    return psi;
}

std::vector<DualCharacter> DualGroup::all() const {
    std::vector<DualCharacter> out;
    out.reserve(size());
    for (std::uint64_t c = 0; c < size(); ++c) out.push_back(character(c));
    return out;
}

std::uint64_t DualGroup::value_exponent(const DualCharacter& psi, Ordinal n) const {
    const auto& x = coordinates(n);
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) k = (k + psi.exponents[i] * x[i] % orders_[i] * (exponent_ / orders_[i])) % exponent_;
    return k;
}

DualCharacter DualGroup::product(const DualCharacter& a, const DualCharacter& b) const {
    DualCharacter out{a.exponents};
    for (std::size_t i = 0; i < orders_.size(); ++i) out.exponents[i] = (a.exponents[i] + b.exponents[i]) % orders_[i];
    return out;
}

std::uint64_t DualGroup::character_order(const DualCharacter& psi) const {
    std::uint64_t o = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) o = std::lcm(o, orders_[i] / std::gcd(orders_[i], psi.exponents[i]));
    return o;
}

DualCharacter DualGroup::act(Ordinal g, const DualCharacter& psi) const {
    const FiniteGroup& a = *ambient_;
    Ordinal g_inv = a.inv(g);
    DualCharacter out{std::vector<std::uint64_t>(orders_.size(), 0)};
    for (std::size_t j = 0; j < basis_.size(); ++j) {
        std::uint64_t k = value_exponent(psi, a.mul(a.mul(g_inv, basis_[j]), g));
        std::uint64_t step = exponent_ / orders_[j];
        if (k % step) throw InternalError("dual group: conjugated character is not well defined");
        out.exponents[j] = k / step;
    }
    return out;
}

std::vector<DualCharacter> dual_group(const DualGroup& dual) { return dual.all(); }

// ---------------------------------------------------------------------------

namespace {

struct AboveData {
    DegreeMultiset above;
    std::size_t quotient_irr_count = 0;
};

std::vector<Ordinal> stabilizer_of(const FiniteGroup& g, const DualGroup& dual, const DualCharacter& psi) {
    std::vector<Ordinal> out;
    for (Ordinal x = 0; x < g.order(); ++x)
        if (dual.act(x, psi) == psi) out.push_back(x);
    return out;
}

// Irr(Stab | psi), computed on Stab / ker(psi): ker(psi) lies in the kernel of
// every character above psi.
AboveData above_psi(std::shared_ptr<const FiniteGroup> g, const DualGroup& dual, const DualCharacter& psi,
                    const std::vector<Ordinal>& stab) {
    auto s = std::make_shared<SubgroupView>(g, stab);
    std::vector<Ordinal> ker_local, n_local;
    for (Ordinal n : dual.members()) {
        auto local = s->from_parent(n);
        if (!local) throw InternalError("stabilizer does not contain N");
        n_local.push_back(*local);
        if (dual.value_exponent(psi, n) == 0) ker_local.push_back(*local);
    }
    AboveData out;
    {
        QuotientGroup top(s, n_local);
        out.quotient_irr_count = conjugacy_classes(top).count();
    }
    auto q = std::make_shared<QuotientGroup>(s, ker_local);
    auto classes = conjugacy_classes(*q);
    auto table = character_table_mod_p(*q, classes);
    modp::Field f(table.ell);

    const std::uint64_t order = dual.character_order(psi);
    const std::uint64_t step = dual.exponent() / order;
    const std::uint64_t z = table.root_of_unity(order);
    // One element of N per coset of ker(psi); psi is constant on each.
    std::vector<std::pair<std::uint32_t, std::uint64_t>> cosets;  // (class in Q, psi exponent)
    std::vector<char> seen(q->order(), 0);
    for (std::size_t i = 0; i < n_local.size(); ++i) {
        Ordinal c = q->coset_of(n_local[i]);
        if (seen[c]) continue;
        seen[c] = 1;
        cosets.emplace_back(classes.class_of[c], dual.value_exponent(psi, dual.members()[i]) / step);
    }
    if (cosets.size() != order) throw InternalError("N / ker(psi) has the wrong order");
    const std::uint64_t inv_count = f.inv(cosets.size() % table.ell);

    std::vector<std::uint64_t> degrees;
    std::uint64_t induced_dim = 0;
    for (std::size_t chi = 0; chi < table.size(); ++chi) {
        std::uint64_t acc = 0;
        for (const auto& [cls, k] : cosets)
            acc = f.add(acc, f.mul(table.values[chi][cls], f.pow(z, (order - k % order) % order)));
        std::uint64_t mult = f.mul(acc, inv_count);
        if (mult > table.degrees[chi]) throw InternalError("restriction multiplicity failed to lift");
        if (mult == 0) continue;
        degrees.push_back(table.degrees[chi]);
        induced_dim += mult * table.degrees[chi];
    }
    // Ind_N^Stab psi has dimension [Stab : N].
    if (induced_dim != stab.size() / dual.size())
        throw MathError("Frobenius reciprocity check failed above a character of N");
    out.above = DegreeMultiset::from_degrees(degrees);
    return out;
}

}  // namespace

std::vector<OrbitRecord> orbits_and_stabilizers(std::shared_ptr<const FiniteGroup> g, const DualGroup& dual) {
    if (auto w = normality_witness(*g, dual.members()))
        throw MathError("N is not normal: conjugating by " + std::to_string(w->first) + " moves " + std::to_string(w->second));
    const auto& gens = g->generators();
    std::vector<char> visited(dual.size(), 0);
    std::vector<OrbitRecord> out;
    for (std::uint64_t c = 0; c < dual.size(); ++c) {
        if (visited[c]) continue;
        std::vector<std::uint64_t> orbit{c};
        visited[c] = 1;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            DualCharacter psi = dual.character(orbit[head]);
            for (Ordinal s : gens) {
                std::uint64_t d = dual.code(dual.act(s, psi));
                if (!visited[d]) {
                    visited[d] = 1;
                    orbit.push_back(d);
                }
            }
        }
        OrbitRecord rec;
        rec.representative = dual.character(c);
        rec.orbit_size = orbit.size();
        rec.stabilizer = stabilizer_of(*g, dual, rec.representative);
        rec.isotypic = rec.orbit_size == 1;
        if (rec.orbit_size * rec.stabilizer.size() != g->order())
            throw MathError("orbit-stabilizer identity fails for a character orbit");
        out.push_back(std::move(rec));
    }
    return out;
}

DegreeMultiset irr_above(std::shared_ptr<const FiniteGroup> g, const DualGroup& dual, const DualCharacter& psi) {
    auto stab = stabilizer_of(*g, dual, psi);
    return above_psi(g, dual, psi, stab).above.scaled(g->order() / stab.size());
}

CliffordReport clifford_dimirr(std::shared_ptr<const FiniteGroup> g, std::vector<Ordinal> normal_subgroup) {
    std::sort(normal_subgroup.begin(), normal_subgroup.end());
    normal_subgroup.erase(std::unique(normal_subgroup.begin(), normal_subgroup.end()), normal_subgroup.end());
    CliffordReport report;
    report.group_order = g->order();
    report.normal_order = normal_subgroup.size();
    auto classes = conjugacy_classes(*g);

    if (normal_subgroup.size() <= 1) {
        OrbitRecord rec;
        rec.orbit_size = 1;
        rec.stabilizer.resize(g->order());
        std::iota(rec.stabilizer.begin(), rec.stabilizer.end(), Ordinal{0});
        rec.above = character_degrees(*g, classes);
        rec.quotient_irr_count = classes.count();
        rec.isotypic = true;
        report.degrees = rec.above;
        report.isotypic_count = rec.above.count();
        report.orbits.push_back(std::move(rec));
        return report;
    }

    DualGroup dual(g, normal_subgroup);
    report.orbits = orbits_and_stabilizers(g, dual);
    for (auto& rec : report.orbits) {
        auto data = above_psi(g, dual, rec.representative, rec.stabilizer);
        rec.above = std::move(data.above);
        rec.quotient_irr_count = data.quotient_irr_count;
        report.degrees.merge(rec.above.scaled(rec.orbit_size));
        if (rec.isotypic) report.isotypic_count += rec.above.count();
    }
    report.degrees.check(g->order(), classes.count());
    return report;
}

std::vector<Ordinal> default_normal_subgroup(const MatrixGroup& g) {
    const int r = g.ring().level();
    if (r >= 2) return congruence_kernel(g, (r + 1) / 2);
    auto family = g.scheme().family;
    if (family == SchemeFamily::Unitriangular || family == SchemeFamily::Borel) return last_column_subgroup(g);
    return {g.identity()};
}

void to_json(nlohmann::json& j, const CliffordReport& r) {
    nlohmann::json orbits = nlohmann::json::array();
    for (const auto& o : r.orbits)
        orbits.push_back({{"representative", o.representative.exponents},
                          {"orbit_size", o.orbit_size},
                          {"stabilizer_order", o.stabilizer.size()},
                          {"above", o.above},
                          {"quotient_irr_count", o.quotient_irr_count},
                          {"extension_count_matches", o.extension_count_matches()},
                          {"isotypic", o.isotypic}});
    j = nlohmann::json{{"group_order", r.group_order},
                       {"normal_order", r.normal_order},
                       {"orbits", std::move(orbits)},
                       {"degrees", r.degrees},
                       {"isotypic_count", r.isotypic_count}};
}

}  // namespace repzoo
