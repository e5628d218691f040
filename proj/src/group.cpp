#include "repzoo/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <string>

namespace repzoo {

namespace {

constexpr std::uint64_t kGeneratorSeed = 0x9e3779b97f4a7c15ull;

// Grows `in`/`elements` to the closure of the current elements under right
// multiplication by `gens`.
void extend_closure(const FiniteGroup& g, std::span<const Ordinal> gens, std::vector<std::uint8_t>& in,
                    std::vector<Ordinal>& elements) {
    for (std::size_t head = 0; head < elements.size(); ++head) {
        Ordinal x = elements[head];
        for (Ordinal s : gens) {
            Ordinal y = g.mul(x, s);
            if (!in[y]) {
                in[y] = 1;
                elements.push_back(y);
            }
        }
    }
}

}  // namespace

const std::vector<Ordinal>& FiniteGroup::generators() const {
    std::call_once(generators_once_, [this] {
        const std::size_t n = order();
        std::vector<Ordinal> shuffled(n);
        std::iota(shuffled.begin(), shuffled.end(), Ordinal{0});
        std::mt19937_64 rng(kGeneratorSeed);
        std::shuffle(shuffled.begin(), shuffled.end(), rng);

        std::vector<std::uint8_t> in(n, 0);
        std::vector<Ordinal> elements{identity()};
        in[identity()] = 1;
        std::vector<Ordinal> gens;
        for (Ordinal x : shuffled) {
            if (elements.size() == n) break;
            if (in[x]) continue;
            gens.push_back(x);
            // <H, x> is the closure of H under the enlarged generating set; a
            // restart from the identity keeps the BFS simple.
            std::fill(in.begin(), in.end(), 0);
            elements.assign(1, identity());
            in[identity()] = 1;
            extend_closure(*this, gens, in, elements);
        }
        generators_ = std::move(gens);
    });
    return generators_;
}

Ordinal FiniteGroup::pow(Ordinal a, std::uint64_t n) const {
    Ordinal result = identity();
    Ordinal base = a;
    while (n) {
        if (n & 1u) result = mul(result, base);
        n >>= 1;
        if (n) base = mul(base, base);
    }
    return result;
}

std::uint64_t FiniteGroup::element_order(Ordinal a) const {
    std::uint64_t k = 1;
    Ordinal x = a;
    while (x != identity()) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

bool FiniteGroup::is_abelian() const {
    const auto& gens = generators();
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = i + 1; j < gens.size(); ++j)
            if (mul(gens[i], gens[j]) != mul(gens[j], gens[i])) return false;
    return true;
}

std::vector<Ordinal> closure(const FiniteGroup& g, std::span<const Ordinal> gens) {
    std::vector<std::uint8_t> in(g.order(), 0);
    std::vector<Ordinal> elements{g.identity()};
    in[g.identity()] = 1;
    extend_closure(g, gens, in, elements);
    std::sort(elements.begin(), elements.end());
    return elements;
}

ConjugacyClassData conjugacy_classes(const FiniteGroup& g) {
    const std::size_t n = g.order();
    constexpr auto kUnset = static_cast<std::uint32_t>(-1);
    ConjugacyClassData out;
    out.class_of.assign(n, kUnset);
    const auto& gens = g.generators();
    std::vector<Ordinal> gen_inv;
    for (Ordinal s : gens) gen_inv.push_back(g.inv(s));

    for (Ordinal seed = 0; seed < n; ++seed) {
        if (out.class_of[seed] != kUnset) continue;
        auto cls = static_cast<std::uint32_t>(out.representatives.size());
        std::vector<Ordinal> orbit{seed};
        out.class_of[seed] = cls;
        for (std::size_t head = 0; head < orbit.size(); ++head) {
            Ordinal x = orbit[head];
            for (std::size_t k = 0; k < gens.size(); ++k) {
                Ordinal y = g.mul(g.mul(gens[k], x), gen_inv[k]);
                if (out.class_of[y] == kUnset) {
                    out.class_of[y] = cls;
                    orbit.push_back(y);
                }
            }
        }
        std::sort(orbit.begin(), orbit.end());
        out.representatives.push_back(seed);
        out.sizes.push_back(orbit.size());
        out.members.push_back(std::move(orbit));
    }
    out.inverse_class.resize(out.count());
    for (std::size_t c = 0; c < out.count(); ++c) out.inverse_class[c] = out.class_of[g.inv(out.representatives[c])];
    return out;
}

// ---------------------------------------------------------------------------

SubgroupView::SubgroupView(std::shared_ptr<const FiniteGroup> parent, std::vector<Ordinal> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
    if (!parent_) throw ConfigError("subgroup view needs a parent group");
    if (!std::is_sorted(members_.begin(), members_.end()) ||
        std::adjacent_find(members_.begin(), members_.end()) != members_.end())
        throw ConfigError("subgroup members must be sorted and distinct");
    auto id = from_parent(parent_->identity());
    if (!id) throw ConfigError("subgroup does not contain the identity");
    identity_ = *id;
    if (parent_->order() % members_.size() != 0) throw ConfigError("subgroup order does not divide the group order");
    // Building the generating set multiplies through every member; a product
    // leaving the set throws.
    generators();
}

std::optional<Ordinal> SubgroupView::from_parent(Ordinal p) const {
    auto it = std::lower_bound(members_.begin(), members_.end(), p);
    if (it == members_.end() || *it != p) return std::nullopt;
    return static_cast<Ordinal>(it - members_.begin());
}

Ordinal SubgroupView::local_or_throw(Ordinal p) const {
    auto local = from_parent(p);
    if (!local) throw ConfigError("element set is not closed under the group operation");
    return *local;
}

Ordinal SubgroupView::mul(Ordinal a, Ordinal b) const {
    return local_or_throw(parent_->mul(members_[a], members_[b]));
}

Ordinal SubgroupView::inv(Ordinal a) const { return local_or_throw(parent_->inv(members_[a])); }

// ---------------------------------------------------------------------------

std::optional<std::pair<Ordinal, Ordinal>> normality_witness(const FiniteGroup& g, std::span<const Ordinal> subset) {
    for (Ordinal s : g.generators()) {
        Ordinal s_inv = g.inv(s);
        for (Ordinal x : subset) {
            Ordinal y = g.mul(g.mul(s, x), s_inv);
            if (!std::binary_search(subset.begin(), subset.end(), y)) return std::make_pair(s, x);
        }
    }
    return std::nullopt;
}

QuotientGroup::QuotientGroup(std::shared_ptr<const FiniteGroup> group, std::vector<Ordinal> normal_subgroup)
    : group_(std::move(group)) {
    if (!group_) throw ConfigError("quotient needs a group");
    std::sort(normal_subgroup.begin(), normal_subgroup.end());
    normal_subgroup.erase(std::unique(normal_subgroup.begin(), normal_subgroup.end()), normal_subgroup.end());
    if (!std::binary_search(normal_subgroup.begin(), normal_subgroup.end(), group_->identity()))
        throw ConfigError("quotient: subset does not contain the identity");
    if (auto w = normality_witness(*group_, normal_subgroup))
        throw MathError("quotient: subgroup is not normal; conjugating element " + std::to_string(w->first) +
                        " moves member " + std::to_string(w->second) + " outside it");
    const std::size_t n = group_->order();
    if (n % normal_subgroup.size() != 0) throw ConfigError("quotient: subset order does not divide |G|");
    kernel_order_ = normal_subgroup.size();
    constexpr auto kUnset = static_cast<Ordinal>(-1);
    coset_.assign(n, kUnset);
    for (Ordinal g = 0; g < n; ++g) {
        if (coset_[g] != kUnset) continue;
        auto label = static_cast<Ordinal>(reps_.size());
        reps_.push_back(g);
        for (Ordinal k : normal_subgroup) {
            Ordinal y = group_->mul(g, k);
            if (coset_[y] != kUnset) throw ConfigError("quotient: subset is not a subgroup");
            coset_[y] = label;
        }
    }
    if (reps_.size() * kernel_order_ != n) throw InternalError("quotient: coset count mismatch");
}

std::shared_ptr<const QuotientGroup> quotient_group(std::shared_ptr<const FiniteGroup> g, std::vector<Ordinal> n) {
    return std::make_shared<const QuotientGroup>(std::move(g), std::move(n));
}

std::vector<Ordinal> center(const FiniteGroup& g) {
    std::vector<Ordinal> out;
    const auto& gens = g.generators();
    for (Ordinal x = 0; x < g.order(); ++x) {
        bool central = std::all_of(gens.begin(), gens.end(), [&](Ordinal s) { return g.mul(s, x) == g.mul(x, s); });
        if (central) out.push_back(x);
    }
    return out;
}

}  // namespace repzoo
