#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "repzoo/chardeg.hpp"
#include "repzoo/exactpoly.hpp"

namespace repzoo {

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using Permutation = std::vector<int>;

enum class LieFamily { GL, SL };
enum class Twist { Split, Graph };

std::string to_string(Twist t);
Twist parse_twist(const std::string& text);

/// Type A_{n-1} root datum: GL(n) on X = Z^n, SL(n) on X = Z^n / Z(1,...,1)
/// with basis the images of e_1..e_{n-1}.
struct RootDatum {
    LieFamily family = LieFamily::GL;
    int n = 2;
    int rank = 2;
    std::vector<std::vector<std::int64_t>> simple_roots;    // in X
    std::vector<std::vector<std::int64_t>> simple_coroots;  // in the dual lattice
    int positive_roots = 1;
    int central_rank = 1;

    static RootDatum gl(int n);
    static RootDatum sl(int n);
    /// "GL2", "SL3".
    static RootDatum parse(const std::string& family);
    std::string label() const;

    /// <alpha_i, alpha_j^vee>
    IntMatrix cartan_matrix() const;
    /// Action on X of the permutation w of {0..n-1} (w(e_i) = e_{w(i)}).
    IntMatrix weyl_matrix(const Permutation& w) const;
    /// Lattice automorphism for the twist: identity, or e_i -> -e_{n+1-i}.
    IntMatrix twist_matrix(Twist t) const;
};

class TwistedWeylGroup {
   public:
    TwistedWeylGroup(RootDatum datum, Twist twist);

    const RootDatum& datum() const noexcept { return datum_; }
    Twist twist() const noexcept { return twist_; }
    std::size_t order() const noexcept { return elements_.size(); }
    /// Elements in BFS order from the identity over the simple reflections.
    const std::vector<Permutation>& elements() const noexcept { return elements_; }
    const std::vector<int>& lengths() const noexcept { return lengths_; }
    /// Elements fixed by the twist (all of W when split).
    std::vector<std::size_t> fixed_elements() const;
    /// Twisted classes {x w tau(x)^-1}, each as sorted element indices.
    const std::vector<std::vector<std::size_t>>& twisted_classes() const noexcept { return classes_; }
    std::size_t index_of(const Permutation& w) const;
    /// Orbits of the twist on the simple roots.
    std::vector<std::vector<int>> simple_root_orbits() const;
    /// sum q^l(w) over all of W.
    RationalPoly poincare_polynomial() const;

   private:
    RootDatum datum_;
    Twist twist_;
    std::vector<Permutation> elements_;
    std::vector<int> lengths_;
    std::vector<std::vector<std::size_t>> classes_;
};

/// Inversion count of a permutation.
int inversions(const Permutation& w);

/// |G^F| as a polynomial in q.
RationalPoly order_polynomial(const TwistedWeylGroup& w);
/// |(Z°)^F|.
RationalPoly central_torus_order(const TwistedWeylGroup& w);
/// |det(q w tau - 1)| on X, leading coefficient positive.
RationalPoly torus_order(const TwistedWeylGroup& w, const Permutation& element);
/// (order polynomial / q^N) / torus order.
RationalPoly dl_degree(const TwistedWeylGroup& w, const Permutation& element);

struct CandidateSet {
    std::vector<RationalPoly> polys;               // sorted
    std::vector<std::vector<std::int64_t>> provenance;  // a_w per member, indexed like elements()
    std::int64_t bound = 0;                        // floor(|W|^{3/2})
    std::size_t weyl_order = 0;
    std::size_t enumerated = 0;
};

void to_json(nlohmann::json& j, const CandidateSet& c);

inline constexpr std::uint64_t kCandidateBudget = 20'000'000;

/// {(1/|W|) sum_w a_w f_w : |a_w| <= floor(|W|^{3/2})}, deduplicated, pruned
/// to members positive at q = 2^20 and optionally to degree <= max_degree.
/// ConfigError when the coefficient box exceeds `budget`.
CandidateSet candidate_set(const TwistedWeylGroup& w, std::optional<int> max_degree = std::nullopt,
                           std::uint64_t budget = kCandidateBudget);

struct ContainmentWitness {
    std::uint64_t degree = 0;
    std::optional<std::size_t> candidate;  // index into CandidateSet::polys
};

struct ContainmentReport {
    struct PerQ {
        std::uint64_t q = 0;
        DegreeMultiset degrees;
        std::vector<ContainmentWitness> witnesses;
        bool contained = true;
    };
    std::vector<PerQ> results;
    bool contained = true;
};

void to_json(nlohmann::json& j, const ContainmentReport& r);

/// Checks dimirr(G(F_q)) against the candidate set for each q (split forms only).
ContainmentReport verify_containment(const RootDatum& datum, Twist twist, const std::vector<std::uint64_t>& qs,
                                     const CandidateSet& candidates);

/// q = p^f for prime p, or nullopt.
std::optional<std::pair<int, int>> prime_power(std::uint64_t q);

}  // namespace repzoo
