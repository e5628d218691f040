#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "repzoo/error.hpp"

namespace repzoo {

/// Elements of a finite group are addressed by their ordinal 0..order()-1.
using Ordinal = std::uint32_t;

/// Abstract finite group on ordinals. Implementations are immutable once built.
class FiniteGroup {
   public:
    virtual ~FiniteGroup() = default;

    virtual std::size_t order() const = 0;
    virtual Ordinal identity() const = 0;
    virtual Ordinal mul(Ordinal a, Ordinal b) const = 0;
    virtual Ordinal inv(Ordinal a) const = 0;

    /// Deterministic generating set (greedy closure over a fixed-seed shuffle).
    const std::vector<Ordinal>& generators() const;

    Ordinal pow(Ordinal a, std::uint64_t n) const;
    /// g x g^-1
    Ordinal conjugate(Ordinal g, Ordinal x) const { return mul(mul(g, x), inv(g)); }
    std::uint64_t element_order(Ordinal a) const;
    bool is_abelian() const;

   private:
    mutable std::once_flag generators_once_;
    mutable std::vector<Ordinal> generators_;
};

/// Sorted elements of the subgroup generated by `gens`.
std::vector<Ordinal> closure(const FiniteGroup& g, std::span<const Ordinal> gens);

struct ConjugacyClassData {
    std::vector<std::uint32_t> class_of;         // element -> class
    std::vector<Ordinal> representatives;        // least ordinal in each class
    std::vector<std::size_t> sizes;
    std::vector<std::uint32_t> inverse_class;
    std::vector<std::vector<Ordinal>> members;   // sorted

    std::size_t count() const noexcept { return representatives.size(); }
};

/// Classes ordered by least element ordinal.
ConjugacyClassData conjugacy_classes(const FiniteGroup& g);

/// Subgroup given by a sorted set of parent ordinals; local ordinal i is the
/// i-th smallest member. Throws ConfigError if the set is not a subgroup.
class SubgroupView final : public FiniteGroup {
   public:
    SubgroupView(std::shared_ptr<const FiniteGroup> parent, std::vector<Ordinal> members);

    std::size_t order() const override { return members_.size(); }
    Ordinal identity() const override { return identity_; }
    Ordinal mul(Ordinal a, Ordinal b) const override;
    Ordinal inv(Ordinal a) const override;

    const FiniteGroup& parent() const noexcept { return *parent_; }
    const std::shared_ptr<const FiniteGroup>& parent_ptr() const noexcept { return parent_; }
    Ordinal to_parent(Ordinal local) const { return members_[local]; }
    std::optional<Ordinal> from_parent(Ordinal p) const;
    const std::vector<Ordinal>& members() const noexcept { return members_; }

   private:
    Ordinal local_or_throw(Ordinal p) const;

    std::shared_ptr<const FiniteGroup> parent_;
    std::vector<Ordinal> members_;
    Ordinal identity_ = 0;
};

/// G/N with cosets labelled in order of their least element.
/// Throws MathError (naming a conjugating witness) if N is not normal.
class QuotientGroup final : public FiniteGroup {
   public:
    QuotientGroup(std::shared_ptr<const FiniteGroup> group, std::vector<Ordinal> normal_subgroup);

    std::size_t order() const override { return reps_.size(); }
    Ordinal identity() const override { return coset_[group_->identity()]; }
    Ordinal mul(Ordinal a, Ordinal b) const override { return coset_[group_->mul(reps_[a], reps_[b])]; }
    Ordinal inv(Ordinal a) const override { return coset_[group_->inv(reps_[a])]; }

    const FiniteGroup& group() const noexcept { return *group_; }
    Ordinal coset_of(Ordinal g) const { return coset_[g]; }
    Ordinal representative(Ordinal c) const { return reps_[c]; }
    std::size_t kernel_order() const noexcept { return kernel_order_; }

   private:
    std::shared_ptr<const FiniteGroup> group_;
    std::vector<Ordinal> coset_;
    std::vector<Ordinal> reps_;
    std::size_t kernel_order_ = 1;
};

std::shared_ptr<const QuotientGroup> quotient_group(std::shared_ptr<const FiniteGroup> g, std::vector<Ordinal> n);

/// Elements commuting with every generator, sorted.
std::vector<Ordinal> center(const FiniteGroup& g);

/// (g, n) with g n g^-1 outside `subset` for a generator g, or nullopt when
/// the sorted subset is normalized by G.
std::optional<std::pair<Ordinal, Ordinal>> normality_witness(const FiniteGroup& g, std::span<const Ordinal> subset);

}  // namespace repzoo
