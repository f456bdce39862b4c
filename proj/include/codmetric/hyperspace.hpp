#pragma once

#include "codmetric/metric.hpp"

#include <optional>
#include <utility>

namespace codmetric {

/// Closed subset of the ambient space, represented by its open complement.
/// Both the empty set (complement = X) and X itself (complement = empty)
/// are valid.
class ClosedSet {
public:
    ClosedSet(Space space, OpenSet complement);

    static ClosedSet whole(Space space) { return ClosedSet(space, OpenSet::empty_set(space)); }
    static ClosedSet empty_set(Space space) { return ClosedSet(space, OpenSet::whole(space)); }
    /// X \ u.
    static ClosedSet complement_of(const OpenSet& u) { return ClosedSet(u.space(), u); }

    Space space() const { return space_; }
    const OpenSet& complement() const { return complement_; }
    /// The closed point-set itself, materialized.
    IntervalSet points() const { return complement_.set().complement(); }
    bool is_empty() const;
    bool is_whole() const { return complement_.empty(); }

    friend bool operator==(const ClosedSet&, const ClosedSet&) = default;

private:
    Space space_;
    OpenSet complement_;
};

/// D(f) = X \ dom(f).
ClosedSet complement_of_domain(const PartialMap& f);

/// I(f) = X \ im(f); defined for partial homeomorphisms, whose images are
/// open by construction.
ClosedSet complement_of_image(const GammaMap& f);

/// A lies in (X \ K)^+, i.e. A does not meet K.
bool fell_miss(const ClosedSet& a, const CompactSet& k);

/// A lies in V^-, i.e. A meets the nonempty open set V.
bool fell_hit(const ClosedSet& a, const OpenSet& v);

/// The (m,n) summand of d_Fell: 0 when A and B both hit or both miss the
/// interior of K_{(m+1)n}, 1 otherwise.
int fell_indicator(const ClosedSet& a, const ClosedSet& b, std::uint64_t m, std::uint64_t n);

/// Enclosure of d_Fell(A,B) = sum over m,n of 2^-(m+n) times the hit/miss
/// disagreement indicator.
Enclosure d_fell(const ClosedSet& a, const ClosedSet& b, const TruncationPlan& plan);
Enclosure d_fell(const ClosedSet& a, const ClosedSet& b, const Rational& tol);

/// Bounded scan for a separating cell: the first (m, n) in order of m+n
/// with indicator 1, or nullopt if none exists with m+n <= max_index_sum.
std::optional<std::pair<std::uint64_t, std::uint64_t>>
separation_scan(const ClosedSet& a, const ClosedSet& b, std::uint64_t max_index_sum);

} // namespace codmetric
