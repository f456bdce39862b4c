#pragma once

#include "codmetric/errors.hpp"
#include "codmetric/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace codmetric {

/// Ambient 1-D space: the rational line, or the closed unit interval.
enum class Space { reals, unit_interval };

std::string space_name(Space s);
Space parse_space(const std::string& name);

/// One interval over the ambient line. Infinite ends (reals only) are
/// always open. A degenerate interval [a,a] with both ends closed is a
/// single point.
struct Interval {
    bool lo_inf = false;
    bool hi_inf = false;
    Rational lo; // meaningful iff !lo_inf
    Rational hi; // meaningful iff !hi_inf
    bool lo_open = true;
    bool hi_open = true;

    static Interval open(Rational lo, Rational hi);
    static Interval closed(Rational lo, Rational hi);
    static Interval point(Rational x);
    static Interval with_flags(Rational lo, Rational hi, bool lo_open, bool hi_open);
    static Interval ray_below(Rational hi, bool hi_open); // (-inf, hi)
    static Interval ray_above(Rational lo, bool lo_open); // (lo, +inf)
    static Interval line();

    bool empty() const;
    bool degenerate() const; // a single point
    bool bounded() const { return !lo_inf && !hi_inf; }
    bool contains(const Rational& x) const;
    Rational length() const; // requires bounded()

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Canonical finite union of intervals: components pairwise disjoint,
/// sorted, and maximal (no two mergeable). The constructor normalizes and
/// clips to the ambient space, so a canonical form is unique per point-set.
class IntervalSet {
public:
    explicit IntervalSet(Space space) : space_(space) {}
    IntervalSet(Space space, std::vector<Interval> raw);

    static IntervalSet empty_set(Space space) { return IntervalSet(space); }
    static IntervalSet whole(Space space);

    Space space() const { return space_; }
    const std::vector<Interval>& components() const { return components_; }
    bool empty() const { return components_.empty(); }
    bool bounded() const;
    bool contains(const Rational& x) const;

    /// Relatively open in the ambient space (closed endpoints allowed only
    /// at the boundary of the unit interval).
    bool is_open() const;
    /// Closed and bounded, i.e. compact.
    bool is_compact() const;

    IntervalSet complement() const;
    IntervalSet closure() const;
    /// Relative interior. Valid componentwise because canonical components
    /// touch only with open ends.
    IntervalSet interior() const;

    /// Some element of the set; nullopt when empty. Deterministic.
    std::optional<Rational> some_point() const;

    std::string str() const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    Space space_;
    std::vector<Interval> components_;
};

/// Intersection of two bare intervals; may be empty.
Interval intersect_intervals(const Interval& a, const Interval& b);

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b);
IntervalSet unite(const IntervalSet& a, const IntervalSet& b);
IntervalSet difference(const IntervalSet& a, const IntervalSet& b);
bool subset(const IntervalSet& a, const IntervalSet& b);
bool intersects(const IntervalSet& a, const IntervalSet& b);

/// Infimum of |x - y| over the two sets; nullopt when either is empty.
/// Exact: extrema occur at component endpoints.
std::optional<Rational> min_distance(const IntervalSet& a, const IntervalSet& b);

/// Open subset of the ambient space; may be unbounded over the reals
/// (complements of closed sets are represented through this type).
class OpenSet {
public:
    explicit OpenSet(IntervalSet set);
    static OpenSet empty_set(Space space) { return OpenSet(IntervalSet::empty_set(space)); }
    static OpenSet whole(Space space) { return OpenSet(IntervalSet::whole(space)); }

    const IntervalSet& set() const { return set_; }
    Space space() const { return set_.space(); }
    const std::vector<Interval>& components() const { return set_.components(); }
    bool empty() const { return set_.empty(); }

    friend bool operator==(const OpenSet&, const OpenSet&) = default;

private:
    IntervalSet set_;
};

/// Compact subset: finite union of closed bounded intervals, possibly
/// degenerate, possibly empty.
class CompactSet {
public:
    explicit CompactSet(IntervalSet set);
    static CompactSet empty_set(Space space) { return CompactSet(IntervalSet::empty_set(space)); }
    static CompactSet closed_interval(Space space, const Rational& lo, const Rational& hi);

    const IntervalSet& set() const { return set_; }
    Space space() const { return set_.space(); }
    const std::vector<Interval>& components() const { return set_.components(); }
    bool empty() const { return set_.empty(); }

    friend bool operator==(const CompactSet&, const CompactSet&) = default;

private:
    IntervalSet set_;
};

void require_same_space(Space a, Space b, const char* what);

} // namespace codmetric
