#include "codmetric/interval_set.hpp"

#include <algorithm>

namespace codmetric {

std::string space_name(Space s) {
    return s == Space::reals ? "reals" : "unit_interval";
}

Space parse_space(const std::string& name) {
    if (name == "reals") return Space::reals;
    if (name == "unit_interval") return Space::unit_interval;
    throw ParseError("unknown space '" + name + "'");
}

void require_same_space(Space a, Space b, const char* what) {
    if (a != b)
        throw SpaceMismatchError(std::string(what) + ": mixed ambient spaces (" + space_name(a) +
                                 " vs " + space_name(b) + ")");
}

Interval Interval::open(Rational lo, Rational hi) {
    Interval i;
    i.lo = std::move(lo);
    i.hi = std::move(hi);
    return i;
}

Interval Interval::closed(Rational lo, Rational hi) {
    Interval i;
    i.lo = std::move(lo);
    i.hi = std::move(hi);
    i.lo_open = i.hi_open = false;
    return i;
}

Interval Interval::point(Rational x) { return closed(x, x); }

Interval Interval::with_flags(Rational lo, Rational hi, bool lo_open, bool hi_open) {
    Interval i;
    i.lo = std::move(lo);
    i.hi = std::move(hi);
    i.lo_open = lo_open;
    i.hi_open = hi_open;
    return i;
}

Interval Interval::ray_below(Rational hi, bool hi_open) {
    Interval i;
    i.lo_inf = true;
    i.hi = std::move(hi);
    i.hi_open = hi_open;
    return i;
}

Interval Interval::ray_above(Rational lo, bool lo_open) {
    Interval i;
    i.hi_inf = true;
    i.lo = std::move(lo);
    i.lo_open = lo_open;
    return i;
}

Interval Interval::line() {
    Interval i;
    i.lo_inf = i.hi_inf = true;
    return i;
}

bool Interval::empty() const {
    if (lo_inf || hi_inf) return false;
    if (lo < hi) return false;
    if (lo > hi) return true;
    return lo_open || hi_open;
}

bool Interval::degenerate() const {
    return !lo_inf && !hi_inf && lo == hi && !lo_open && !hi_open;
}

bool Interval::contains(const Rational& x) const {
    if (!lo_inf) {
        if (x < lo) return false;
        if (x == lo && lo_open) return false;
    }
    if (!hi_inf) {
        if (x > hi) return false;
        if (x == hi && hi_open) return false;
    }
    return true;
}

Rational Interval::length() const { return hi - lo; }

namespace {

// Lower/upper endpoint positions ordered as cuts on the line: a closed
// lower end starts earlier than an open one at the same value; an open
// upper end stops earlier than a closed one.
int cmp_lower(const Interval& a, const Interval& b) {
    if (a.lo_inf || b.lo_inf) return a.lo_inf == b.lo_inf ? 0 : (a.lo_inf ? -1 : 1);
    if (a.lo != b.lo) return a.lo < b.lo ? -1 : 1;
    if (a.lo_open == b.lo_open) return 0;
    return a.lo_open ? 1 : -1;
}

int cmp_upper(const Interval& a, const Interval& b) {
    if (a.hi_inf || b.hi_inf) return a.hi_inf == b.hi_inf ? 0 : (a.hi_inf ? 1 : -1);
    if (a.hi != b.hi) return a.hi < b.hi ? -1 : 1;
    if (a.hi_open == b.hi_open) return 0;
    return a.hi_open ? -1 : 1;
}

// True when x stops strictly before y starts, with a genuine gap in between
// or a touch that neither side closes.
bool ends_before(const Interval& x, const Interval& y) {
    if (x.hi_inf || y.lo_inf) return false;
    if (x.hi < y.lo) return true;
    if (x.hi > y.lo) return false;
    return x.hi_open && y.lo_open;
}

// Mergeable given cmp_lower(a, b) <= 0: the union is again an interval.
bool touches_or_overlaps(const Interval& a, const Interval& b) {
    if (a.hi_inf || b.lo_inf) return true;
    if (a.hi > b.lo) return true;
    if (a.hi < b.lo) return false;
    return !(a.hi_open && b.lo_open);
}

Interval ambient_interval(Space space) {
    if (space == Space::reals) return Interval::line();
    return Interval::closed(Rational(0), Rational(1));
}

std::string bound_str(bool inf, const Rational& v, bool negative) {
    if (inf) return negative ? "-inf" : "inf";
    return rational_to_string(v);
}

} // namespace

Interval intersect_intervals(const Interval& a, const Interval& b) {
    Interval r;
    const Interval& lo_src = cmp_lower(a, b) >= 0 ? a : b;
    r.lo_inf = lo_src.lo_inf;
    r.lo = lo_src.lo;
    r.lo_open = lo_src.lo_open;
    const Interval& hi_src = cmp_upper(a, b) <= 0 ? a : b;
    r.hi_inf = hi_src.hi_inf;
    r.hi = hi_src.hi;
    r.hi_open = hi_src.hi_open;
    return r;
}

IntervalSet::IntervalSet(Space space, std::vector<Interval> raw) : space_(space) {
    const Interval ambient = ambient_interval(space);
    std::vector<Interval> clipped;
    clipped.reserve(raw.size());
    for (const Interval& i : raw) {
        Interval c = intersect_intervals(i, ambient);
        if (!c.empty()) clipped.push_back(std::move(c));
    }
    std::sort(clipped.begin(), clipped.end(), [](const Interval& a, const Interval& b) {
        const int c = cmp_lower(a, b);
        if (c != 0) return c < 0;
        return cmp_upper(a, b) < 0;
    });
    for (Interval& next : clipped) {
        if (!components_.empty() && touches_or_overlaps(components_.back(), next)) {
            Interval& cur = components_.back();
            if (cmp_upper(cur, next) < 0) {
                cur.hi_inf = next.hi_inf;
                cur.hi = next.hi;
                cur.hi_open = next.hi_open;
            }
        } else {
            components_.push_back(std::move(next));
        }
    }
}

IntervalSet IntervalSet::whole(Space space) {
    return IntervalSet(space, {ambient_interval(space)});
}

bool IntervalSet::bounded() const {
    for (const Interval& c : components_)
        if (!c.bounded()) return false;
    return true;
}

bool IntervalSet::contains(const Rational& x) const {
    for (const Interval& c : components_)
        if (c.contains(x)) return true;
    return false;
}

bool IntervalSet::is_open() const {
    for (const Interval& c : components_) {
        const bool lo_ok =
            c.lo_inf || c.lo_open || (space_ == Space::unit_interval && c.lo == 0);
        const bool hi_ok =
            c.hi_inf || c.hi_open || (space_ == Space::unit_interval && c.hi == 1);
        if (!lo_ok || !hi_ok) return false;
    }
    return true;
}

bool IntervalSet::is_compact() const {
    for (const Interval& c : components_)
        if (!c.bounded() || c.lo_open || c.hi_open) return false;
    return true;
}

IntervalSet IntervalSet::complement() const {
    const Interval ambient = ambient_interval(space_);
    std::vector<Interval> gaps;
    // Walk left to right, emitting the gap before each component.
    bool cur_inf = ambient.lo_inf;
    Rational cur = ambient.lo;
    bool cur_open = ambient.lo_open;
    for (const Interval& c : components_) {
        if (!c.lo_inf) {
            Interval gap;
            gap.lo_inf = cur_inf;
            gap.lo = cur;
            gap.lo_open = cur_open;
            gap.hi_inf = false;
            gap.hi = c.lo;
            gap.hi_open = !c.lo_open;
            if (!gap.empty()) gaps.push_back(gap);
        }
        if (c.hi_inf) return IntervalSet(space_, std::move(gaps));
        cur_inf = false;
        cur = c.hi;
        cur_open = !c.hi_open;
    }
    Interval last;
    last.lo_inf = cur_inf;
    last.lo = cur;
    last.lo_open = cur_open;
    last.hi_inf = ambient.hi_inf;
    last.hi = ambient.hi;
    last.hi_open = ambient.hi_open;
    if (!last.empty()) gaps.push_back(last);
    return IntervalSet(space_, std::move(gaps));
}

IntervalSet IntervalSet::closure() const {
    std::vector<Interval> out = components_;
    for (Interval& c : out) {
        if (!c.lo_inf) c.lo_open = false;
        if (!c.hi_inf) c.hi_open = false;
    }
    return IntervalSet(space_, std::move(out));
}

IntervalSet IntervalSet::interior() const {
    std::vector<Interval> out;
    for (Interval c : components_) {
        if (!c.lo_inf && !(space_ == Space::unit_interval && c.lo == 0)) c.lo_open = true;
        if (!c.hi_inf && !(space_ == Space::unit_interval && c.hi == 1)) c.hi_open = true;
        if (!c.empty()) out.push_back(std::move(c));
    }
    return IntervalSet(space_, std::move(out));
}

std::optional<Rational> IntervalSet::some_point() const {
    if (components_.empty()) return std::nullopt;
    const Interval& c = components_.front();
    if (!c.lo_inf && !c.lo_open) return c.lo;
    if (!c.hi_inf && !c.hi_open) return c.hi;
    if (c.bounded()) return Rational((c.lo + c.hi) / 2);
    if (!c.lo_inf) return Rational(c.lo + 1);
    if (!c.hi_inf) return Rational(c.hi - 1);
    return Rational(0);
}

std::string IntervalSet::str() const {
    if (components_.empty()) return "{}";
    std::string out;
    for (std::size_t k = 0; k < components_.size(); ++k) {
        const Interval& c = components_[k];
        if (k) out += " u ";
        out += c.lo_open || c.lo_inf ? "(" : "[";
        out += bound_str(c.lo_inf, c.lo, true);
        out += ", ";
        out += bound_str(c.hi_inf, c.hi, false);
        out += c.hi_open || c.hi_inf ? ")" : "]";
    }
    return out;
}

IntervalSet intersect(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "intersect");
    std::vector<Interval> out;
    std::size_t i = 0, j = 0;
    const auto& ca = a.components();
    const auto& cb = b.components();
    while (i < ca.size() && j < cb.size()) {
        Interval piece = intersect_intervals(ca[i], cb[j]);
        if (!piece.empty()) out.push_back(std::move(piece));
        if (cmp_upper(ca[i], cb[j]) <= 0)
            ++i;
        else
            ++j;
    }
    return IntervalSet(a.space(), std::move(out));
}

IntervalSet unite(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "unite");
    std::vector<Interval> all = a.components();
    all.insert(all.end(), b.components().begin(), b.components().end());
    return IntervalSet(a.space(), std::move(all));
}

IntervalSet difference(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "difference");
    return intersect(a, b.complement());
}

bool subset(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "subset");
    std::size_t j = 0;
    const auto& cb = b.components();
    for (const Interval& x : a.components()) {
        while (j < cb.size() && ends_before(cb[j], x)) ++j;
        if (j == cb.size()) return false;
        if (cmp_lower(cb[j], x) > 0 || cmp_upper(x, cb[j]) > 0) return false;
    }
    return true;
}

bool intersects(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "intersects");
    std::size_t i = 0, j = 0;
    const auto& ca = a.components();
    const auto& cb = b.components();
    while (i < ca.size() && j < cb.size()) {
        if (!intersect_intervals(ca[i], cb[j]).empty()) return true;
        if (cmp_upper(ca[i], cb[j]) <= 0)
            ++i;
        else
            ++j;
    }
    return false;
}

std::optional<Rational> min_distance(const IntervalSet& a, const IntervalSet& b) {
    require_same_space(a.space(), b.space(), "min_distance");
    if (a.empty() || b.empty()) return std::nullopt;
    if (intersects(a, b)) return Rational(0);
    std::optional<Rational> best;
    for (const Interval& x : a.components()) {
        for (const Interval& y : b.components()) {
            Rational gap;
            if (ends_before(x, y))
                gap = y.lo - x.hi;
            else if (ends_before(y, x))
                gap = x.lo - y.hi;
            else
                gap = 0; // disjoint but touching, e.g. [0,1] and (1,2)
            if (!best || gap < *best) best = gap;
        }
    }
    return best;
}

OpenSet::OpenSet(IntervalSet set) : set_(std::move(set)) {
    if (!set_.is_open())
        throw RepresentationError("set is not relatively open: " + set_.str());
}

CompactSet::CompactSet(IntervalSet set) : set_(std::move(set)) {
    if (!set_.is_compact())
        throw RepresentationError("set is not compact: " + set_.str());
}

CompactSet CompactSet::closed_interval(Space space, const Rational& lo, const Rational& hi) {
    return CompactSet(IntervalSet(space, {Interval::closed(lo, hi)}));
}

} // namespace codmetric
