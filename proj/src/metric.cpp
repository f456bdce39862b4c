#include "codmetric/metric.hpp"

#include <algorithm>
#include <set>

namespace codmetric {

std::string Enclosure::str() const {
    return "[" + rational_to_string(lo) + ", " + rational_to_string(hi) + "]";
}

TruncationPlan TruncationPlan::for_tolerance(const Rational& tol) {
    if (tol <= 0) throw PreconditionError("tolerance must be positive");
    std::uint64_t n = 1;
    while (Rational(pow2_inv(n) * 2) > tol) {
        ++n;
        if (n > 1024) throw PreconditionError("tolerance too small: truncation depth over 1024");
    }
    return {n, n};
}

Rational TruncationPlan::tail_bound() const {
    return pow2_inv(basis_cutoff) + pow2_inv(exhaustion_cutoff);
}

Rational sup_distance(const PartialMap& f, const PartialMap& g, const CompactSet& k) {
    require_same_space(f.space(), g.space(), "sup_distance");
    require_same_space(f.space(), k.space(), "sup_distance");
    require_same_space(f.codomain(), g.codomain(), "sup_distance codomain");
    if (k.empty()) throw PreconditionError("sup_distance needs a nonempty compact set");
    const IntervalSet both = intersect(f.domain().set(), g.domain().set());
    if (!subset(k.set(), both)) {
        const auto missing = difference(k.set(), both).some_point();
        throw DomainError("compact set not inside both domains; uncovered point " +
                          rational_to_string(missing.value()));
    }
    // Refine K by the merged node abscissae; the difference is linear on
    // each refined cell, so the sup sits at a cell endpoint.
    Rational best(0);
    for (const Interval& c : k.components()) {
        std::set<Rational> xs{c.lo, c.hi};
        for (const PartialMap* m : {&f, &g})
            for (const MapPiece& piece : m->pieces())
                for (const MapNode& node : piece.nodes)
                    if (node.x > c.lo && node.x < c.hi) xs.insert(node.x);
        for (const Rational& x : xs) {
            const Rational d = abs_value(Rational(f.evaluate(x) - g.evaluate(x)));
            if (d > best) best = d;
        }
    }
    return std::min(best, Rational(1));
}

bool l_member(const PartialMap& f, std::uint64_t m, std::uint64_t n) {
    const OpenSet& probe = exhaustion_interior(m + 1, n, f.space());
    return !subset(probe.set(), f.domain().set());
}

Rational beta_mn(const PartialMap& f, const PartialMap& g, std::uint64_t m, std::uint64_t n) {
    require_same_space(f.space(), g.space(), "beta_mn");
    require_same_space(f.codomain(), g.codomain(), "beta_mn codomain");
    if (m == 0 || n == 0) throw PreconditionError("beta_mn indices must be >= 1");
    const bool f_in = l_member(f, m, n);
    const bool g_in = l_member(g, m, n);
    if (f_in && g_in) return Rational(0);
    if (!f_in && !g_in) return sup_distance(f, g, compact_exhaustion(m, n, f.space()));
    return Rational(1);
}

Enclosure beta(const PartialMap& f, const PartialMap& g, const TruncationPlan& plan) {
    require_same_space(f.space(), g.space(), "beta");
    require_same_space(f.codomain(), g.codomain(), "beta codomain");
    Rational partial(0);
    for (std::uint64_t n = 1; n <= plan.basis_cutoff; ++n) {
        for (std::uint64_t m = 1; m <= plan.exhaustion_cutoff; ++m) {
            const Rational term = beta_mn(f, g, m, n);
            if (term != 0) partial += pow2_inv(m + n) * term;
        }
    }
    return {partial, Rational(partial + plan.tail_bound())};
}

Enclosure beta(const PartialMap& f, const PartialMap& g, const Rational& tol) {
    return beta(f, g, TruncationPlan::for_tolerance(tol));
}

Enclosure d_gamma(const GammaMap& f, const GammaMap& g, const TruncationPlan& plan) {
    const Enclosure direct = beta(f.base(), g.base(), plan);
    const Enclosure inverse = beta(invert(f).base(), invert(g).base(), plan);
    return direct + inverse;
}

Enclosure d_gamma(const GammaMap& f, const GammaMap& g, const Rational& tol) {
    if (tol <= 0) throw PreconditionError("tolerance must be positive");
    return d_gamma(f, g, TruncationPlan::for_tolerance(Rational(tol / 2)));
}

bool in_compact_open(const PartialMap& f, const CompactSet& k, const OpenSet& v) {
    require_same_space(f.space(), k.space(), "in_compact_open");
    require_same_space(f.codomain(), v.space(), "in_compact_open");
    if (k.empty()) return true; // <∅,V> contains every map
    if (!subset(k.set(), f.domain().set())) return false;
    return subset(f.image_on(k).set(), v.set());
}

bool in_compact_open_inv(const GammaMap& f, const CompactSet& k, const OpenSet& v) {
    require_same_space(f.space(), k.space(), "in_compact_open_inv");
    require_same_space(f.space(), v.space(), "in_compact_open_inv");
    if (k.empty()) return true;
    if (!subset(k.set(), f.image().set())) return false;
    return subset(f.base().preimage(k), v.set());
}

bool in_ball(const PartialMap& g, const PartialMap& f, const CompactSet& k, const Rational& eps) {
    if (f.is_empty()) throw PreconditionError("ball center must be nonempty");
    if (k.empty()) throw PreconditionError("ball needs a nonempty compact set");
    if (eps <= 0) throw PreconditionError("ball radius must be positive");
    if (!subset(k.set(), f.domain().set()))
        throw PreconditionError("compact set must lie inside the center's domain");
    require_same_space(f.space(), g.space(), "in_ball");
    require_same_space(f.codomain(), g.codomain(), "in_ball codomain");
    if (!subset(k.set(), g.domain().set())) return false;
    return sup_distance(f, g, k) < eps;
}

Rational separation_radius(const PartialMap& f, const CompactSet& k, const OpenSet& v) {
    if (k.empty()) throw PreconditionError("separation_radius needs a nonempty compact set");
    if (!in_compact_open(f, k, v))
        throw PreconditionError("map is not a member of <K,V>");
    const IntervalSet outside = v.set().complement();
    const auto gap = min_distance(f.image_on(k).set(), outside);
    if (!gap) return Rational(1); // V is the whole space
    return std::min(Rational(1), *gap);
}

std::uint64_t empty_separation_witness(const PartialMap& f, std::uint64_t search_bound) {
    if (f.is_empty()) throw PreconditionError("the empty function cannot be separated from itself");
    for (std::uint64_t n = 1; n <= search_bound; ++n) {
        if (subset(basis_element(n, f.space()).set(), f.domain().set())) return n;
    }
    throw SearchExhaustedError("no basis element inside the domain up to index " +
                               std::to_string(search_bound));
}

} // namespace codmetric
