#include "codmetric/hyperspace.hpp"

namespace codmetric {

ClosedSet::ClosedSet(Space space, OpenSet complement)
    : space_(space), complement_(std::move(complement)) {
    require_same_space(space_, complement_.space(), "ClosedSet");
}

bool ClosedSet::is_empty() const {
    return complement_.set() == IntervalSet::whole(space_);
}

ClosedSet complement_of_domain(const PartialMap& f) {
    return ClosedSet(f.space(), f.domain());
}

ClosedSet complement_of_image(const GammaMap& f) {
    return ClosedSet(f.space(), f.image());
}

bool fell_miss(const ClosedSet& a, const CompactSet& k) {
    require_same_space(a.space(), k.space(), "fell_miss");
    // A ∩ K = ∅ exactly when K sits inside the complement of A.
    return subset(k.set(), a.complement().set());
}

bool fell_hit(const ClosedSet& a, const OpenSet& v) {
    require_same_space(a.space(), v.space(), "fell_hit");
    if (v.empty()) throw PreconditionError("fell_hit needs a nonempty open set");
    return !subset(v.set(), a.complement().set());
}

int fell_indicator(const ClosedSet& a, const ClosedSet& b, std::uint64_t m, std::uint64_t n) {
    require_same_space(a.space(), b.space(), "fell_indicator");
    if (m == 0 || n == 0) throw PreconditionError("fell_indicator indices must be >= 1");
    const OpenSet& probe = exhaustion_interior(m + 1, n, a.space());
    const bool a_hits = !subset(probe.set(), a.complement().set());
    const bool b_hits = !subset(probe.set(), b.complement().set());
    return a_hits == b_hits ? 0 : 1;
}

Enclosure d_fell(const ClosedSet& a, const ClosedSet& b, const TruncationPlan& plan) {
    require_same_space(a.space(), b.space(), "d_fell");
    Rational partial(0);
    for (std::uint64_t n = 1; n <= plan.basis_cutoff; ++n)
        for (std::uint64_t m = 1; m <= plan.exhaustion_cutoff; ++m)
            if (fell_indicator(a, b, m, n) != 0) partial += pow2_inv(m + n);
    return {partial, Rational(partial + plan.tail_bound())};
}

Enclosure d_fell(const ClosedSet& a, const ClosedSet& b, const Rational& tol) {
    return d_fell(a, b, TruncationPlan::for_tolerance(tol));
}

std::optional<std::pair<std::uint64_t, std::uint64_t>>
separation_scan(const ClosedSet& a, const ClosedSet& b, std::uint64_t max_index_sum) {
    for (std::uint64_t s = 2; s <= max_index_sum; ++s) {
        for (std::uint64_t m = 1; m + 1 <= s; ++m) {
            const std::uint64_t n = s - m;
            if (fell_indicator(a, b, m, n) == 1) return std::make_pair(m, n);
        }
    }
    return std::nullopt;
}

} // namespace codmetric
