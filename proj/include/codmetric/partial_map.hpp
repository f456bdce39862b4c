#pragma once

#include "codmetric/interval_set.hpp"

#include <vector>

namespace codmetric {

struct MapNode {
    Rational x;
    Rational y;
    friend bool operator==(const MapNode&, const MapNode&) = default;
};

/// One maximal domain component together with its interpolation nodes.
/// Node abscissae strictly increase and span the closure of the component,
/// so the first/last node sit on the (possibly excluded) endpoints.
struct MapPiece {
    Interval domain; // relatively open, bounded, nonempty
    std::vector<MapNode> nodes;
    friend bool operator==(const MapPiece&, const MapPiece&) = default;
};

/// Piecewise-linear continuous function on an open subset of the ambient
/// space. Values are exact rationals; the empty map (no pieces) is valid.
/// Instances are immutable after construction.
class PartialMap {
public:
    PartialMap(Space space, Space codomain, std::vector<MapPiece> pieces);

    static PartialMap empty(Space space, Space codomain);
    static PartialMap identity_on(const OpenSet& dom);
    static PartialMap constant_on(const OpenSet& dom, const Rational& value, Space codomain);
    /// a*x + b over every component of dom.
    static PartialMap affine_on(const OpenSet& dom, const Rational& a, const Rational& b,
                                Space codomain);

    Space space() const { return space_; }
    Space codomain() const { return codomain_; }
    bool is_empty() const { return pieces_.empty(); }
    const std::vector<MapPiece>& pieces() const { return pieces_; }
    const OpenSet& domain() const { return domain_; }

    bool defined_at(const Rational& x) const;
    /// f(x); DomainError outside the domain.
    Rational evaluate(const Rational& x) const;

    /// Exact point-set image as an interval union with endpoint flags.
    IntervalSet image() const;
    /// Exact image of K under f; requires K inside the domain.
    CompactSet image_on(const CompactSet& k) const;
    /// Exact preimage of a target set, intersected with the domain.
    IntervalSet preimage(const IntervalSet& target) const;
    IntervalSet preimage(const CompactSet& k) const;

    /// Largest |slope| among linear pieces meeting K; 0 if none do.
    Rational max_slope_on(const CompactSet& k) const;

    friend bool operator==(const PartialMap&, const PartialMap&) = default;

private:
    Space space_;
    Space codomain_;
    std::vector<MapPiece> pieces_;
    OpenSet domain_;
};

/// f composed after g: x -> f(g(x)) on g^{-1}(dom f). Requires the codomain
/// of g to be the space of f. Possibly empty.
PartialMap compose(const PartialMap& f, const PartialMap& g);

/// Restriction of f to dom(f) ∩ u.
PartialMap restrict_to(const PartialMap& f, const OpenSet& u);

/// The union function of maps that pairwise agree on domain overlaps.
/// IncompatibilityError (with a witness point) on any disagreement.
PartialMap join(const std::vector<PartialMap>& maps);

/// Exact extensional equality: identical domains and identical values.
bool equal(const PartialMap& f, const PartialMap& g);

/// Partial homeomorphism: a PartialMap into its own space, strictly
/// monotone on each component, with pairwise disjoint component images
/// forming a relatively open set.
class GammaMap {
public:
    explicit GammaMap(PartialMap base);

    static GammaMap empty(Space space) { return GammaMap(PartialMap::empty(space, space)); }
    static GammaMap identity_on(const OpenSet& dom) { return GammaMap(PartialMap::identity_on(dom)); }

    const PartialMap& base() const { return base_; }
    const OpenSet& image() const { return image_; }
    Space space() const { return base_.space(); }
    bool is_empty() const { return base_.is_empty(); }

    friend bool operator==(const GammaMap&, const GammaMap&) = default;

private:
    PartialMap base_;
    OpenSet image_;
};

/// Exact inverse with nodes transposed. InjectivityError (naming a witness
/// pair) when f is not globally injective; RepresentationError when the
/// image is not relatively open.
GammaMap invert(const PartialMap& f);
GammaMap invert(const GammaMap& f);

namespace detail {
/// Value of the linear extension of a piece at x in the closure of its
/// domain. Used where nodes must be placed on closure endpoints.
Rational piece_closure_value(const MapPiece& piece, const Rational& x);
/// Slope/intercept of the segment of `piece` whose closed span contains x;
/// for x on an interior node the segment to the right is used.
std::pair<Rational, Rational> piece_coefficients_at(const MapPiece& piece, const Rational& x);
} // namespace detail

} // namespace codmetric
