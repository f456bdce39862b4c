#include "codmetric/partial_map.hpp"

#include <algorithm>
#include <optional>
#include <set>

namespace codmetric {

namespace {

// x-interval of segment i of a piece, with the domain's endpoint flags on
// the outermost segments.
Interval segment_span(const MapPiece& piece, std::size_t i) {
    Interval s;
    s.lo = piece.nodes[i].x;
    s.hi = piece.nodes[i + 1].x;
    s.lo_open = (i == 0) && piece.domain.lo_open;
    s.hi_open = (i + 2 == piece.nodes.size()) && piece.domain.hi_open;
    return s;
}

Rational segment_slope(const MapPiece& piece, std::size_t i) {
    return (piece.nodes[i + 1].y - piece.nodes[i].y) / (piece.nodes[i + 1].x - piece.nodes[i].x);
}

std::vector<MapNode> drop_collinear(std::vector<MapNode> nodes) {
    std::vector<MapNode> out;
    out.reserve(nodes.size());
    for (MapNode& node : nodes) {
        while (out.size() >= 2) {
            const MapNode& a = out[out.size() - 2];
            const MapNode& b = out.back();
            if ((node.y - b.y) * (b.x - a.x) == (b.y - a.y) * (node.x - b.x))
                out.pop_back();
            else
                break;
        }
        out.push_back(std::move(node));
    }
    return out;
}

// Image of one strictly monotone piece, endpoint flags tracking whether the
// extreme values are attained.
Interval monotone_piece_image(const MapPiece& piece) {
    const Rational& first = piece.nodes.front().y;
    const Rational& last = piece.nodes.back().y;
    Interval img;
    if (first < last) {
        img.lo = first;
        img.hi = last;
        img.lo_open = piece.domain.lo_open;
        img.hi_open = piece.domain.hi_open;
    } else {
        img.lo = last;
        img.hi = first;
        img.lo_open = piece.domain.hi_open;
        img.hi_open = piece.domain.lo_open;
    }
    return img;
}

struct InjectivityWitness {
    Rational a, b;
};

Rational solve_in_piece(const MapPiece& piece, const Rational& y) {
    const bool increasing = piece.nodes.front().y < piece.nodes.back().y;
    for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
        const Rational& y0 = piece.nodes[i].y;
        const Rational& y1 = piece.nodes[i + 1].y;
        const bool inside = increasing ? (y0 <= y && y <= y1) : (y1 <= y && y <= y0);
        if (!inside) continue;
        if (y == y0) return piece.nodes[i].x;
        if (y == y1) return piece.nodes[i + 1].x;
        const Rational s = segment_slope(piece, i);
        return Rational(piece.nodes[i].x + (y - y0) / s);
    }
    throw DomainError("value " + rational_to_string(y) + " not attained on piece");
}

std::optional<InjectivityWitness> injectivity_witness(const PartialMap& f) {
    // Flat or direction-changing segments within one piece.
    for (const MapPiece& piece : f.pieces()) {
        for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
            if (piece.nodes[i].y != piece.nodes[i + 1].y) continue;
            const Rational& x0 = piece.nodes[i].x;
            const Rational& x1 = piece.nodes[i + 1].x;
            const Rational step = (x1 - x0) / 3;
            return InjectivityWitness{Rational(x0 + step), Rational(x0 + step * 2)};
        }
        for (std::size_t i = 1; i + 1 < piece.nodes.size(); ++i) {
            const Rational left = segment_slope(piece, i - 1);
            const Rational right = segment_slope(piece, i);
            if ((left > 0) == (right > 0)) continue;
            const Rational& peak = piece.nodes[i].y;
            const Rational& yl = piece.nodes[i - 1].y;
            const Rational& yr = piece.nodes[i + 1].y;
            const Rational near_side = left > 0 ? std::max(yl, yr) : std::min(yl, yr);
            const Rational target = (peak + near_side) / 2;
            const Rational a = piece.nodes[i - 1].x + (target - yl) / left;
            const Rational b = piece.nodes[i].x + (target - peak) / right;
            return InjectivityWitness{a, b};
        }
    }
    // Overlapping images of distinct pieces.
    const auto& pieces = f.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        for (std::size_t j = i + 1; j < pieces.size(); ++j) {
            const Interval overlap =
                intersect_intervals(monotone_piece_image(pieces[i]), monotone_piece_image(pieces[j]));
            if (overlap.empty()) continue;
            const Rational y =
                overlap.degenerate() ? overlap.lo : Rational((overlap.lo + overlap.hi) / 2);
            return InjectivityWitness{solve_in_piece(pieces[i], y), solve_in_piece(pieces[j], y)};
        }
    }
    return std::nullopt;
}

} // namespace

namespace detail {

Rational piece_closure_value(const MapPiece& piece, const Rational& x) {
    const auto& nodes = piece.nodes;
    if (x < nodes.front().x || x > nodes.back().x)
        throw DomainError("x = " + rational_to_string(x) + " outside piece closure");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (x > nodes[i + 1].x) continue;
        if (x == nodes[i].x) return nodes[i].y;
        if (x == nodes[i + 1].x) return nodes[i + 1].y;
        const Rational s = segment_slope(piece, i);
        return Rational(nodes[i].y + (x - nodes[i].x) * s);
    }
    return nodes.back().y;
}

std::pair<Rational, Rational> piece_coefficients_at(const MapPiece& piece, const Rational& x) {
    const auto& nodes = piece.nodes;
    if (x < nodes.front().x || x > nodes.back().x)
        throw DomainError("x = " + rational_to_string(x) + " outside piece closure");
    std::size_t seg = nodes.size() - 2;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        if (x < nodes[i + 1].x) {
            seg = i;
            break;
        }
    }
    const Rational s = segment_slope(piece, seg);
    return {s, Rational(nodes[seg].y - s * nodes[seg].x)};
}

} // namespace detail

PartialMap::PartialMap(Space space, Space codomain, std::vector<MapPiece> pieces)
    : space_(space), codomain_(codomain), domain_(OpenSet::empty_set(space)) {
    std::sort(pieces.begin(), pieces.end(), [](const MapPiece& a, const MapPiece& b) {
        if (a.domain.lo != b.domain.lo) return a.domain.lo < b.domain.lo;
        return !a.domain.lo_open && b.domain.lo_open;
    });
    std::vector<Interval> domain_parts;
    for (MapPiece& piece : pieces) {
        const Interval& d = piece.domain;
        if (d.lo_inf || d.hi_inf || d.empty() || d.degenerate())
            throw RepresentationError("piece domain must be a bounded nonempty open interval");
        if (piece.nodes.size() < 2)
            throw RepresentationError("piece needs at least two nodes");
        if (piece.nodes.front().x != d.lo || piece.nodes.back().x != d.hi)
            throw RepresentationError("piece nodes must span the domain closure");
        for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
            if (!(piece.nodes[i].x < piece.nodes[i + 1].x))
                throw RepresentationError("node abscissae must strictly increase");
        }
        if (codomain == Space::unit_interval) {
            for (const MapNode& node : piece.nodes) {
                if (node.y < 0 || node.y > 1)
                    throw RepresentationError("value " + rational_to_string(node.y) +
                                              " outside the unit interval codomain");
            }
        }
        piece.nodes = drop_collinear(std::move(piece.nodes));
        domain_parts.push_back(d);
    }
    IntervalSet dom(space, domain_parts);
    if (dom.components().size() != pieces.size())
        throw RepresentationError("piece domains must be disjoint, non-mergeable and inside the space");
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (!(dom.components()[i] == pieces[i].domain))
            throw RepresentationError("piece domain not in canonical form: " +
                                      IntervalSet(space, {pieces[i].domain}).str());
    }
    domain_ = OpenSet(std::move(dom));
    pieces_ = std::move(pieces);
}

PartialMap PartialMap::empty(Space space, Space codomain) {
    return PartialMap(space, codomain, {});
}

PartialMap PartialMap::identity_on(const OpenSet& dom) {
    return affine_on(dom, Rational(1), Rational(0), dom.space());
}

PartialMap PartialMap::constant_on(const OpenSet& dom, const Rational& value, Space codomain) {
    return affine_on(dom, Rational(0), value, codomain);
}

PartialMap PartialMap::affine_on(const OpenSet& dom, const Rational& a, const Rational& b,
                                 Space codomain) {
    std::vector<MapPiece> pieces;
    for (const Interval& c : dom.components()) {
        MapPiece piece;
        piece.domain = c;
        piece.nodes = {{c.lo, Rational(a * c.lo + b)}, {c.hi, Rational(a * c.hi + b)}};
        pieces.push_back(std::move(piece));
    }
    return PartialMap(dom.space(), codomain, std::move(pieces));
}

bool PartialMap::defined_at(const Rational& x) const {
    return domain_.set().contains(x);
}

Rational PartialMap::evaluate(const Rational& x) const {
    for (const MapPiece& piece : pieces_) {
        if (!piece.domain.contains(x)) continue;
        return detail::piece_closure_value(piece, x);
    }
    throw DomainError("x = " + rational_to_string(x) + " outside the domain");
}

IntervalSet PartialMap::image() const {
    std::vector<Interval> parts;
    for (const MapPiece& piece : pieces_) {
        for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
            const Interval span = segment_span(piece, i);
            const Rational& y0 = piece.nodes[i].y;
            const Rational& y1 = piece.nodes[i + 1].y;
            if (y0 == y1) {
                parts.push_back(Interval::point(y0));
            } else if (y0 < y1) {
                parts.push_back(Interval::with_flags(y0, y1, span.lo_open, span.hi_open));
            } else {
                parts.push_back(Interval::with_flags(y1, y0, span.hi_open, span.lo_open));
            }
        }
    }
    return IntervalSet(codomain_, std::move(parts));
}

CompactSet PartialMap::image_on(const CompactSet& k) const {
    require_same_space(space_, k.space(), "image_on");
    if (!subset(k.set(), domain_.set())) {
        const auto missing = difference(k.set(), domain_.set()).some_point();
        throw DomainError("compact set not inside the domain; uncovered point " +
                          rational_to_string(missing.value()));
    }
    std::vector<Interval> parts;
    for (const Interval& c : k.components()) {
        if (c.degenerate()) {
            parts.push_back(Interval::point(evaluate(c.lo)));
            continue;
        }
        std::vector<Rational> xs{c.lo};
        for (const MapPiece& piece : pieces_) {
            for (const MapNode& node : piece.nodes) {
                if (node.x > c.lo && node.x < c.hi) xs.push_back(node.x);
            }
        }
        xs.push_back(c.hi);
        std::sort(xs.begin(), xs.end());
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const Rational a = evaluate(xs[i]);
            const Rational b = evaluate(xs[i + 1]);
            parts.push_back(a <= b ? Interval::closed(a, b) : Interval::closed(b, a));
        }
    }
    return CompactSet(IntervalSet(codomain_, std::move(parts)));
}

IntervalSet PartialMap::preimage(const IntervalSet& target) const {
    require_same_space(codomain_, target.space(), "preimage");
    std::vector<Interval> parts;
    for (const MapPiece& piece : pieces_) {
        for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
            const Interval span = segment_span(piece, i);
            const Rational& y0 = piece.nodes[i].y;
            const Rational s = segment_slope(piece, i);
            if (s == 0) {
                if (target.contains(y0)) parts.push_back(span);
                continue;
            }
            const Rational& x0 = piece.nodes[i].x;
            auto pull_back = [&](bool inf, const Rational& y, bool open) {
                struct End {
                    bool inf;
                    Rational x;
                    bool open;
                };
                return inf ? End{true, Rational(0), true}
                           : End{false, Rational(x0 + (y - y0) / s), open};
            };
            for (const Interval& t : target.components()) {
                const auto lo_end = pull_back(t.lo_inf, t.lo, t.lo_open);
                const auto hi_end = pull_back(t.hi_inf, t.hi, t.hi_open);
                Interval pulled;
                if (s > 0) {
                    pulled.lo_inf = lo_end.inf;
                    pulled.lo = lo_end.x;
                    pulled.lo_open = lo_end.open;
                    pulled.hi_inf = hi_end.inf;
                    pulled.hi = hi_end.x;
                    pulled.hi_open = hi_end.open;
                } else {
                    pulled.lo_inf = hi_end.inf;
                    pulled.lo = hi_end.x;
                    pulled.lo_open = hi_end.open;
                    pulled.hi_inf = lo_end.inf;
                    pulled.hi = lo_end.x;
                    pulled.hi_open = lo_end.open;
                }
                const Interval clipped = intersect_intervals(pulled, span);
                if (!clipped.empty()) parts.push_back(clipped);
            }
        }
    }
    return IntervalSet(space_, std::move(parts));
}

IntervalSet PartialMap::preimage(const CompactSet& k) const { return preimage(k.set()); }

Rational PartialMap::max_slope_on(const CompactSet& k) const {
    require_same_space(space_, k.space(), "max_slope_on");
    Rational best(0);
    for (const MapPiece& piece : pieces_) {
        for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
            const Interval closed_span =
                Interval::closed(piece.nodes[i].x, piece.nodes[i + 1].x);
            if (!intersects(IntervalSet(space_, {closed_span}), k.set())) continue;
            const Rational s = abs_value(segment_slope(piece, i));
            if (s > best) best = s;
        }
    }
    return best;
}

PartialMap compose(const PartialMap& f, const PartialMap& g) {
    require_same_space(f.space(), g.codomain(), "compose");
    if (f.is_empty() || g.is_empty()) return PartialMap::empty(g.space(), f.codomain());
    const IntervalSet dom_h = g.preimage(f.domain().set());
    if (dom_h.empty()) return PartialMap::empty(g.space(), f.codomain());

    std::vector<Rational> f_breaks;
    for (const MapPiece& piece : f.pieces())
        for (const MapNode& node : piece.nodes) f_breaks.push_back(node.x);

    std::vector<MapPiece> pieces;
    for (const Interval& comp : dom_h.components()) {
        std::set<Rational> cuts{comp.lo, comp.hi};
        for (const MapPiece& piece : g.pieces()) {
            for (const MapNode& node : piece.nodes)
                if (node.x > comp.lo && node.x < comp.hi) cuts.insert(node.x);
            for (std::size_t i = 0; i + 1 < piece.nodes.size(); ++i) {
                const Rational s = segment_slope(piece, i);
                if (s == 0) continue;
                for (const Rational& fb : f_breaks) {
                    const Rational x = piece.nodes[i].x + (fb - piece.nodes[i].y) / s;
                    if (x >= piece.nodes[i].x && x <= piece.nodes[i + 1].x && x > comp.lo &&
                        x < comp.hi)
                        cuts.insert(x);
                }
            }
        }
        const std::vector<Rational> xs(cuts.begin(), cuts.end());
        MapPiece out;
        out.domain = comp;
        for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
            const Rational mid = (xs[i] + xs[i + 1]) / 2;
            const MapPiece* gp = nullptr;
            for (const MapPiece& piece : g.pieces())
                if (piece.domain.contains(mid)) gp = &piece;
            const auto [sg, cg] = detail::piece_coefficients_at(*gp, mid);
            Rational slope, intercept;
            if (sg == 0) {
                slope = 0;
                intercept = f.evaluate(cg);
            } else {
                const Rational y_mid = sg * mid + cg;
                const MapPiece* fp = nullptr;
                for (const MapPiece& piece : f.pieces())
                    if (piece.domain.contains(y_mid)) fp = &piece;
                const auto [sf, cf] = detail::piece_coefficients_at(*fp, y_mid);
                slope = sf * sg;
                intercept = sf * cg + cf;
            }
            if (i == 0) out.nodes.push_back({xs[i], Rational(slope * xs[i] + intercept)});
            out.nodes.push_back({xs[i + 1], Rational(slope * xs[i + 1] + intercept)});
        }
        pieces.push_back(std::move(out));
    }
    return PartialMap(g.space(), f.codomain(), std::move(pieces));
}

PartialMap restrict_to(const PartialMap& f, const OpenSet& u) {
    require_same_space(f.space(), u.space(), "restrict_to");
    const IntervalSet dom = intersect(f.domain().set(), u.set());
    std::vector<MapPiece> pieces;
    for (const Interval& comp : dom.components()) {
        const Rational mid = (comp.lo + comp.hi) / 2;
        const MapPiece* src = nullptr;
        for (const MapPiece& piece : f.pieces())
            if (piece.domain.contains(mid)) src = &piece;
        MapPiece out;
        out.domain = comp;
        out.nodes.push_back({comp.lo, detail::piece_closure_value(*src, comp.lo)});
        for (const MapNode& node : src->nodes)
            if (node.x > comp.lo && node.x < comp.hi) out.nodes.push_back(node);
        out.nodes.push_back({comp.hi, detail::piece_closure_value(*src, comp.hi)});
        pieces.push_back(std::move(out));
    }
    return PartialMap(f.space(), f.codomain(), std::move(pieces));
}

namespace {

// Finds a point strictly inside (u, v) where the two maps take different
// values; the difference is linear on the cell, so one of two interior
// probes must differ when the cell disagrees anywhere.
std::optional<Rational> cell_disagreement(const PartialMap& a, const PartialMap& b,
                                          const Rational& u, const Rational& v) {
    for (int third : {1, 2}) {
        const Rational w = u + (v - u) * third / 3;
        if (a.evaluate(w) != b.evaluate(w)) return w;
    }
    return std::nullopt;
}

} // namespace

PartialMap join(const std::vector<PartialMap>& maps) {
    if (maps.empty()) throw PreconditionError("join needs at least one map");
    const Space space = maps.front().space();
    const Space codomain = maps.front().codomain();
    for (const PartialMap& f : maps) {
        require_same_space(space, f.space(), "join");
        require_same_space(codomain, f.codomain(), "join codomain");
    }
    // Pairwise agreement on overlaps.
    for (std::size_t i = 0; i < maps.size(); ++i) {
        for (std::size_t j = i + 1; j < maps.size(); ++j) {
            const IntervalSet overlap = intersect(maps[i].domain().set(), maps[j].domain().set());
            for (const Interval& comp : overlap.components()) {
                std::set<Rational> cuts{comp.lo, comp.hi};
                for (const PartialMap* m : {&maps[i], &maps[j]})
                    for (const MapPiece& piece : m->pieces())
                        for (const MapNode& node : piece.nodes)
                            if (node.x > comp.lo && node.x < comp.hi) cuts.insert(node.x);
                const std::vector<Rational> xs(cuts.begin(), cuts.end());
                auto closure_value = [&](const PartialMap& m, const Rational& x) {
                    for (const MapPiece& piece : m.pieces()) {
                        if (piece.nodes.front().x <= x && x <= piece.nodes.back().x &&
                            !intersect_intervals(piece.domain, comp).empty())
                            return detail::piece_closure_value(piece, x);
                    }
                    throw DomainError("overlap point outside both maps");
                };
                for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
                    const bool lo_differs =
                        closure_value(maps[i], xs[k]) != closure_value(maps[j], xs[k]);
                    const bool hi_differs =
                        closure_value(maps[i], xs[k + 1]) != closure_value(maps[j], xs[k + 1]);
                    if (!lo_differs && !hi_differs) continue;
                    const auto witness = cell_disagreement(maps[i], maps[j], xs[k], xs[k + 1]);
                    if (witness)
                        throw IncompatibilityError(
                            "maps disagree at x = " + rational_to_string(*witness),
                            rational_to_string(*witness));
                }
            }
        }
    }
    // Assemble the union function.
    IntervalSet dom = IntervalSet::empty_set(space);
    for (const PartialMap& f : maps) dom = unite(dom, f.domain().set());
    std::vector<MapPiece> pieces;
    for (const Interval& comp : dom.components()) {
        std::set<Rational> cuts{comp.lo, comp.hi};
        for (const PartialMap& f : maps)
            for (const MapPiece& piece : f.pieces())
                for (const MapNode& node : piece.nodes)
                    if (node.x > comp.lo && node.x < comp.hi) cuts.insert(node.x);
        const std::vector<Rational> xs(cuts.begin(), cuts.end());
        auto value_near = [&](const Rational& x, const Rational& probe) {
            for (const PartialMap& f : maps) {
                if (!f.defined_at(probe)) continue;
                for (const MapPiece& piece : f.pieces())
                    if (piece.domain.contains(probe) && piece.nodes.front().x <= x &&
                        x <= piece.nodes.back().x)
                        return detail::piece_closure_value(piece, x);
            }
            throw DomainError("union domain not covered near " + rational_to_string(x));
        };
        MapPiece out;
        out.domain = comp;
        out.nodes.push_back({xs.front(), value_near(xs.front(), (xs[0] + xs[1]) / 2)});
        for (std::size_t k = 1; k + 1 < xs.size(); ++k)
            out.nodes.push_back({xs[k], value_near(xs[k], xs[k])});
        out.nodes.push_back(
            {xs.back(), value_near(xs.back(), (xs[xs.size() - 2] + xs.back()) / 2)});
        pieces.push_back(std::move(out));
    }
    return PartialMap(space, codomain, std::move(pieces));
}

bool equal(const PartialMap& f, const PartialMap& g) {
    require_same_space(f.space(), g.space(), "equal");
    require_same_space(f.codomain(), g.codomain(), "equal codomain");
    return f == g;
}

GammaMap::GammaMap(PartialMap base)
    : base_(std::move(base)), image_(OpenSet::empty_set(base_.space())) {
    require_same_space(base_.space(), base_.codomain(), "GammaMap");
    if (const auto witness = injectivity_witness(base_)) {
        throw InjectivityError("map is not injective: equal values at x = " +
                                   rational_to_string(witness->a) + " and x = " +
                                   rational_to_string(witness->b),
                               rational_to_string(witness->a), rational_to_string(witness->b));
    }
    IntervalSet img = base_.image();
    if (!img.is_open())
        throw RepresentationError("image is not relatively open: " + img.str());
    image_ = OpenSet(std::move(img));
}

GammaMap invert(const PartialMap& f) {
    GammaMap gamma(f); // validates injectivity and open image
    std::vector<MapPiece> pieces;
    for (const MapPiece& piece : f.pieces()) {
        MapPiece inv;
        inv.domain = monotone_piece_image(piece);
        const bool increasing = piece.nodes.front().y < piece.nodes.back().y;
        if (increasing) {
            for (const MapNode& node : piece.nodes) inv.nodes.push_back({node.y, node.x});
        } else {
            for (auto it = piece.nodes.rbegin(); it != piece.nodes.rend(); ++it)
                inv.nodes.push_back({it->y, it->x});
        }
        pieces.push_back(std::move(inv));
    }
    return GammaMap(PartialMap(f.codomain(), f.space(), std::move(pieces)));
}

GammaMap invert(const GammaMap& f) { return invert(f.base()); }

} // namespace codmetric
