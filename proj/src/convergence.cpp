#include "codmetric/convergence.hpp"

#include <algorithm>
#include <cctype>

namespace codmetric {

// --------------------------------------------------------------------------
// RationalExpr

struct RationalExpr::Node {
    enum class Kind { constant, variable, add, sub, mul, div, neg };
    Kind kind;
    Rational value; // constant
    std::shared_ptr<const Node> lhs, rhs;
};

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    std::shared_ptr<const RationalExpr::Node> parse() {
        auto node = expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("trailing input in expression '" + text_ + "'");
        return node;
    }

private:
    using NodePtr = std::shared_ptr<const RationalExpr::Node>;
    using Kind = RationalExpr::Node::Kind;

    NodePtr make(Kind kind, NodePtr lhs = {}, NodePtr rhs = {}) {
        auto node = std::make_shared<RationalExpr::Node>();
        node->kind = kind;
        node->lhs = std::move(lhs);
        node->rhs = std::move(rhs);
        return node;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr() {
        NodePtr node = term();
        for (;;) {
            if (eat('+'))
                node = make(Kind::add, node, term());
            else if (eat('-'))
                node = make(Kind::sub, node, term());
            else
                return node;
        }
    }

    NodePtr term() {
        NodePtr node = unary();
        for (;;) {
            if (eat('*'))
                node = make(Kind::mul, node, unary());
            else if (eat('/'))
                node = make(Kind::div, node, unary());
            else
                return node;
        }
    }

    NodePtr unary() {
        if (eat('-')) return make(Kind::neg, unary());
        return primary();
    }

    NodePtr primary() {
        skip_ws();
        if (eat('(')) {
            NodePtr node = expr();
            if (!eat(')')) throw ParseError("missing ')' in expression '" + text_ + "'");
            return node;
        }
        if (pos_ < text_.size() && text_[pos_] == 'n') {
            ++pos_;
            return make(Kind::variable);
        }
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start) throw ParseError("unexpected input in expression '" + text_ + "'");
        auto node = std::make_shared<RationalExpr::Node>();
        node->kind = Kind::constant;
        node->value = Rational(BigInt(text_.substr(start, pos_ - start)));
        return node;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

Rational eval_node(const RationalExpr::Node& node, const Rational& n) {
    using Kind = RationalExpr::Node::Kind;
    switch (node.kind) {
    case Kind::constant: return node.value;
    case Kind::variable: return n;
    case Kind::neg: return Rational(-eval_node(*node.lhs, n));
    case Kind::add: return Rational(eval_node(*node.lhs, n) + eval_node(*node.rhs, n));
    case Kind::sub: return Rational(eval_node(*node.lhs, n) - eval_node(*node.rhs, n));
    case Kind::mul: return Rational(eval_node(*node.lhs, n) * eval_node(*node.rhs, n));
    case Kind::div: {
        const Rational d = eval_node(*node.rhs, n);
        if (d == 0) throw PreconditionError("expression divides by zero");
        return Rational(eval_node(*node.lhs, n) / d);
    }
    }
    throw Error("unreachable expression kind");
}

} // namespace

RationalExpr RationalExpr::parse(const std::string& text) {
    RationalExpr e;
    e.root_ = ExprParser(text).parse();
    e.text_ = text;
    return e;
}

Rational RationalExpr::eval(std::uint64_t n) const {
    if (!root_) throw Error("empty expression");
    return eval_node(*root_, Rational(BigInt(n)));
}

// --------------------------------------------------------------------------
// SequenceSpec

namespace {

// Interval from lo to hi, relatively open: an endpoint is included exactly
// when it sits on the boundary of the unit interval.
Interval relative_open_interval(const Rational& lo, const Rational& hi, Space space) {
    if (!(lo < hi))
        throw PreconditionError("degenerate domain interval [" + rational_to_string(lo) + ", " +
                                rational_to_string(hi) + "]");
    Interval d = Interval::open(lo, hi);
    if (space == Space::unit_interval) {
        if (lo == 0) d.lo_open = false;
        if (hi == 1) d.hi_open = false;
    }
    return d;
}

std::vector<std::string> split_top_level(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace

SequenceSpec SequenceSpec::counterexample() {
    SequenceSpec spec =
        affine(RationalExpr::parse("n"), RationalExpr::parse("0"), RationalExpr::parse("0"),
               RationalExpr::parse("1/n"), Space::unit_interval);
    spec.name_ = "counterexample";
    return spec;
}

SequenceSpec SequenceSpec::counterexample_inverse() {
    SequenceSpec spec =
        affine(RationalExpr::parse("1/n"), RationalExpr::parse("0"), RationalExpr::parse("0"),
               RationalExpr::parse("1"), Space::unit_interval);
    spec.name_ = "counterexample-inverse";
    return spec;
}

SequenceSpec SequenceSpec::constant(PartialMap f, std::string label) {
    const Space space = f.space();
    return SequenceSpec(std::move(label), space,
                        [f = std::move(f)](std::uint64_t) { return f; });
}

SequenceSpec SequenceSpec::affine(RationalExpr a, RationalExpr b, RationalExpr lo, RationalExpr hi,
                                  Space space) {
    std::string label = "affine:a=" + a.text() + ",b=" + b.text() + ",dom=(" + lo.text() + "," +
                        hi.text() + "),space=" + space_name(space);
    auto gen = [a, b, lo, hi, space](std::uint64_t n) {
        const Interval d = relative_open_interval(lo.eval(n), hi.eval(n), space);
        const OpenSet dom(IntervalSet(space, {d}));
        return PartialMap::affine_on(dom, a.eval(n), b.eval(n), space);
    };
    return SequenceSpec(std::move(label), space, std::move(gen));
}

PartialMap SequenceSpec::at(std::uint64_t n) const {
    if (n == 0) throw PreconditionError("sequence index must be >= 1");
    return gen_(n);
}

SequenceSpec SequenceSpec::parse(const std::string& text,
                                 const std::function<PartialMap(const std::string&)>& load_map) {
    const std::string trimmed = trim(text);
    const auto colon = trimmed.find(':');
    const std::string family = trim(trimmed.substr(0, colon));
    if (family == "counterexample") return counterexample();
    if (family == "counterexample-inverse") return counterexample_inverse();
    if (family == "constant") {
        if (colon == std::string::npos) throw ParseError("constant sequence needs a file path");
        if (!load_map) throw ParseError("no loader available for constant sequence files");
        const std::string path = trim(trimmed.substr(colon + 1));
        return constant(load_map(path), "constant:" + path);
    }
    if (family == "affine") {
        if (colon == std::string::npos)
            throw ParseError("affine sequence needs parameters, e.g. affine:a=n,b=0,dom=(0,1)");
        std::optional<RationalExpr> a, b, lo, hi;
        Space space = Space::reals;
        for (const std::string& raw : split_top_level(trimmed.substr(colon + 1), ',')) {
            const std::string part = trim(raw);
            if (part.empty()) continue;
            const auto eq = part.find('=');
            if (eq == std::string::npos) throw ParseError("bad affine parameter '" + part + "'");
            std::string key = trim(part.substr(0, eq));
            const std::string value = trim(part.substr(eq + 1));
            if (key == "a" || key == "a(n)")
                a = RationalExpr::parse(value);
            else if (key == "b" || key == "b(n)")
                b = RationalExpr::parse(value);
            else if (key == "domain_lo")
                lo = RationalExpr::parse(value);
            else if (key == "domain_hi")
                hi = RationalExpr::parse(value);
            else if (key == "space")
                space = parse_space(value);
            else if (key == "dom") {
                if (value.size() < 2 || value.front() != '(' || value.back() != ')')
                    throw ParseError("dom expects (LO,HI), got '" + value + "'");
                const auto ends = split_top_level(value.substr(1, value.size() - 2), ',');
                if (ends.size() != 2) throw ParseError("dom expects two endpoints");
                lo = RationalExpr::parse(trim(ends[0]));
                hi = RationalExpr::parse(trim(ends[1]));
            } else {
                throw ParseError("unknown affine parameter '" + key + "'");
            }
        }
        if (!a || !b || !lo || !hi)
            throw ParseError("affine sequence needs a, b and a domain");
        return affine(*a, *b, *lo, *hi, space);
    }
    throw ParseError("unknown sequence family '" + family + "'");
}

GammaMap counterexample_gamma(std::uint64_t n) {
    return GammaMap(SequenceSpec::counterexample().at(n));
}

PartialMap zero_map_unit() {
    const OpenSet dom(IntervalSet(
        Space::unit_interval, {relative_open_interval(Rational(0), Rational(1), Space::unit_interval)}));
    return PartialMap::constant_on(dom, Rational(0), Space::unit_interval);
}

// --------------------------------------------------------------------------
// Reports

std::string verdict_name(Verdict v) {
    switch (v) {
    case Verdict::holds_on_prefix: return "holds-on-prefix";
    case Verdict::fails_with_witness: return "fails-with-witness";
    case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

CauchyReport beta_decay_report(const SequenceSpec& seq, const PartialMap& target,
                               const std::vector<std::uint64_t>& indices, const Rational& tol) {
    if (indices.empty()) throw PreconditionError("index list must be nonempty");
    if (!std::is_sorted(indices.begin(), indices.end()))
        throw PreconditionError("index list must be ascending");
    const TruncationPlan plan = TruncationPlan::for_tolerance(tol);
    CauchyReport report;
    report.sequence = seq.name();
    report.indices = indices;
    for (std::uint64_t i : indices)
        report.rows.push_back({i, beta(seq.at(i), target, plan)});
    report.all_rows_decreasing = true;
    for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) {
        const bool dec = report.rows[k + 1].value.hi < report.rows[k].value.hi;
        report.hi_strictly_decreasing.push_back(dec);
        report.all_rows_decreasing = report.all_rows_decreasing && dec;
    }
    report.overall = Verdict::holds_on_prefix;
    return report;
}

namespace {

std::vector<std::pair<std::uint64_t, std::uint64_t>> signature_cells(std::uint64_t max_sum) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> cells;
    for (std::uint64_t s = 2; s <= max_sum; ++s)
        for (std::uint64_t m = 1; m + 1 <= s; ++m) cells.emplace_back(m, s - m);
    return cells;
}

} // namespace

CauchyReport gamma_cauchy_check(const SequenceSpec& seq, std::uint64_t prefix_len,
                                const std::vector<CompactSet>& compacts, const Rational& tol,
                                const GammaCauchyOptions& options) {
    if (prefix_len < 2) throw PreconditionError("prefix length must be >= 2");
    const TruncationPlan plan = TruncationPlan::for_tolerance(tol);
    CauchyReport report;
    report.sequence = seq.name();

    std::vector<PartialMap> maps;
    std::vector<ClosedSet> complements;
    for (std::uint64_t i = 1; i <= prefix_len; ++i) {
        report.indices.push_back(i);
        maps.push_back(seq.at(i));
        complements.push_back(complement_of_domain(maps.back()));
    }

    // Hit/miss signatures of the domain complements over a bounded grid.
    const auto cells = signature_cells(options.signature_index_sum);
    const Space space = seq.space();
    std::vector<std::vector<bool>> signatures;
    for (const ClosedSet& a : complements) {
        std::vector<bool> sig;
        sig.reserve(cells.size());
        for (const auto& [m, n] : cells) {
            const OpenSet& probe = exhaustion_interior(m + 1, n, space);
            sig.push_back(!subset(probe.set(), a.complement().set()));
        }
        signatures.push_back(std::move(sig));
    }
    std::size_t stable_start = signatures.size() - 1;
    while (stable_start > 0 && signatures[stable_start - 1] == signatures.back()) --stable_start;
    report.signature_stabilized = stable_start + 1 < signatures.size();
    if (report.signature_stabilized) {
        report.stable_from = report.indices[stable_start];
        report.stable_signature_all_hits =
            std::all_of(signatures.back().begin(), signatures.back().end(),
                        [](bool hit) { return hit; });
        if (report.stable_signature_all_hits)
            report.note = "domain-complement signature stabilized to all-hit; "
                          "consistent with convergence of the maps to the empty function";
    }

    // d_Fell rows against the supplied candidate, or the last complement
    // once the signature has stabilized.
    if (options.candidate) {
        for (std::size_t k = 0; k < complements.size(); ++k)
            report.rows.push_back(
                {report.indices[k], d_fell(complements[k], *options.candidate, plan)});
    } else if (report.signature_stabilized) {
        for (std::size_t k = 0; k < complements.size(); ++k)
            report.rows.push_back(
                {report.indices[k], d_fell(complements[k], complements.back(), plan)});
    }

    // Per-compact eventual coverage and uniform-Cauchy evidence.
    for (const CompactSet& k : compacts) {
        CompactDiagnostics diag{k, std::nullopt, {}, Verdict::inconclusive, ""};
        std::vector<bool> covered;
        for (const PartialMap& f : maps) covered.push_back(subset(k.set(), f.domain().set()));
        std::size_t first_tail = covered.size();
        for (std::size_t t = covered.size(); t-- > 0;) {
            if (!covered[t]) break;
            first_tail = t;
        }
        if (first_tail == covered.size()) {
            std::size_t last_bad = covered.size() - 1;
            const auto point =
                difference(k.set(), maps[last_bad].domain().set()).some_point();
            diag.verdict = Verdict::fails_with_witness;
            diag.note = "compact set not inside dom(f_" +
                        std::to_string(report.indices[last_bad]) + "); uncovered point " +
                        rational_to_string(point.value());
        } else {
            diag.covered_from = report.indices[first_tail];
            const std::size_t tail_len = covered.size() - first_tail;
            for (std::size_t a = first_tail; a < maps.size(); ++a)
                for (std::size_t b = a + 1; b < maps.size(); ++b)
                    diag.pairwise.push_back({report.indices[a], report.indices[b],
                                             sup_distance(maps[a], maps[b], k)});
            if (tail_len < 3) {
                diag.note = "fewer than three covered indices";
            } else {
                const std::size_t mid = first_tail + tail_len / 2;
                Rational diam_all(0), diam_late(0);
                for (const auto& p : diag.pairwise) {
                    if (p.sup > diam_all) diam_all = p.sup;
                    if (p.i >= report.indices[mid] && p.sup > diam_late) diam_late = p.sup;
                }
                if (diam_all == 0 || diam_late < diam_all)
                    diag.verdict = Verdict::holds_on_prefix;
                else
                    diag.note = "pairwise sup distances show no contraction on this prefix";
            }
        }
        report.compacts.push_back(std::move(diag));
    }

    bool any_fail = false, all_hold = true;
    for (const CompactDiagnostics& diag : report.compacts) {
        any_fail = any_fail || diag.verdict == Verdict::fails_with_witness;
        all_hold = all_hold && diag.verdict == Verdict::holds_on_prefix;
    }
    if (any_fail)
        report.overall = Verdict::fails_with_witness;
    else if (report.signature_stabilized && all_hold)
        report.overall = Verdict::holds_on_prefix;
    else
        report.overall = Verdict::inconclusive;
    return report;
}

LimitCandidate limit_candidate(const SequenceSpec& seq, const CompactSet& k,
                               std::uint64_t at_index, const Rational& mesh) {
    if (mesh <= 0) throw PreconditionError("mesh must be positive");
    const PartialMap f = seq.at(at_index);
    if (!subset(k.set(), f.domain().set())) {
        const auto missing = difference(k.set(), f.domain().set()).some_point();
        throw DomainError("compact set not covered at index " + std::to_string(at_index) +
                          "; uncovered point " + rational_to_string(missing.value()));
    }
    std::vector<MapPiece> pieces;
    const IntervalSet inner = k.set().interior();
    for (const Interval& comp : inner.components()) {
        MapPiece piece;
        piece.domain = comp;
        Rational x = comp.lo;
        while (x < comp.hi) {
            piece.nodes.push_back({x, f.evaluate(x)});
            x += mesh;
        }
        piece.nodes.push_back({comp.hi, f.evaluate(comp.hi)});
        pieces.push_back(std::move(piece));
    }
    LimitCandidate out{PartialMap(f.space(), f.codomain(), std::move(pieces)),
                       Rational(f.max_slope_on(k) * mesh), false};
    if (at_index >= 2) {
        const PartialMap prev = seq.at(at_index - 1);
        if (subset(k.set(), prev.domain().set())) {
            out.bound += sup_distance(prev, f, k);
            out.tail_term_included = true;
        }
    }
    return out;
}

CauchyReport inverse_limit_check(const SequenceSpec& seq, const PartialMap& f_cand,
                                 const PartialMap& g_cand, const std::vector<CompactSet>& compacts,
                                 const std::vector<std::uint64_t>& indices) {
    require_same_space(f_cand.space(), f_cand.codomain(), "inverse_limit_check");
    require_same_space(g_cand.space(), g_cand.codomain(), "inverse_limit_check");
    require_same_space(f_cand.space(), g_cand.space(), "inverse_limit_check");
    if (!subset(f_cand.image(), g_cand.domain().set())) {
        const auto point = difference(f_cand.image(), g_cand.domain().set()).some_point();
        throw PreconditionError("hypothesis im(f) inside dom(g) fails at y = " +
                                rational_to_string(point.value()));
    }
    if (!subset(g_cand.image(), f_cand.domain().set())) {
        const auto point = difference(g_cand.image(), f_cand.domain().set()).some_point();
        throw PreconditionError("hypothesis im(g) inside dom(f) fails at y = " +
                                rational_to_string(point.value()));
    }

    CauchyReport report;
    report.sequence = seq.name();
    report.indices = indices;
    report.left_identity =
        equal(compose(g_cand, f_cand), PartialMap::identity_on(f_cand.domain()));
    report.right_identity =
        equal(compose(f_cand, g_cand), PartialMap::identity_on(g_cand.domain()));

    for (std::uint64_t n : indices) {
        const PartialMap fn = seq.at(n);
        std::optional<PartialMap> fn_inv;
        try {
            fn_inv = invert(fn).base();
        } catch (const Error&) {
            // Non-invertible element; inverse-side rows stay uncovered.
        }
        for (std::size_t ci = 0; ci < compacts.size(); ++ci) {
            const CompactSet& k = compacts[ci];
            CauchyReport::DecayEntry direct{n, ci, false, false, Rational(0)};
            if (subset(k.set(), fn.domain().set()) &&
                subset(k.set(), f_cand.domain().set())) {
                direct.covered = true;
                direct.sup = sup_distance(fn, f_cand, k);
            }
            report.decay.push_back(direct);
            CauchyReport::DecayEntry inverse{n, ci, true, false, Rational(0)};
            if (fn_inv && subset(k.set(), fn_inv->domain().set()) &&
                subset(k.set(), g_cand.domain().set())) {
                inverse.covered = true;
                inverse.sup = sup_distance(*fn_inv, g_cand, k);
            }
            report.decay.push_back(inverse);
        }
    }
    if (*report.left_identity && *report.right_identity) {
        report.overall = Verdict::holds_on_prefix;
    } else {
        report.overall = Verdict::fails_with_witness;
        report.note = "candidate maps do not invert each other exactly";
    }
    return report;
}

} // namespace codmetric
