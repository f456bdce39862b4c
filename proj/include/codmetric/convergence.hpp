#pragma once

#include "codmetric/hyperspace.hpp"
#include "codmetric/metric.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace codmetric {

/// Arithmetic expression in one positive-integer variable n, evaluated
/// exactly. Supports + - * /, parentheses, integer literals and 'n'.
class RationalExpr {
public:
    static RationalExpr parse(const std::string& text);
    Rational eval(std::uint64_t n) const;
    const std::string& text() const { return text_; }

private:
    struct Node;
    std::shared_ptr<const Node> root_;
    std::string text_;
};

/// Deterministic generator of one partial map per index n >= 1.
class SequenceSpec {
public:
    /// n x on [0, 1/n) over the unit interval.
    static SequenceSpec counterexample();
    /// x / n on [0, 1) over the unit interval.
    static SequenceSpec counterexample_inverse();
    static SequenceSpec constant(PartialMap f, std::string label = "constant");
    /// a(n) x + b(n) on the interval from lo(n) to hi(n), relatively open
    /// in `space`: an endpoint is included exactly when it coincides with
    /// the ambient boundary of the unit interval.
    static SequenceSpec affine(RationalExpr a, RationalExpr b, RationalExpr lo, RationalExpr hi,
                               Space space);

    /// Text forms: "counterexample", "counterexample-inverse",
    /// "constant:PATH" (PATH resolved through load_map), and
    /// "affine:a=EXPR,b=EXPR,dom=(LO,HI)[,space=NAME]" with
    /// "domain_lo="/"domain_hi=" accepted in place of dom=().
    static SequenceSpec parse(const std::string& text,
                              const std::function<PartialMap(const std::string&)>& load_map = {});

    PartialMap at(std::uint64_t n) const;
    const std::string& name() const { return name_; }
    Space space() const { return space_; }

private:
    SequenceSpec(std::string name, Space space, std::function<PartialMap(std::uint64_t)> gen)
        : name_(std::move(name)), space_(space), gen_(std::move(gen)) {}

    std::string name_;
    Space space_;
    std::function<PartialMap(std::uint64_t)> gen_;
};

/// The paper-style counterexample family as partial homeomorphisms.
GammaMap counterexample_gamma(std::uint64_t n);
/// The constant-zero map on [0, 1), the beta-limit of the inverse family.
PartialMap zero_map_unit();

enum class Verdict { holds_on_prefix, fails_with_witness, inconclusive };
std::string verdict_name(Verdict v);

struct IndexedEnclosure {
    std::uint64_t index;
    Enclosure value;
};

/// Per-compact convergence evidence inside a CauchyReport.
struct CompactDiagnostics {
    CompactSet k;
    /// Least index from which K lies inside every later prefix domain.
    std::optional<std::uint64_t> covered_from;
    struct PairSup {
        std::uint64_t i, j;
        Rational sup;
    };
    std::vector<PairSup> pairwise; // over the covered tail
    Verdict verdict = Verdict::inconclusive;
    std::string note;
};

/// Union report type for the sequence diagnostics; sections unused by an
/// operation stay empty. Every numeric entry is exact or an enclosure.
struct CauchyReport {
    std::string sequence;
    std::vector<std::uint64_t> indices;

    std::vector<IndexedEnclosure> rows;       // distance-to-target table
    std::vector<bool> hi_strictly_decreasing; // rows[k+1].hi < rows[k].hi
    bool all_rows_decreasing = false;

    bool signature_stabilized = false;
    std::uint64_t stable_from = 0;          // first index of the stable tail
    bool stable_signature_all_hits = false; // consistent with the empty-function limit

    std::vector<CompactDiagnostics> compacts;

    std::optional<bool> left_identity;  // g∘f equals id on dom(f)
    std::optional<bool> right_identity; // f∘g equals id on dom(g)
    struct DecayEntry {
        std::uint64_t index;
        std::size_t compact_index;
        bool inverse_side;
        bool covered;
        Rational sup; // meaningful when covered
    };
    std::vector<DecayEntry> decay;

    Verdict overall = Verdict::inconclusive;
    std::string note;
};

/// Table of beta(f_n, target) enclosures with monotonicity flags on the
/// upper endpoints.
CauchyReport beta_decay_report(const SequenceSpec& seq, const PartialMap& target,
                               const std::vector<std::uint64_t>& indices, const Rational& tol);

struct GammaCauchyOptions {
    std::uint64_t signature_index_sum = 12; // scan cells with m+n <= this
    std::optional<ClosedSet> candidate;     // supplied Fell limit candidate
};

/// Prefix-level gamma-Cauchy diagnosis: Fell hit/miss signature
/// stabilization of the domain complements, d_Fell rows against the
/// supplied (or detected) candidate, and per-compact eventual-coverage and
/// uniform-Cauchy evidence. Verdicts are three-valued; a prefix is never
/// treated as a proof.
CauchyReport gamma_cauchy_check(const SequenceSpec& seq, std::uint64_t prefix_len,
                                const std::vector<CompactSet>& compacts, const Rational& tol,
                                const GammaCauchyOptions& options = {});

struct LimitCandidate {
    PartialMap interpolant;
    Rational bound; // diagnostic, not a certificate
    bool tail_term_included;
};

/// PL interpolant of f_{at_index} on a mesh grid over K, with a reported
/// bound of (max slope on K) * mesh plus the observed sup distance to the
/// previous prefix element when that is defined.
LimitCandidate limit_candidate(const SequenceSpec& seq, const CompactSet& k,
                               std::uint64_t at_index, const Rational& mesh);

/// Checks the inverse-limit hypotheses im(f)⊆dom(g), im(g)⊆dom(f)
/// (PreconditionError with witness if violated), verifies g∘f = id on
/// dom(f) and f∘g = id on dom(g) exactly, and tabulates sup-distance decay
/// of f_n toward f_cand and of f_n^{-1} toward g_cand on the given compacta.
CauchyReport inverse_limit_check(const SequenceSpec& seq, const PartialMap& f_cand,
                                 const PartialMap& g_cand, const std::vector<CompactSet>& compacts,
                                 const std::vector<std::uint64_t>& indices);

} // namespace codmetric
