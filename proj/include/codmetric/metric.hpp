#pragma once

#include "codmetric/basis.hpp"
#include "codmetric/partial_map.hpp"

#include <cstdint>
#include <optional>

namespace codmetric {

/// Certified rational bracket around an infinite-series value.
struct Enclosure {
    Rational lo;
    Rational hi;

    Rational width() const { return hi - lo; }
    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    std::string str() const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b) {
        return {Rational(a.lo + b.lo), Rational(a.hi + b.hi)};
    }
    friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

/// Cutoffs for the double series: sum exactly over n <= basis_cutoff and
/// m <= exhaustion_cutoff, bound the tail by 2^-N + 2^-M.
struct TruncationPlan {
    std::uint64_t basis_cutoff;      // N
    std::uint64_t exhaustion_cutoff; // M

    /// Smallest balanced plan (N = M) whose tail bound is within tol.
    static TruncationPlan for_tolerance(const Rational& tol);
    Rational tail_bound() const;
};

/// sup over K of min(|f(x) - g(x)|, 1), exact. K must be nonempty and lie
/// inside both domains; otherwise a DomainError names an uncovered point.
Rational sup_distance(const PartialMap& f, const PartialMap& g, const CompactSet& k);

/// Membership in L = D^{-1}(int(K_{(m+1)n})^-): the domain complement of f
/// meets the interior of the next exhaustion stage, i.e. that interior is
/// not contained in dom(f).
bool l_member(const PartialMap& f, std::uint64_t m, std::uint64_t n);

/// The three-case pseudometric attached to basis element U_n and stage m:
/// 0 when both maps are L-members, d_{K_mn} when neither is, 1 otherwise.
Rational beta_mn(const PartialMap& f, const PartialMap& g, std::uint64_t m, std::uint64_t n);

/// Enclosure of beta(f,g) = sum over m,n of 2^-(m+n) beta_mn(f,g).
Enclosure beta(const PartialMap& f, const PartialMap& g, const TruncationPlan& plan);
Enclosure beta(const PartialMap& f, const PartialMap& g, const Rational& tol);

/// d_gamma(f,g) = beta(f,g) + beta(f^-1,g^-1), each term at tol/2.
Enclosure d_gamma(const GammaMap& f, const GammaMap& g, const Rational& tol);
Enclosure d_gamma(const GammaMap& f, const GammaMap& g, const TruncationPlan& plan);

/// f in <K,V>: K inside dom(f) and f(K) inside V.
bool in_compact_open(const PartialMap& f, const CompactSet& k, const OpenSet& v);

/// f in <K,V>^-1: K inside im(f) and f^-1(K) inside V.
bool in_compact_open_inv(const GammaMap& f, const CompactSet& k, const OpenSet& v);

/// g in B_K(f, eps): K inside dom(g) and sup_distance(f,g,K) < eps
/// (strict). Preconditions: f nonempty, K nonempty inside dom(f), eps > 0.
bool in_ball(const PartialMap& g, const PartialMap& f, const CompactSet& k, const Rational& eps);

/// eps = min(1, distance(f(K), X \ V)) > 0, valid whenever f is in <K,V>
/// with K nonempty; guarantees B_K(f, eps) is contained in <K,V>.
Rational separation_radius(const PartialMap& f, const CompactSet& k, const OpenSet& v);

/// Least n <= search_bound with U_n inside dom(f), witnessing that f is
/// separated from the empty function. SearchExhaustedError if the bounded
/// scan ends (reported, never read as nonexistence).
std::uint64_t empty_separation_witness(const PartialMap& f, std::uint64_t search_bound = 4096);

} // namespace codmetric
