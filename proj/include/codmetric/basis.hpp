#pragma once

#include "codmetric/interval_set.hpp"

#include <cstdint>

namespace codmetric {

/// The i-th rational (i >= 1) under the pinned order: reduced pairs (p, q)
/// with q >= 1, sorted by |p| + q ascending, ties by p ascending. Begins
/// 0, -1, 1, -2, -1/2, 1/2, 2, ...
Rational enumerate_rational(std::uint64_t i);

/// The k-th candidate interval (k >= 1): {x : a < x < b} clipped to the
/// ambient space, over rational pairs (a, b) with a < b, in diagonal order
/// on (index of a, index of b) — by index sum, ties by the index of a —
/// skipping empty clips. Always nonempty and bounded.
Interval enumerated_interval(std::uint64_t k, Space space);

/// The n-th basis element U_n (n >= 1): the normalized union of the
/// candidate intervals selected by the 1-indexed bit positions of n.
/// Total, deterministic, and surjective onto finite nonempty unions of
/// bounded rational intervals; duplicates across indices are permitted.
OpenSet basis_element(std::uint64_t n, Space space);

/// The m-th stage (m >= 1) of the pinned compact exhaustion of U_n: each
/// relatively open component endpoint retracts inward by L / (2(m+1)) for
/// component length L; ambient-boundary endpoints stay fixed. Nonempty,
/// nested into the interior of the next stage, and exhausting U_n.
CompactSet compact_exhaustion(std::uint64_t m, std::uint64_t n, Space space);

/// interior(compact_exhaustion(m, n, space)), memoized; this is the hot
/// set in the metric inner loops.
const OpenSet& exhaustion_interior(std::uint64_t m, std::uint64_t n, Space space);

namespace detail {
/// Recomputes U_n from scratch, bypassing the process-wide cache. Exists so
/// determinism checks can compare two genuinely independent runs.
OpenSet basis_element_uncached(std::uint64_t n, Space space);
} // namespace detail

} // namespace codmetric
