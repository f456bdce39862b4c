#include "codmetric/basis.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

namespace codmetric {

namespace {

BigInt gcd_abs(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    return boost::multiprecision::gcd(a, b);
}

struct RationalTable {
    std::mutex mu;
    std::vector<Rational> values;   // values[i-1] = i-th rational
    long long next_diagonal = 1;    // next |p| + q to expand

    void ensure(std::size_t count) {
        std::lock_guard<std::mutex> lock(mu);
        while (values.size() < count) {
            const long long s = next_diagonal++;
            for (long long p = -(s - 1); p <= s - 1; ++p) {
                const long long q = s - (p < 0 ? -p : p);
                if (q < 1) continue;
                if (gcd_abs(BigInt(p), BigInt(q)) != 1) continue;
                values.emplace_back(BigInt(p), BigInt(q));
            }
        }
    }

    Rational get(std::uint64_t i) {
        ensure(i);
        std::lock_guard<std::mutex> lock(mu);
        return values[i - 1];
    }
};

RationalTable& rational_table() {
    static RationalTable table;
    return table;
}

// Candidate intervals for one ambient space, extended diagonal by diagonal.
struct IntervalTable {
    Space space;
    std::mutex mu;
    std::vector<Interval> values;  // values[k-1] = k-th candidate
    std::uint64_t next_sum = 2;    // next i + j diagonal

    void ensure(std::size_t count) {
        std::lock_guard<std::mutex> lock(mu);
        while (values.size() < count) {
            const std::uint64_t s = next_sum++;
            for (std::uint64_t i = 1; i + 1 <= s; ++i) {
                const std::uint64_t j = s - i;
                const Rational a = rational_table().get(i);
                const Rational b = rational_table().get(j);
                if (!(a < b)) continue;
                IntervalSet clipped(space, {Interval::open(a, b)});
                if (clipped.empty()) continue;
                values.push_back(clipped.components().front());
            }
        }
    }

    Interval get(std::uint64_t k) {
        ensure(k);
        std::lock_guard<std::mutex> lock(mu);
        return values[k - 1];
    }
};

IntervalTable& interval_table(Space space) {
    static IntervalTable reals{Space::reals, {}, {}, 2};
    static IntervalTable unit{Space::unit_interval, {}, {}, 2};
    return space == Space::reals ? reals : unit;
}

OpenSet build_basis_element(std::uint64_t n, Space space,
                            const std::function<Interval(std::uint64_t)>& candidate) {
    if (n == 0) throw PreconditionError("basis index must be >= 1");
    std::vector<Interval> parts;
    std::uint64_t bits = n;
    for (std::uint64_t pos = 1; bits != 0; ++pos, bits >>= 1) {
        if (bits & 1u) parts.push_back(candidate(pos));
    }
    return OpenSet(IntervalSet(space, std::move(parts)));
}

} // namespace

Rational enumerate_rational(std::uint64_t i) {
    if (i == 0) throw PreconditionError("rational index must be >= 1");
    return rational_table().get(i);
}

Interval enumerated_interval(std::uint64_t k, Space space) {
    if (k == 0) throw PreconditionError("interval index must be >= 1");
    return interval_table(space).get(k);
}

OpenSet basis_element(std::uint64_t n, Space space) {
    return build_basis_element(n, space,
                               [space](std::uint64_t k) { return enumerated_interval(k, space); });
}

namespace detail {

OpenSet basis_element_uncached(std::uint64_t n, Space space) {
    // Re-run both enumerations locally, sharing nothing with the tables.
    std::vector<Rational> rats;
    auto rat_at = [&](std::uint64_t i) {
        long long s = 1;
        while (rats.size() < i) {
            for (long long p = -(s - 1); p <= s - 1; ++p) {
                const long long q = s - (p < 0 ? -p : p);
                if (q < 1) continue;
                if (gcd_abs(BigInt(p), BigInt(q)) != 1) continue;
                rats.emplace_back(BigInt(p), BigInt(q));
            }
            ++s;
        }
        return rats[i - 1];
    };
    std::vector<Interval> candidates;
    auto candidate_at = [&](std::uint64_t k) {
        std::uint64_t s = 2;
        while (candidates.size() < k) {
            for (std::uint64_t i = 1; i + 1 <= s; ++i) {
                const Rational a = rat_at(i);
                const Rational b = rat_at(s - i);
                if (!(a < b)) continue;
                IntervalSet clipped(space, {Interval::open(a, b)});
                if (clipped.empty()) continue;
                candidates.push_back(clipped.components().front());
            }
            ++s;
        }
        return candidates[k - 1];
    };
    return build_basis_element(n, space, candidate_at);
}

} // namespace detail

CompactSet compact_exhaustion(std::uint64_t m, std::uint64_t n, Space space) {
    if (m == 0) throw PreconditionError("exhaustion stage must be >= 1");
    const OpenSet u = basis_element(n, space);
    std::vector<Interval> parts;
    parts.reserve(u.components().size());
    const Rational two_m_plus_2 = Rational(2) * Rational(m + 1);
    for (const Interval& c : u.components()) {
        const Rational margin = c.length() / two_m_plus_2;
        Rational lo = c.lo_open ? Rational(c.lo + margin) : c.lo;
        Rational hi = c.hi_open ? Rational(c.hi - margin) : c.hi;
        parts.push_back(Interval::closed(std::move(lo), std::move(hi)));
    }
    return CompactSet(IntervalSet(space, std::move(parts)));
}

const OpenSet& exhaustion_interior(std::uint64_t m, std::uint64_t n, Space space) {
    struct Cache {
        std::mutex mu;
        std::map<std::tuple<Space, std::uint64_t, std::uint64_t>, OpenSet> entries;
    };
    static Cache cache;
    const auto key = std::make_tuple(space, m, n);
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.entries.find(key);
    if (it == cache.entries.end()) {
        OpenSet interior(compact_exhaustion(m, n, space).set().interior());
        it = cache.entries.emplace(key, std::move(interior)).first;
    }
    return it->second;
}

} // namespace codmetric
