#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace reesdiag {

// Exact rational scalar. GMP keeps values canonical (lowest terms,
// positive denominator), which the rest of the library relies on for
// map keys and matrix equality.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Parses "p", "p/q" or decimal-free signed integers. Used by model files
// and tests; rejects anything else.
Rational parse_rational(const std::string& s);

// Serializes as "p" or "p/q"; never floats.
std::string rational_str(const Rational& q);

long rational_floor(const Rational& q);
long rational_ceil(const Rational& q);

// Smallest d > 0 with d*q integral.
unsigned long rational_denominator(const Rational& q);
unsigned long lcm_ul(unsigned long a, unsigned long b);

using QVec = std::vector<Rational>;

bool is_zero_vec(const QVec& v);

// Deterministic 64-bit generator for tests and representative-order
// shuffles (seeded runs must be reproducible byte-for-byte).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    long range(long lo, long hi) { // inclusive
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
};

} // namespace reesdiag
