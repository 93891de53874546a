#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mixedab {

using BigInt = boost::multiprecision::cpp_int;
using IntVector = std::vector<BigInt>;

/// Non-negative residue of a modulo m (m > 0).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Floor division for m > 0.
inline BigInt div_floor(const BigInt& a, const BigInt& m) {
    BigInt q = a / m;
    if ((a % m) != 0 && (a < 0)) --q;
    return q;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline BigInt ipow(std::uint64_t base, unsigned exp) {
    return boost::multiprecision::pow(BigInt(base), exp);
}

/// p-adic valuation of a nonzero integer; `cap` is returned for zero.
inline unsigned valuation(BigInt a, std::uint64_t p, unsigned cap) {
    if (a == 0) return cap;
    if (a < 0) a = -a;
    unsigned v = 0;
    const BigInt bp = p;
    while (v < cap && a % bp == 0) {
        a /= bp;
        ++v;
    }
    return v;
}

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

inline std::uint64_t next_prime_above(std::uint64_t n) {
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    return c;
}

inline std::vector<std::uint64_t> primes_up_to(std::uint64_t cutoff) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t q = 2; q <= cutoff; ++q) {
        if (is_prime(q)) out.push_back(q);
    }
    return out;
}

inline std::int64_t to_i64(const BigInt& a) {
    if (a > BigInt(INT64_MAX) || a < BigInt(INT64_MIN)) {
        throw std::overflow_error("integer does not fit in 64 bits: " + a.str());
    }
    return a.convert_to<std::int64_t>();
}

}  // namespace mixedab
