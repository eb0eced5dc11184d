#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace ktwin {

// ---------------------------------------------------------------------------
// 64-bit modular helpers
// ---------------------------------------------------------------------------

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
    uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

uint64_t isqrt_u64(uint64_t n);

// ---------------------------------------------------------------------------
// Primes
// ---------------------------------------------------------------------------

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(uint64_t n);

// Base primes used for trial division (all primes below 1e5).
const std::vector<uint32_t>& small_primes();

// Streams the primes in [lo, hi) in ascending order through fn.
// Segmented, so memory stays O(sqrt(hi) + segment).
void for_each_prime(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn);

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi);

// ---------------------------------------------------------------------------
// Factorization and multiplicative functions
// ---------------------------------------------------------------------------

struct FactoredInteger {
    uint64_t n = 1;
    std::vector<std::pair<uint64_t, int>> factors;  // (prime, exponent), primes ascending

    uint64_t radical() const;
    bool is_prime() const { return factors.size() == 1 && factors[0].second == 1; }
    bool squarefree() const;
};

// Trial division below 1e5, then Brent's Pollard rho with Miller-Rabin
// certification of every reported prime.
FactoredInteger factorize(uint64_t n);

int big_omega(const FactoredInteger& f);
int little_omega(const FactoredInteger& f);
int big_omega(uint64_t n);
int little_omega(uint64_t n);

// omega(a) plus one count for every pair (p, v) with p >= z, v >= 2, p^v | a.
int omega_trunc(const FactoredInteger& f, double z);
int omega_trunc(uint64_t a, double z);

int mobius(uint64_t n);

// ---------------------------------------------------------------------------
// Logarithmic integrals (lower limit 2)
// ---------------------------------------------------------------------------

double li(double x);   // integral of dt/log(t) over [2, x]
double li2(double x);  // integral of dt/log(t)^2 over [2, x]

}  // namespace ktwin
