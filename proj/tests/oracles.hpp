// Test-only oracles, deliberately written with the dumbest correct method
// available and no shared code with the library implementations.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

// Plain Eratosthenes.
inline std::vector<uint64_t> sieve_primes(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

inline bool trial_is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::vector<std::pair<uint64_t, int>> trial_factorize(uint64_t n) {
    std::vector<std::pair<uint64_t, int>> out;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d != 0) continue;
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

// Fixed-step composite Simpson on [a, b] with n panels (n even).
template <class F>
double composite_simpson(F f, double a, double b, int n) {
    double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// Fixed-step composite midpoint rule on [a, b] with n panels.
template <class F>
double composite_midpoint(F f, double a, double b, int n) {
    double h = (b - a) / n;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += f(a + (i + 0.5) * h);
    return sum * h;
}

// Straightforward products, no log space, no compensation.
inline double twin_product_direct(const std::vector<uint64_t>& primes, uint64_t cutoff) {
    double prod = 2.0;
    for (uint64_t p : primes) {
        if (p > cutoff) break;
        if (p == 2) continue;
        double q = static_cast<double>(p) - 1.0;
        prod *= 1.0 - 1.0 / (q * q);
    }
    return prod;
}

inline double koblitz_product_direct(const std::vector<uint64_t>& primes, uint64_t cutoff) {
    double prod = 1.0;
    for (uint64_t p : primes) {
        if (p > cutoff) break;
        double l = static_cast<double>(p);
        prod *= 1.0 - (l * l - l - 1.0) / ((l - 1.0) * (l - 1.0) * (l - 1.0) * (l + 1.0));
    }
    return prod;
}

// Full projective point count over F_p by scanning every affine pair.
inline uint64_t point_count_full_scan(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6,
                                      uint64_t p) {
    auto m = [&](int64_t v) {
        int64_t r = v % static_cast<int64_t>(p);
        return static_cast<uint64_t>(r < 0 ? r + static_cast<int64_t>(p) : r);
    };
    uint64_t count = 1;  // infinity
    for (uint64_t x = 0; x < p; ++x) {
        uint64_t rhs = (x * x % p * x + m(a2) * x % p * x + m(a4) * x + m(a6)) % p;
        for (uint64_t y = 0; y < p; ++y) {
            uint64_t lhs = (y * y + m(a1) * x % p * y + m(a3) * y) % p;
            if (lhs == rhs) ++count;
        }
    }
    return count;
}

// Independent quadruple-loop count of C(n) and of |GL2(Z/nZ)|.
inline uint64_t gcd_u64(uint64_t a, uint64_t b) {
    while (b != 0) {
        uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline uint64_t count_c_scan(uint64_t n) {
    if (n == 1) return 1;
    uint64_t count = 0;
    for (uint64_t a = 0; a < n; ++a)
        for (uint64_t b = 0; b < n; ++b)
            for (uint64_t c = 0; c < n; ++c)
                for (uint64_t d = 0; d < n; ++d) {
                    uint64_t det = (a * d % n + n - b * c % n) % n;
                    if (gcd_u64(det, n) != 1) continue;
                    if ((det + 1 + 2 * n - a - d) % n == 0) ++count;
                }
    return count;
}

inline uint64_t gl2_order_scan(uint64_t n) {
    if (n == 1) return 1;
    uint64_t count = 0;
    for (uint64_t a = 0; a < n; ++a)
        for (uint64_t b = 0; b < n; ++b)
            for (uint64_t c = 0; c < n; ++c)
                for (uint64_t d = 0; d < n; ++d) {
                    uint64_t det = (a * d % n + n - b * c % n) % n;
                    if (gcd_u64(det, n) == 1) ++count;
                }
    return count;
}

}  // namespace oracle
