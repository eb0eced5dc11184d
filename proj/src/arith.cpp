#include "arith.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>

#include "errors.hpp"
#include "quadrature.hpp"

namespace ktwin {

uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

// ---------------------------------------------------------------------------
// Primality: deterministic Miller-Rabin for the full 64-bit range
// ---------------------------------------------------------------------------

namespace {

bool miller_rabin_witness(uint64_t n, uint64_t a, uint64_t d, int r) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // This witness set is exhaustive below 3.3e24, so in particular for uint64_t.
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (!miller_rabin_witness(n, a, d, r)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Sieves
// ---------------------------------------------------------------------------

namespace {

std::vector<uint64_t> simple_sieve(uint64_t limit) {
    std::vector<uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (uint64_t i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    for (uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

constexpr uint64_t kSegmentWidth = 1u << 20;

}  // namespace

const std::vector<uint32_t>& small_primes() {
    static const std::vector<uint32_t> table = [] {
        std::vector<uint32_t> out;
        for (uint64_t p : simple_sieve(100000)) out.push_back(static_cast<uint32_t>(p));
        return out;
    }();
    return table;
}

void for_each_prime(uint64_t lo, uint64_t hi, const std::function<void(uint64_t)>& fn) {
    if (hi <= lo || hi <= 2) return;
    lo = std::max<uint64_t>(lo, 2);

    uint64_t root = isqrt_u64(hi - 1);
    std::vector<uint64_t> base = simple_sieve(root);

    std::vector<char> flags;
    for (uint64_t seg_lo = lo; seg_lo < hi; ) {
        uint64_t seg_hi = seg_lo + std::min<uint64_t>(kSegmentWidth, hi - seg_lo);
        flags.assign(seg_hi - seg_lo, 1);
        for (uint64_t p : base) {
            if (p * p >= seg_hi) break;
            uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (uint64_t j = start; j < seg_hi; j += p) flags[j - seg_lo] = 0;
        }
        for (uint64_t i = 0; i < flags.size(); ++i)
            if (flags[i]) fn(seg_lo + i);
        seg_lo = seg_hi;
    }
}

std::vector<uint64_t> primes_in_range(uint64_t lo, uint64_t hi) {
    std::vector<uint64_t> out;
    for_each_prime(lo, hi, [&](uint64_t p) { out.push_back(p); });
    return out;
}

// ---------------------------------------------------------------------------
// Factorization
// ---------------------------------------------------------------------------

namespace {

// Brent's variant of Pollard rho; returns a nontrivial factor of composite n.
uint64_t pollard_brent(uint64_t n) {
    if (n % 2 == 0) return 2;
    for (uint64_t c = 1;; ++c) {
        uint64_t x = 2, y = 2, d = 1, q = 1, ys = 0;
        const uint64_t m = 128;
        uint64_t r = 1;
        auto step = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = y;
            for (uint64_t i = 0; i < r; ++i) y = step(y);
            for (uint64_t k = 0; k < r && d == 1; k += m) {
                ys = y;
                uint64_t lim = std::min(m, r - k);
                for (uint64_t i = 0; i < lim; ++i) {
                    y = step(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                d = std::gcd(q, n);
            }
            r <<= 1;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            while (d == 1) {
                ys = step(ys);
                d = std::gcd(x > ys ? x - ys : ys - x, n);
            }
        }
        if (d != n) return d;
        // cycle degenerated for this c; retry with the next increment
    }
}

void factor_into(uint64_t n, std::vector<std::pair<uint64_t, int>>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        out.emplace_back(n, 1);
        return;
    }
    uint64_t d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

FactoredInteger factorize(uint64_t n) {
    if (n == 0) raise(errc::invalid_argument, "factorize requires n >= 1");
    FactoredInteger f;
    f.n = n;
    if (n == 1) return f;

    for (uint32_t p : small_primes()) {
        if (static_cast<uint64_t>(p) * p > n) break;
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            f.factors.emplace_back(p, e);
        }
    }
    if (n > 1) {
        std::vector<std::pair<uint64_t, int>> rest;
        factor_into(n, rest);
        std::sort(rest.begin(), rest.end());
        for (size_t i = 0; i < rest.size();) {
            size_t j = i;
            int e = 0;
            while (j < rest.size() && rest[j].first == rest[i].first) {
                e += rest[j].second;
                ++j;
            }
            f.factors.emplace_back(rest[i].first, e);
            i = j;
        }
    }
    return f;
}

uint64_t FactoredInteger::radical() const {
    uint64_t r = 1;
    for (const auto& [p, e] : factors) r *= p;
    return r;
}

bool FactoredInteger::squarefree() const {
    for (const auto& [p, e] : factors)
        if (e > 1) return false;
    return true;
}

int big_omega(const FactoredInteger& f) {
    int s = 0;
    for (const auto& [p, e] : f.factors) s += e;
    return s;
}

int little_omega(const FactoredInteger& f) { return static_cast<int>(f.factors.size()); }

int big_omega(uint64_t n) { return big_omega(factorize(n)); }
int little_omega(uint64_t n) { return little_omega(factorize(n)); }

int omega_trunc(const FactoredInteger& f, double z) {
    if (z < 2.0) raise(errc::invalid_argument, "omega_trunc requires z >= 2");
    int s = little_omega(f);
    for (const auto& [p, e] : f.factors) {
        // pairs (p, v) with v in [2, e]; long double keeps the compare exact for p < 2^63
        if (e >= 2 && static_cast<long double>(p) >= static_cast<long double>(z)) s += e - 1;
    }
    return s;
}

int omega_trunc(uint64_t a, double z) { return omega_trunc(factorize(a), z); }

int mobius(uint64_t n) {
    FactoredInteger f = factorize(n);
    if (!f.squarefree()) return 0;
    return (f.factors.size() % 2 == 0) ? 1 : -1;
}

// ---------------------------------------------------------------------------
// Logarithmic integrals; substitution t = e^s keeps the adaptive scheme happy
// across many orders of magnitude.
// ---------------------------------------------------------------------------

double li(double x) {
    if (x <= 2.0) return 0.0;
    double hi = std::log(x);
    double mag = x / hi + 1.0;
    return integrate([](double s) { return std::exp(s) / s; }, std::log(2.0), hi, 1e-11 * mag);
}

double li2(double x) {
    if (x <= 2.0) return 0.0;
    double hi = std::log(x);
    double mag = x / (hi * hi) + 1.0;
    return integrate([](double s) { return std::exp(s) / (s * s); }, std::log(2.0), hi, 1e-11 * mag);
}

}  // namespace ktwin
