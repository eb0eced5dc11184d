#include "constants.hpp"

#include <cmath>

#include "arith.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace ktwin {

Rational euler_factor(uint64_t ell) {
    if (!is_prime_u64(ell)) raise(errc::invalid_argument, "euler_factor requires a prime");
    if (ell > 55000) raise(errc::overflow, "denominator exceeds 64-bit range");
    int64_t l = static_cast<int64_t>(ell);
    int64_t den = (l - 1) * (l - 1) * (l - 1) * (l + 1);
    return Rational(1) - Rational(l * l - l - 1, den);
}

namespace {

double log_euler_factor(double l) {
    // log(1 - (l^2-l-1)/((l-1)^3 (l+1)))
    double lm1 = l - 1.0;
    return std::log1p(-(l * l - l - 1.0) / (lm1 * lm1 * lm1 * (l + 1.0)));
}

}  // namespace

ConstantEstimate twin_constant_classical(uint64_t cutoff) {
    if (cutoff < 3) raise(errc::out_of_range, "cutoff must be >= 3");
    KahanSum logs;
    for_each_prime(3, cutoff + 1, [&](uint64_t p) {
        double lm1 = static_cast<double>(p) - 1.0;
        logs.add(std::log1p(-1.0 / (lm1 * lm1)));
    });
    ConstantEstimate est;
    est.value = 2.0 * std::exp(logs.value());
    // sum_{n > cutoff} 2/(n-1)^2 <= 2/(cutoff-1), and -log(1-x) <= 2x here
    est.tail_bound = std::expm1(2.0 / static_cast<double>(cutoff - 1));
    est.cutoff = cutoff;
    est.image_mode = "classical";
    return est;
}

Rational image_correction_factor(const GaloisImageSpec& image) {
    Rational correction = image.prob_coprime();
    for (const auto& [p, e] : factorize(image.m_e()).factors) {
        int64_t l = static_cast<int64_t>(p);
        correction = correction / Rational(l - 1, l);
    }
    return correction;
}

ConstantEstimate koblitz_constant(const GaloisImageSpec& image, uint64_t cutoff) {
    uint64_t m = image.m_e();
    FactoredInteger mf = factorize(m);
    if (cutoff < 2 || (!mf.factors.empty() && cutoff < mf.factors.back().first))
        raise(errc::out_of_range, "cutoff must reach the largest prime dividing m_e");

    Rational correction = image_correction_factor(image);
    KahanSum logs;
    for_each_prime(2, cutoff + 1, [&](uint64_t p) {
        if (m % p == 0) return;
        logs.add(log_euler_factor(static_cast<double>(p)));
    });

    ConstantEstimate est;
    est.value = correction.to_double() * std::exp(logs.value());
    // 1 - E(l) <= 2/l^2 for l >= 3, and sum_{n > cutoff} 2/n^2 <= 2/cutoff
    est.tail_bound = std::expm1(2.0 / static_cast<double>(cutoff));
    est.cutoff = cutoff;
    est.image_mode = image.mode_label();
    return est;
}

}  // namespace ktwin
