#pragma once

#include <cstdint>
#include <string>

#include "gl2.hpp"
#include "rational.hpp"

namespace ktwin {

// Truncated Euler product with a certified multiplicative tail half-width:
// the limit lies in [value*(1 - tail_bound), value*(1 + tail_bound)].
struct ConstantEstimate {
    double value = 0.0;
    double tail_bound = 0.0;
    uint64_t cutoff = 0;
    std::string image_mode;

    double lower() const { return value * (1.0 - tail_bound); }
    double upper() const { return value * (1.0 + tail_bound); }
};

// Generic Euler factor E(l) = 1 - (l^2-l-1)/((l-1)^3 (l+1)) as an exact
// rational (full image at l).
Rational euler_factor(uint64_t ell);

// 2 * prod over odd primes l <= cutoff of (1 - 1/(l-1)^2).
ConstantEstimate twin_constant_classical(uint64_t cutoff);

// prob_coprime(image) / prod_{l | m_e} (1 - 1/l), the image correction in
// front of the generic factors. Exact rational.
Rational image_correction_factor(const GaloisImageSpec& image);

// correction(image) * prod over l <= cutoff, l not dividing m_e, of E(l).
ConstantEstimate koblitz_constant(const GaloisImageSpec& image, uint64_t cutoff);

}  // namespace ktwin
