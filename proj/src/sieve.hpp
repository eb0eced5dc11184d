#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arith.hpp"

namespace ktwin {

inline constexpr double kGreavesV0 = 0.074368;

struct SieveParams {
    double theta = 0.5;
    double epsilon = 1e-3;
    double xi = 0.0;  // level exponent, default 2(1-theta)(1-eps)/5
    double U = 0.625;
    double V = 0.25;
    double D = 0.0;  // set to x^xi at census time
    int r = 0;

    // Defaults for everything derived from (theta, epsilon).
    static SieveParams from_theta(double theta, double epsilon);
};

// floor((18 + 2 theta) / (5 (1 - theta))) + 1, for 1/2 <= theta < 1.
int r_of_theta(double theta);

// Logarithmic prime weight: (log p / log D - V)/(U - V) on [D^V, D^U), else 0.
double weight_W(uint64_t p, const SieveParams& params);

// Clipped aggregate {1 - sum over distinct sieve primes of (1 - W)}^+.
double weight_G(const FactoredInteger& n, const SieveParams& params,
                const std::function<bool(uint64_t)>& in_sieve);
double weight_G(uint64_t n, const SieveParams& params,
                const std::function<bool(uint64_t)>& in_sieve);

// Deficit 1 - W(p) a prime divisor contributes when it lies below D^U
// (log-scale test, so it matches weight_W's support exactly); 0 above.
double greaves_deficit(uint64_t p, const SieveParams& params);

// The two weight integrals on 1/6 <= V <= 1/4; both vanish at V = 1/4.
double alpha(double V);
double beta(double V);

// [alpha - V beta - V log 3 - U log U - (1-U) log(1-U) - log(4/3)] / (xi (U-V))
double J(double xi, double U, double V);

double lower_bound_constant(double theta);                 // 2 J(2(1-theta)/5, 5/8, 1/4)
double upper_bound_constant(double theta, double epsilon);  // 5/(1-theta) + epsilon

// Names of violated admissibility conditions; empty means admissible.
std::vector<std::string> check_conditions(const SieveParams& params);

}  // namespace ktwin
