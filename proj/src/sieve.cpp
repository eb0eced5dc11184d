#include "sieve.hpp"

#include <cmath>

#include "errors.hpp"
#include "quadrature.hpp"

namespace ktwin {

int r_of_theta(double theta) {
    if (!(theta >= 0.5 && theta < 1.0)) raise(errc::out_of_range, "theta must lie in [1/2, 1)");
    double t = (18.0 + 2.0 * theta) / (5.0 * (1.0 - theta));
    return static_cast<int>(std::floor(t)) + 1;
}

SieveParams SieveParams::from_theta(double theta, double epsilon) {
    if (!(theta >= 0.5 && theta < 1.0)) raise(errc::out_of_range, "theta must lie in [1/2, 1)");
    if (!(epsilon > 0.0)) raise(errc::out_of_range, "epsilon must be positive");
    SieveParams p;
    p.theta = theta;
    p.epsilon = epsilon;
    p.xi = 2.0 * (1.0 - theta) * (1.0 - epsilon) / 5.0;
    p.r = r_of_theta(theta);
    return p;
}

double weight_W(uint64_t p, const SieveParams& params) {
    if (!(params.D > 1.0)) raise(errc::invalid_argument, "weight_W requires D > 1");
    double t = std::log(static_cast<double>(p)) / std::log(params.D);
    if (t < params.V || t >= params.U) return 0.0;
    return (t - params.V) / (params.U - params.V);
}

double weight_G(const FactoredInteger& n, const SieveParams& params,
                const std::function<bool(uint64_t)>& in_sieve) {
    double deficit = 0.0;
    for (const auto& [p, e] : n.factors) {
        if (!in_sieve(p)) continue;
        deficit += 1.0 - weight_W(p, params);
    }
    double g = 1.0 - deficit;
    return g > 0.0 ? g : 0.0;
}

double weight_G(uint64_t n, const SieveParams& params,
                const std::function<bool(uint64_t)>& in_sieve) {
    return weight_G(factorize(n), params, in_sieve);
}

double greaves_deficit(uint64_t p, const SieveParams& params) {
    if (!(params.D > 1.0)) raise(errc::invalid_argument, "greaves_deficit requires D > 1");
    double t = std::log(static_cast<double>(p)) / std::log(params.D);
    if (t >= params.U) return 0.0;  // prime falls outside (a, P(D^U))
    if (t < params.V) return 1.0;
    return 1.0 - (t - params.V) / (params.U - params.V);
}

namespace {

void require_ab_domain(double V) {
    if (!(V >= 1.0 / 6.0 && V <= 0.25))
        raise(errc::out_of_range, "alpha/beta are defined for 1/6 <= V <= 1/4");
}

constexpr double kQuadTol = 1e-11;

}  // namespace

double alpha(double V) {
    require_ab_domain(V);
    double head = std::log((1.0 - V) / 0.75);
    auto f = [V](double u) {
        return ((2.0 / u) * std::log(2.0 - u * V) + std::log((1.0 - 1.0 / u) / (1.0 - V))) *
               std::log(u - 3.0) / (u - 2.0);
    };
    return head - integrate(f, 4.0, 1.0 / V, kQuadTol);
}

double beta(double V) {
    require_ab_domain(V);
    double head = std::log((1.0 - V) / (3.0 * V));
    auto f = [V](double u) {
        return (std::log(2.0 - u * V) + std::log((1.0 - 1.0 / u) / (1.0 - V))) *
               std::log(u - 3.0) / (u - 2.0);
    };
    return head - integrate(f, 4.0, 1.0 / V, kQuadTol);
}

double J(double xi, double U, double V) {
    require_ab_domain(V);
    if (!(xi > 0.0)) raise(errc::out_of_range, "J requires xi > 0");
    if (!(U > V && U < 1.0)) raise(errc::out_of_range, "J requires V < U < 1");
    double num = alpha(V) - V * beta(V) - V * std::log(3.0) - U * std::log(U) -
                 (1.0 - U) * std::log(1.0 - U) - std::log(4.0 / 3.0);
    return num / (xi * (U - V));
}

double lower_bound_constant(double theta) {
    if (!(theta >= 0.5 && theta < 1.0)) raise(errc::out_of_range, "theta must lie in [1/2, 1)");
    return 2.0 * J(2.0 * (1.0 - theta) / 5.0, 0.625, 0.25);
}

double upper_bound_constant(double theta, double epsilon) {
    if (!(theta >= 0.5 && theta < 1.0)) raise(errc::out_of_range, "theta must lie in [1/2, 1)");
    if (!(epsilon > 0.0)) raise(errc::out_of_range, "epsilon must be positive");
    return 5.0 / (1.0 - theta) + epsilon;
}

std::vector<std::string> check_conditions(const SieveParams& p) {
    std::vector<std::string> violated;
    auto check = [&](bool ok, const char* name) {
        if (!ok) violated.emplace_back(name);
    };
    check(p.theta >= 0.5 && p.theta < 1.0, "1/2 <= theta < 1");
    check(p.epsilon > 0.0, "epsilon > 0");
    check(p.V >= kGreavesV0, "V >= V0");
    check(p.V <= 0.25, "V <= 1/4");
    check(p.U >= 0.5, "U >= 1/2");
    check(p.U < 1.0, "U < 1");
    check(p.U + 3.0 * p.V >= 1.0, "U + 3V >= 1");
    check(p.xi * (p.r * p.U + p.V) > 1.0, "xi(rU + V) > 1");
    check(p.V >= 1.0 / 6.0, "V >= 1/6 (alpha/beta domain)");
    if (p.D != 0.0) check(p.D > 1.0, "D > 1");
    return violated;
}

}  // namespace ktwin
