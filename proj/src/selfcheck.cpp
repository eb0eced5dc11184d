#include "selfcheck.hpp"

#include <cmath>

#include "arith.hpp"
#include "census.hpp"
#include "constants.hpp"
#include "curve.hpp"
#include "gl2.hpp"
#include "sieve.hpp"

namespace ktwin {

namespace {

struct Checker {
    SelfCheckResult result;

    void check(bool ok, const std::string& name) {
        result.text += (ok ? "ok   " : "FAIL ") + name + "\n";
        if (!ok) result.ok = false;
    }
};

}  // namespace

SelfCheckResult run_self_check() {
    Checker c;

    for (uint64_t ell : {2, 3, 5, 7}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell)),
                       static_cast<int64_t>(gl2_order(ell)));
        c.check(brute == density_C_prime(ell),
                "C(" + std::to_string(ell) + ") density matches brute force");
    }
    for (uint64_t ell : {2, 3}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell * ell)),
                       static_cast<int64_t>(gl2_order(ell * ell)));
        c.check(brute == density_C_prime_squared(ell),
                "C(" + std::to_string(ell * ell) + ") density matches brute force");
    }

    for (uint64_t m : {2, 6, 15}) {
        GaloisImageSpec image = GaloisImageSpec::full_image(m);
        Rational lhs = image.prob_coprime();
        Rational rhs(0);
        for (uint64_t d = 1; d <= m; ++d) {
            if (m % d != 0) continue;
            int mu = mobius(d);
            if (mu == 0) continue;
            rhs = rhs + Rational(mu) * Rational(static_cast<int64_t>(count_C_bruteforce(d)),
                                                static_cast<int64_t>(gl2_order(d)));
        }
        c.check(lhs == rhs, "inclusion-exclusion identity at m = " + std::to_string(m));
    }

    {
        GaloisImageSpec img2 = GaloisImageSpec::full_image(2);
        Rational corr = image_correction_factor(img2);
        c.check(corr == euler_factor(2), "m_e = 2 correction equals the generic factor at 2");
    }

    {
        CurveModel e = make_curve(0, 0, 1, -1, 0);
        bool agree = true;
        for (uint64_t p : primes_in_range(233, 1000)) {
            if (!e.good_reduction(p)) continue;
            if (count_points_naive(e, p) != count_points_bsgs(e, p)) agree = false;
        }
        c.check(agree, "naive and BSGS point counts agree on [233, 1000)");
    }

    c.check(std::fabs(alpha(0.25)) < 1e-12 && std::fabs(beta(0.25)) < 1e-12,
            "alpha(1/4) = beta(1/4) = 0");
    c.check(r_of_theta(0.5) == 8, "r(1/2) = 8");
    {
        bool ok = true;
        for (double theta : {0.5, 11.0 / 21.0, 0.6}) {
            double v = 2.0 * J(2.0 * (1.0 - theta) / 5.0, 0.625, 0.25) * (1.0 - theta);
            if (std::fabs(v - 1.32304) > 5e-4) ok = false;
            if (v < 1.32303) ok = false;  // never fall under the truncated value
        }
        c.check(ok, "2 J(2(1-theta)/5, 5/8, 1/4)(1-theta) = 1.32304 +- 5e-4");
    }
    {
        auto tw = twin_constant_classical(100000);
        c.check(tw.value > 1.320 && tw.value < 1.321, "classical twin constant near 1.3203");
    }
    {
        SieveParams params = SieveParams::from_theta(0.5, 1e-3);
        params.D = 100.0;
        c.check(check_conditions(params).empty(), "default sieve parameters admissible");
    }
    c.check(omega1_probe(1, 1e4).sup <= 10.0, "dyadic divisor-density windows stay bounded");

    return c.result;
}

}  // namespace ktwin
