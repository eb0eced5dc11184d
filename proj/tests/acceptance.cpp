// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Usage: acceptance [N ...]   (default: run all eight)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "arith.hpp"
#include "census.hpp"
#include "constants.hpp"
#include "curve.hpp"
#include "gl2.hpp"
#include "oracles.hpp"
#include "sieve.hpp"

using namespace ktwin;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

// 1. 2 J(2(1-theta)/5, 5/8, 1/4)(1-theta) = 1.32304 +- 5e-4 for three thetas;
//    alpha(1/4) = beta(1/4) = 0 within 1e-12; under one second.
Outcome criterion1() {
    Outcome o;
    for (double theta : {0.5, 11.0 / 21.0, 0.6}) {
        double v = 2.0 * J(2.0 * (1.0 - theta) / 5.0, 0.625, 0.25) * (1.0 - theta);
        o.require(std::fabs(v - 1.32304) <= 5e-4,
                  "2J(1-theta) = " + std::to_string(v) + " at theta = " + std::to_string(theta));
    }
    o.require(std::fabs(alpha(0.25)) <= 1e-12, "alpha(1/4) != 0");
    o.require(std::fabs(beta(0.25)) <= 1e-12, "beta(1/4) != 0");
    return o;
}

// 2. r(1/2) = 8, lower constant at 11/21 >= 2.778, upper constant -> 10.
Outcome criterion2() {
    Outcome o;
    o.require(r_of_theta(0.5) == 8, "r(1/2) != 8");
    o.require(lower_bound_constant(11.0 / 21.0) >= 2.778,
              "lower constant at 11/21 below 2.778");
    for (double eps : {1e-3, 1e-6, 1e-9}) {
        double upper = upper_bound_constant(0.5, eps);
        // one ulp of 10 covers the representation error of 10 + eps
        o.require(std::fabs(upper - 10.0) <= eps + 2e-15,
                  "upper constant misses 10 by more than eps");
    }
    return o;
}

// 3. Brute-force C(l) and C(l^2) densities equal the closed forms, exactly.
Outcome criterion3() {
    Outcome o;
    for (uint64_t ell : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell)),
                       static_cast<int64_t>(gl2_order(ell)));
        o.require(brute == density_C_prime(ell),
                  "C(" + std::to_string(ell) + ")/|G| != (l^2-2)/((l-1)(l^2-1))");
    }
    for (uint64_t ell : {2ull, 3ull, 5ull}) {
        Rational brute(static_cast<int64_t>(count_C_bruteforce(ell * ell)),
                       static_cast<int64_t>(gl2_order(ell * ell)));
        o.require(brute == density_C_prime_squared(ell),
                  "C(" + std::to_string(ell * ell) + ")/|G| != (l^3-l-1)/(l^2(l^2-1)(l-1))");
    }
    return o;
}

// 4. Inclusion-exclusion identity, exact rationals, all squarefree m <= 30.
Outcome criterion4() {
    Outcome o;
    for (uint64_t m = 1; m <= 30; ++m) {
        if (!factorize(m).squarefree()) continue;
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
        o.require(lhs == rhs, "identity fails at m = " + std::to_string(m));
    }
    return o;
}

// 5. Naive and BSGS group orders agree for 5 fixed curves over [233, 5000],
//    with the Hasse bound and the p/16 floor on every record.
Outcome criterion5() {
    Outcome o;
    std::vector<CurveModel> curves = {
        make_curve(0, 0, 1, -1, 0), make_curve(1, 0, 0, -1, 1), make_curve(0, 1, 1, 0, -2),
        make_curve(0, 0, 0, -1, 1), make_curve(1, 1, 0, 3, 5)};
    for (const auto& c : curves) {
        for (uint64_t p : primes_in_range(233, 5001)) {
            if (!c.good_reduction(p)) continue;
            uint64_t naive = count_points_naive(c, p);
            uint64_t bsgs = count_points_bsgs(c, p);
            if (naive != bsgs) {
                o.require(false, "order mismatch at p = " + std::to_string(p) + " for " + c.str());
                continue;
            }
            int64_t ap = static_cast<int64_t>(p + 1) - static_cast<int64_t>(naive);
            o.require(static_cast<__int128>(ap) * ap <= static_cast<__int128>(4) * p,
                      "Hasse bound fails at p = " + std::to_string(p));
            o.require(naive >= (p + 15) / 16, "p/16 floor fails at p = " + std::to_string(p));
        }
    }
    return o;
}

// 6. Koblitz constant stability between cutoffs 1e5 and 1e6 inside the
//    certified tail; classical constant lands in [1.320, 1.321] and matches
//    the independent direct-product oracle.
Outcome criterion6() {
    Outcome o;
    GaloisImageSpec image = GaloisImageSpec::full_image(1);
    auto coarse = koblitz_constant(image, 100000);
    auto fine = koblitz_constant(image, 1000000);
    double diff = std::fabs(fine.value - coarse.value);
    o.require(diff < coarse.tail_bound, "cutoff drift " + std::to_string(diff) +
                                            " exceeds the reported tail bound " +
                                            std::to_string(coarse.tail_bound));
    o.require(diff < coarse.value * coarse.tail_bound,
              "cutoff drift exceeds the certified interval half-width");

    auto twin = twin_constant_classical(1000000);
    o.require(twin.value >= 1.320 && twin.value <= 1.321,
              "classical constant " + std::to_string(twin.value) + " outside [1.320, 1.321]");
    auto primes = oracle::sieve_primes(1000000);
    double direct = oracle::twin_product_direct(primes, 1000000);
    o.require(std::fabs(twin.value - direct) <= 1e-12,
              "log-space product disagrees with the direct oracle");
    return o;
}

// 7. Census at x = 1e6 for y^2 + y = x^3 - x with m_e = 1: per-prime divisor
//    densities within 4 sigma of the matrix densities, the sifting inequality
//    at every checkpoint, and the 16 M_E bound vacuous or exact.
Outcome criterion7() {
    Outcome o;
    CensusConfig cfg;
    cfg.curve = make_curve(0, 0, 1, -1, 0);
    cfg.image = GaloisImageSpec::full_image(1);
    cfg.x = 1000000;
    CensusReport rep = run_census(cfg);

    uint64_t pi_x = rep.n_good_primes + rep.excluded_primes.size();
    o.require(pi_x == 78498, "pi(1e6) != 78498");
    double n = static_cast<double>(pi_x);
    for (uint64_t ell : {2ull, 3ull, 5ull}) {
        double q = density_C_prime(ell).to_double();
        double observed = rep.density_observed(ell).to_double();
        double tolerance = 4.0 * std::sqrt(q * (1.0 - q) / n);
        o.require(std::fabs(observed - q) <= tolerance,
                  "density at " + std::to_string(ell) + " off by " +
                      std::to_string(std::fabs(observed - q)) + " > " + std::to_string(tolerance));
    }
    o.require(rep.ub1_holds(), "sifting inequality fails at x");
    o.require(!rep.checkpoints.empty(), "census produced no checkpoints");
    for (const auto& snap : rep.checkpoints)
        o.require(snap.ub1_holds, "sifting inequality fails at checkpoint x = " +
                                      std::to_string(snap.x));
    o.require(rep.sixteen_me_violations == 0, "16 M_E bound violated");
    o.require(rep.gcd_twin_count == 0, "m_e = 1 census saw gcd > 1");  // vacuous case
    return o;
}

// 8. Interrupted-and-resumed census report is byte-identical at x = 1e5.
Outcome criterion8() {
    Outcome o;
    CensusConfig cfg;
    cfg.curve = make_curve(0, 0, 1, -1, 0);
    cfg.image = GaloisImageSpec::full_image(1);
    cfg.x = 100000;

    std::string direct = report_to_json(run_census(cfg));

    auto ck = std::filesystem::temp_directory_path() / "ktwin_acceptance_resume.ck";
    std::filesystem::remove(ck);
    CensusConfig stepped = cfg;
    stepped.checkpoint_path = ck.string();
    stepped.max_blocks = 1;  // stop halfway: x = 1e5 spans two default blocks
    CensusRun first = run_census_ex(stepped);
    o.require(first.outcome == CensusOutcome::interrupted, "run did not stop at the block limit");

    stepped.max_blocks = 0;
    CensusRun resumed = run_census_ex(stepped);
    o.require(resumed.outcome == CensusOutcome::complete, "resume did not complete");
    o.require(report_to_json(resumed.report) == direct,
              "resumed report differs from the uninterrupted run");
    std::filesystem::remove(ck);
    return o;
}

struct Criterion {
    int id;
    const char* label;
    double budget_seconds;  // 0 = no stated budget
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "sieve constant reproduction (1.32304/(1-theta), alpha/beta endpoints)", 1.0,
         criterion1},
        {2, "theorem constant table (r, lower floor, upper limit)", 0.0, criterion2},
        {3, "GL2 oracle equivalence (closed forms vs brute force)", 30.0, criterion3},
        {4, "inclusion-exclusion identity on squarefree m <= 30", 60.0, criterion4},
        {5, "point-counting oracle agreement on [233, 5000]", 60.0, criterion5},
        {6, "Euler-product stability and classical constant", 30.0, criterion6},
        {7, "census statistical checks at x = 1e6", 0.0, criterion7},
        {8, "interrupt/resume determinism at x = 1e5", 0.0, criterion8},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

    bool all_pass = true;
    for (const auto& c : criteria) {
        if (!selected.empty() &&
            std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o = c.run();
        double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                             .count();
        if (c.budget_seconds > 0.0 && seconds >= c.budget_seconds) {
            o.pass = false;
            if (!o.detail.empty()) o.detail += "; ";
            o.detail += "runtime " + std::to_string(seconds) + "s over the " +
                        std::to_string(c.budget_seconds) + "s budget";
        }
        std::printf("%s criterion %d: %s (%.2fs)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.label,
                    seconds, o.detail.empty() ? "" : " -- ", o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) all_pass = false;
    }
    return all_pass ? 0 : 1;
}
