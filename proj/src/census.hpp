#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "constants.hpp"
#include "curve.hpp"
#include "gl2.hpp"
#include "rational.hpp"
#include "sieve.hpp"

namespace ktwin {

inline constexpr uint64_t kCensusMaxX = 1000000000000000ull;  // |E(F_p)| stays in 64 bits
inline constexpr uint64_t kDivisorProbeMax = 10000;

struct CensusConfig {
    CurveModel curve;
    GaloisImageSpec image = GaloisImageSpec::full_image(1);
    uint64_t x = 0;
    SieveParams params = SieveParams::from_theta(0.5, 1e-3);  // D filled from x
    std::vector<uint64_t> ell_probes = {2, 3, 5, 7};
    std::vector<uint64_t> divisor_probes = {1, 2, 3, 5, 6, 10, 15, 30};
    uint64_t constant_cutoff = 100000;
    uint64_t checkpoint_interval = 0;  // x-units between snapshots; 0 = max(x/16, block)
    uint64_t block_width = 65536;      // primes per work unit; fixed for determinism
    unsigned threads = 0;              // 0 = hardware concurrency
    std::string checkpoint_path;       // empty = no checkpointing
    std::string dump_csv_path;         // empty = no per-prime dump
    uint64_t max_blocks = 0;           // testing hook: stop after N merged blocks
};

struct CensusSnapshot {
    uint64_t x = 0;
    uint64_t n_good = 0, n_in_A = 0;
    uint64_t pi_twin = 0, pi_twin_all = 0;
    uint64_t empirical_S = 0, n_prime_small_or_gcd = 0;
    double empirical_H = 0.0;
    double prediction_li2 = 0.0, prediction_log2 = 0.0;
    bool ub1_holds = false;
};

struct CensusReport {
    // configuration echo
    uint64_t x = 0;
    CurveModel curve;
    uint64_t m_e = 1;
    std::string image_mode;
    SieveParams params;
    uint64_t block_width = 0;
    uint64_t snapshot_blocks = 0;

    // tallies
    uint64_t n_good_primes = 0;
    uint64_t n_in_A = 0;
    uint64_t pi_twin = 0;      // np prime and coprime to m_e
    uint64_t pi_twin_all = 0;  // np prime, no gcd condition
    std::array<uint64_t, 16> p_r_counts{};  // index r-1: #{Omega(np) <= r, gcd cond}
    std::map<uint64_t, uint64_t> divisor_counts;
    std::map<uint64_t, uint64_t> ell_counts;  // ell -> #{good p : ell | np}
    double empirical_H = 0.0;
    uint64_t empirical_S = 0;
    uint64_t n_prime_small_or_gcd = 0;
    std::vector<uint64_t> excluded_primes;
    uint64_t gcd_twin_count = 0;   // np prime with gcd(np, m_e) > 1
    uint64_t gcd_twin_max_p = 0;
    uint64_t sixteen_me_violations = 0;
    double omega1_sup = 0.0;
    uint64_t omega1_windows = 0;

    // predictions
    ConstantEstimate constant;
    Rational prob_coprime = Rational(1);
    double li_x = 0.0, li2_x = 0.0;
    double prediction_log2 = 0.0;   // C * x / log(x)^2
    double prediction_li2 = 0.0;    // C * li2(x)
    double greaves_main_term = 0.0; // 2 J(xi,U,V) * C * x / log(x)^2

    std::vector<CensusSnapshot> checkpoints;

    // derived views
    Rational density_observed(uint64_t ell) const;
    struct DivisorCheck {
        uint64_t observed = 0;
        double predicted = 0.0;
        double residual = 0.0;
    };
    DivisorCheck divisor_check(uint64_t d) const;
    double greaves_ratio() const;
    bool ub1_holds() const { return pi_twin_all <= empirical_S + n_prime_small_or_gcd; }
};

enum class CensusOutcome { complete, interrupted };

struct CensusRun {
    CensusOutcome outcome = CensusOutcome::complete;
    CensusReport report;  // valid when outcome == complete
};

// Streams primes up to config.x in fixed-width blocks, resuming from
// config.checkpoint_path when a valid checkpoint is present. Tallies merge in
// block order, so reports are identical regardless of thread count or
// interruption history.
CensusRun run_census_ex(const CensusConfig& config);

// Convenience wrapper for complete runs (no max_blocks).
CensusReport run_census(const CensusConfig& config);

// Sup over dyadic windows [z, 2z) inside [2, D] of
// |sum of (w(l)/l) log l - log 2| with w(l)/l the prime divisor density.
struct Omega1Probe {
    double sup = 0.0;
    uint64_t windows = 0;
};
Omega1Probe omega1_probe(uint64_t m_e, double D);

// JSON report (schema ktwin.census.v1) and plot-ready CSV.
std::string report_to_json(const CensusReport& report);
CensusReport report_from_json(const std::string& text);
std::string plot_csv(const CensusReport& report);

}  // namespace ktwin
