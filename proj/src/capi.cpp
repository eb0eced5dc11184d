#include "ktwin.h"

#include <cstdlib>
#include <cstring>
#include <numeric>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "constants.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "gl2.hpp"
#include "selfcheck.hpp"
#include "sieve.hpp"

using namespace ktwin;

namespace {

thread_local std::string g_last_error;

ktwin_status map_errc(errc c) {
    switch (c) {
        case errc::singular_curve: return KTWIN_E_SINGULAR_CURVE;
        case errc::bad_reduction: return KTWIN_E_BAD_REDUCTION;
        case errc::cap_exceeded: return KTWIN_E_CAP_EXCEEDED;
        case errc::not_invertible: return KTWIN_E_NOT_INVERTIBLE;
        case errc::out_of_range: return KTWIN_E_OUT_OF_RANGE;
        case errc::overflow: return KTWIN_E_OVERFLOW;
        case errc::not_coprime: return KTWIN_E_NOT_COPRIME;
        case errc::not_squarefree: return KTWIN_E_NOT_SQUAREFREE;
        case errc::corrupt_checkpoint: return KTWIN_E_CORRUPT_CHECKPOINT;
        case errc::missing_checkpoints: return KTWIN_E_MISSING_CHECKPOINTS;
        case errc::invalid_argument: return KTWIN_E_INVALID_ARGUMENT;
        case errc::io_error: return KTWIN_E_IO;
        case errc::internal: return KTWIN_E_INTERNAL;
    }
    return KTWIN_E_INTERNAL;
}

template <class F>
ktwin_status guarded(F&& body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const error& e) {
        g_last_error = e.what();
        return map_errc(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return KTWIN_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return KTWIN_E_INTERNAL;
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

}  // namespace

struct ktwin_curve {
    CurveModel model;
};

struct ktwin_image {
    GaloisImageSpec spec;
};

struct ktwin_census {
    CensusReport report;
};

extern "C" {

const char* ktwin_status_name(ktwin_status status) {
    switch (status) {
        case KTWIN_OK: return "Ok";
        case KTWIN_INTERRUPTED: return "Interrupted";
        case KTWIN_E_SINGULAR_CURVE: return "SingularCurve";
        case KTWIN_E_BAD_REDUCTION: return "BadReduction";
        case KTWIN_E_CAP_EXCEEDED: return "CapExceeded";
        case KTWIN_E_NOT_INVERTIBLE: return "NotInvertible";
        case KTWIN_E_OUT_OF_RANGE: return "OutOfRange";
        case KTWIN_E_OVERFLOW: return "Overflow";
        case KTWIN_E_NOT_COPRIME: return "NotCoprime";
        case KTWIN_E_NOT_SQUAREFREE: return "NotSquarefree";
        case KTWIN_E_CORRUPT_CHECKPOINT: return "CorruptCheckpoint";
        case KTWIN_E_MISSING_CHECKPOINTS: return "MissingCheckpoints";
        case KTWIN_E_INVALID_ARGUMENT: return "InvalidArgument";
        case KTWIN_E_IO: return "IoError";
        case KTWIN_E_INTERNAL: return "Internal";
    }
    return "Unknown";
}

const char* ktwin_last_error(void) { return g_last_error.c_str(); }

void ktwin_string_free(char* s) { std::free(s); }

/* ---- curves ---- */

ktwin_status ktwin_curve_new(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6,
                             ktwin_curve** out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = new ktwin_curve{make_curve(a1, a2, a3, a4, a6)};
        return KTWIN_OK;
    });
}

ktwin_status ktwin_curve_parse(const char* text, ktwin_curve** out) {
    return guarded([&]() -> ktwin_status {
        if (text == nullptr || out == nullptr) raise(errc::invalid_argument, "null argument");
        *out = new ktwin_curve{parse_curve(text)};
        return KTWIN_OK;
    });
}

void ktwin_curve_free(ktwin_curve* curve) { delete curve; }

int64_t ktwin_curve_discriminant(const ktwin_curve* curve) {
    return curve != nullptr ? curve->model.disc : 0;
}

ktwin_status ktwin_curve_reduce(const ktwin_curve* curve, uint64_t p, uint64_t* np, int64_t* ap) {
    return guarded([&]() -> ktwin_status {
        if (curve == nullptr) raise(errc::invalid_argument, "null curve");
        FrobeniusRecord rec = reduce_and_count(curve->model, p);
        if (np != nullptr) *np = rec.np;
        if (ap != nullptr) *ap = rec.ap;
        return KTWIN_OK;
    });
}

ktwin_status ktwin_curve_count_naive(const ktwin_curve* curve, uint64_t p, uint64_t* np) {
    return guarded([&]() -> ktwin_status {
        if (curve == nullptr || np == nullptr) raise(errc::invalid_argument, "null argument");
        *np = count_points_naive(curve->model, p);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_curve_count_bsgs(const ktwin_curve* curve, uint64_t p, uint64_t* np) {
    return guarded([&]() -> ktwin_status {
        if (curve == nullptr || np == nullptr) raise(errc::invalid_argument, "null argument");
        *np = count_points_bsgs(curve->model, p);
        return KTWIN_OK;
    });
}

/* ---- image ---- */

ktwin_status ktwin_image_full(uint64_t m_e, ktwin_image** out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = new ktwin_image{GaloisImageSpec::full_image(m_e)};
        return KTWIN_OK;
    });
}

ktwin_status ktwin_image_generators(uint64_t m_e, const uint64_t* entries, size_t n_matrices,
                                    ktwin_image** out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr || (entries == nullptr && n_matrices > 0))
            raise(errc::invalid_argument, "null argument");
        std::vector<MatrixModN> gens;
        gens.reserve(n_matrices);
        for (size_t i = 0; i < n_matrices; ++i)
            gens.push_back(make_matrix(m_e, entries[4 * i], entries[4 * i + 1],
                                       entries[4 * i + 2], entries[4 * i + 3]));
        *out = new ktwin_image{GaloisImageSpec::from_generators(m_e, std::move(gens))};
        return KTWIN_OK;
    });
}

ktwin_status ktwin_image_parse(uint64_t m_e, const char* text, ktwin_image** out) {
    return guarded([&]() -> ktwin_status {
        if (text == nullptr || out == nullptr) raise(errc::invalid_argument, "null argument");
        std::vector<MatrixModN> gens;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos || line[start] == '#') continue;
            size_t end = line.find_last_not_of(" \t\r");
            gens.push_back(parse_matrix(std::string_view(line).substr(start, end - start + 1), m_e));
        }
        *out = new ktwin_image{GaloisImageSpec::from_generators(m_e, std::move(gens))};
        return KTWIN_OK;
    });
}

void ktwin_image_free(ktwin_image* image) { delete image; }

ktwin_status ktwin_image_group_size(const ktwin_image* image, uint64_t* out) {
    return guarded([&]() -> ktwin_status {
        if (image == nullptr || out == nullptr) raise(errc::invalid_argument, "null argument");
        *out = image->spec.group_size();
        return KTWIN_OK;
    });
}

ktwin_status ktwin_image_omega_size(const ktwin_image* image, uint64_t* out) {
    return guarded([&]() -> ktwin_status {
        if (image == nullptr || out == nullptr) raise(errc::invalid_argument, "null argument");
        *out = image->spec.omega_size();
        return KTWIN_OK;
    });
}

ktwin_status ktwin_image_prob_coprime(const ktwin_image* image, int64_t* num, int64_t* den) {
    return guarded([&]() -> ktwin_status {
        if (image == nullptr || num == nullptr || den == nullptr)
            raise(errc::invalid_argument, "null argument");
        Rational r = image->spec.prob_coprime();
        *num = r.num();
        *den = r.den();
        return KTWIN_OK;
    });
}

/* ---- gl2 ---- */

ktwin_status ktwin_gl2_order(uint64_t n, uint64_t* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = gl2_order(n);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_gl2_count_c(uint64_t n, uint64_t* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = count_C(n);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_gl2_count_c_bruteforce(uint64_t n, uint64_t* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = count_C_bruteforce(n);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_gl2_density_prime(uint64_t ell, int64_t* num, int64_t* den) {
    return guarded([&]() -> ktwin_status {
        if (num == nullptr || den == nullptr) raise(errc::invalid_argument, "null argument");
        Rational r = density_C_prime(ell);
        *num = r.num();
        *den = r.den();
        return KTWIN_OK;
    });
}

ktwin_status ktwin_gl2_density_prime_squared(uint64_t ell, int64_t* num, int64_t* den) {
    return guarded([&]() -> ktwin_status {
        if (num == nullptr || den == nullptr) raise(errc::invalid_argument, "null argument");
        Rational r = density_C_prime_squared(ell);
        *num = r.num();
        *den = r.den();
        return KTWIN_OK;
    });
}

/* ---- constants ---- */

ktwin_status ktwin_twin_constant(uint64_t cutoff, ktwin_constant* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        ConstantEstimate est = twin_constant_classical(cutoff);
        *out = ktwin_constant{est.value, est.tail_bound, est.cutoff};
        return KTWIN_OK;
    });
}

ktwin_status ktwin_koblitz_constant(const ktwin_image* image, uint64_t cutoff,
                                    ktwin_constant* out) {
    return guarded([&]() -> ktwin_status {
        if (image == nullptr || out == nullptr) raise(errc::invalid_argument, "null argument");
        ConstantEstimate est = koblitz_constant(image->spec, cutoff);
        *out = ktwin_constant{est.value, est.tail_bound, est.cutoff};
        return KTWIN_OK;
    });
}

ktwin_status ktwin_constant_json(const ktwin_image* image, uint64_t cutoff, char** json_out) {
    return guarded([&]() -> ktwin_status {
        if (image == nullptr || json_out == nullptr) raise(errc::invalid_argument, "null argument");
        ConstantEstimate est = koblitz_constant(image->spec, cutoff);
        nlohmann::ordered_json j;
        j["value"] = est.value;
        j["interval"] = {est.lower(), est.upper()};
        j["tail_bound"] = est.tail_bound;
        j["cutoff"] = est.cutoff;
        j["image_mode"] = est.image_mode;
        *json_out = dup_string(j.dump(2) + "\n");
        return KTWIN_OK;
    });
}

/* ---- sieve ---- */

ktwin_status ktwin_r_of_theta(double theta, uint32_t* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = static_cast<uint32_t>(r_of_theta(theta));
        return KTWIN_OK;
    });
}

ktwin_status ktwin_alpha(double v, double* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = alpha(v);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_beta(double v, double* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = beta(v);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_j(double xi, double u, double v, double* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = J(xi, u, v);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_lower_bound_constant(double theta, double* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = lower_bound_constant(theta);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_upper_bound_constant(double theta, double epsilon, double* out) {
    return guarded([&]() -> ktwin_status {
        if (out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        *out = upper_bound_constant(theta, epsilon);
        return KTWIN_OK;
    });
}

ktwin_status ktwin_bounds_json(double theta, double epsilon, char** json_out) {
    return guarded([&]() -> ktwin_status {
        if (json_out == nullptr) raise(errc::invalid_argument, "out pointer is null");
        SieveParams params = SieveParams::from_theta(theta, epsilon);
        nlohmann::ordered_json j;
        j["theta"] = theta;
        j["eps"] = epsilon;
        j["r"] = params.r;
        j["xi"] = params.xi;
        j["U"] = params.U;
        j["V"] = params.V;
        j["lower_constant"] = lower_bound_constant(theta);
        j["paper_floor"] = 1.323 / (1.0 - theta);
        j["upper_constant"] = upper_bound_constant(theta, epsilon);
        j["conditions"] = check_conditions(params);
        *json_out = dup_string(j.dump(2) + "\n");
        return KTWIN_OK;
    });
}

/* ---- census ---- */

ktwin_status ktwin_census_run(const ktwin_curve* curve, const ktwin_image* image,
                              const ktwin_census_config* config, ktwin_census** out) {
    return guarded([&]() -> ktwin_status {
        if (curve == nullptr || image == nullptr || config == nullptr || out == nullptr)
            raise(errc::invalid_argument, "null argument");
        *out = nullptr;

        CensusConfig cfg;
        cfg.curve = curve->model;
        cfg.image = image->spec;
        cfg.x = config->x;
        cfg.params = SieveParams::from_theta(config->theta != 0.0 ? config->theta : 0.5,
                                             config->epsilon != 0.0 ? config->epsilon : 1e-3);
        if (config->constant_cutoff != 0) cfg.constant_cutoff = config->constant_cutoff;
        if (config->checkpoint_interval != 0) cfg.checkpoint_interval = config->checkpoint_interval;
        if (config->block_width != 0) cfg.block_width = config->block_width;
        cfg.threads = config->threads;
        cfg.max_blocks = config->max_blocks;
        if (config->checkpoint_path != nullptr) cfg.checkpoint_path = config->checkpoint_path;
        if (config->dump_csv_path != nullptr) cfg.dump_csv_path = config->dump_csv_path;

        uint64_t m_e = image->spec.m_e();
        if (config->ell_probes != nullptr) {
            cfg.ell_probes.assign(config->ell_probes, config->ell_probes + config->n_ell_probes);
        } else {
            cfg.ell_probes.clear();
            for (uint64_t ell : {2, 3, 5, 7})
                if (m_e % ell != 0) cfg.ell_probes.push_back(ell);
        }
        if (config->divisor_probes != nullptr) {
            cfg.divisor_probes.assign(config->divisor_probes,
                                      config->divisor_probes + config->n_divisor_probes);
        } else {
            cfg.divisor_probes.clear();
            for (uint64_t d : {1, 2, 3, 5, 6, 10, 15, 30})
                if (std::gcd(d, m_e) == 1) cfg.divisor_probes.push_back(d);
        }

        CensusRun run = run_census_ex(cfg);
        if (run.outcome == CensusOutcome::interrupted) return KTWIN_INTERRUPTED;
        *out = new ktwin_census{std::move(run.report)};
        return KTWIN_OK;
    });
}

void ktwin_census_free(ktwin_census* census) { delete census; }

ktwin_status ktwin_census_report_json(const ktwin_census* census, char** json_out) {
    return guarded([&]() -> ktwin_status {
        if (census == nullptr || json_out == nullptr) raise(errc::invalid_argument, "null argument");
        *json_out = dup_string(report_to_json(census->report));
        return KTWIN_OK;
    });
}

ktwin_status ktwin_census_divisor_check(const ktwin_census* census, uint64_t d, uint64_t* observed,
                                        double* predicted, double* residual) {
    return guarded([&]() -> ktwin_status {
        if (census == nullptr) raise(errc::invalid_argument, "null census");
        auto check = census->report.divisor_check(d);
        if (observed != nullptr) *observed = check.observed;
        if (predicted != nullptr) *predicted = check.predicted;
        if (residual != nullptr) *residual = check.residual;
        return KTWIN_OK;
    });
}

ktwin_status ktwin_plot_csv_from_report(const char* report_json, char** csv_out) {
    return guarded([&]() -> ktwin_status {
        if (report_json == nullptr || csv_out == nullptr)
            raise(errc::invalid_argument, "null argument");
        CensusReport rep = report_from_json(report_json);
        *csv_out = dup_string(plot_csv(rep));
        return KTWIN_OK;
    });
}

/* ---- self check ---- */

ktwin_status ktwin_self_check(char** text_out) {
    return guarded([&]() -> ktwin_status {
        SelfCheckResult result = run_self_check();
        if (text_out != nullptr) *text_out = dup_string(result.text);
        return result.ok ? KTWIN_OK : KTWIN_E_INTERNAL;
    });
}

} /* extern "C" */
