// ktwin command-line tool. Links the C API of libktwin only.
//
//   ktwin constant  --me 1 --cutoff 1000000
//   ktwin bounds    --theta 0.5 --eps 1e-3
//   ktwin gl2       --count-C 2
//   ktwin census    --curve 0,0,1,-1,0 --me 1 --x 1000000 --out report.json
//   ktwin plot-data --report report.json --out points.csv
//   ktwin verify
//
// Exit codes: 0 success, 1 computation error (error name on stderr),
// 2 usage error.

#include <ktwin.h>

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitComputation = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
    void operator()(char* s) const { ktwin_string_free(s); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct CurveDeleter {
    void operator()(ktwin_curve* c) const { ktwin_curve_free(c); }
};
struct ImageDeleter {
    void operator()(ktwin_image* i) const { ktwin_image_free(i); }
};
struct CensusDeleter {
    void operator()(ktwin_census* c) const { ktwin_census_free(c); }
};

int fail(ktwin_status status) {
    std::fprintf(stderr, "%s: %s\n", ktwin_status_name(status), ktwin_last_error());
    return kExitComputation;
}

int write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return kExitOk;
    }
    std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "IoError: cannot write %s\n", out_path.c_str());
        return kExitComputation;
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    return out ? kExitOk : kExitComputation;
}

// Flat key=value defaults, overridden by anything given on the command line.
std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::map<std::string, std::string> kv;
    std::ifstream in(path);
    if (!in) {
        std::fprintf(stderr, "cannot read config file %s\n", path.c_str());
        std::exit(kExitUsage);
    }
    std::string line;
    while (std::getline(in, line)) {
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        size_t eq = line.find('=', start);
        if (eq == std::string::npos) {
            std::fprintf(stderr, "config line is not key=value: %s\n", line.c_str());
            std::exit(kExitUsage);
        }
        auto trim = [](std::string s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

struct ImageSpec {
    uint64_t m_e = 1;
    std::string image = "full";  // "full" or "gens:<file>"

    ktwin_image* open() const {
        ktwin_image* img = nullptr;
        ktwin_status st;
        if (image == "full") {
            st = ktwin_image_full(m_e, &img);
        } else if (image.rfind("gens:", 0) == 0) {
            std::ifstream in(image.substr(5));
            if (!in) {
                std::fprintf(stderr, "IoError: cannot read generator file %s\n",
                             image.substr(5).c_str());
                return nullptr;
            }
            std::stringstream ss;
            ss << in.rdbuf();
            st = ktwin_image_parse(m_e, ss.str().c_str(), &img);
        } else {
            std::fprintf(stderr, "InvalidArgument: --image must be 'full' or 'gens:<file>'\n");
            return nullptr;
        }
        if (st != KTWIN_OK) {
            fail(st);
            return nullptr;
        }
        return img;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"elliptic-curve almost-prime census toolkit"};
    app.require_subcommand(1);

    // --config is resolved before CLI11 runs so flags can override file values.
    std::map<std::string, std::string> file_cfg;
    std::vector<std::string> args(argv + 1, argv + argc);
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            file_cfg = load_config_file(args[i + 1]);
            args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            file_cfg = load_config_file(args[i].substr(9));
            args.erase(args.begin() + static_cast<long>(i));
            break;
        }
    }
    auto cfg_str = [&](const char* key, std::string dflt) {
        auto it = file_cfg.find(key);
        return it != file_cfg.end() ? it->second : dflt;
    };
    auto cfg_u64 = [&](const char* key, uint64_t dflt) {
        auto it = file_cfg.find(key);
        return it != file_cfg.end() ? std::stoull(it->second) : dflt;
    };
    auto cfg_dbl = [&](const char* key, double dflt) {
        auto it = file_cfg.find(key);
        return it != file_cfg.end() ? std::stod(it->second) : dflt;
    };

    std::string curve_spec = cfg_str("curve", "");
    ImageSpec image{cfg_u64("me", 1), cfg_str("image", "full")};
    double theta = cfg_dbl("theta", 0.5);
    double eps = cfg_dbl("eps", 1e-3);
    uint64_t x = cfg_u64("x", 0);
    uint64_t cutoff = cfg_u64("cutoff", 1000000);
    std::string out_path = cfg_str("out", "");
    std::string format = cfg_str("format", "json");
    std::string dump_path = cfg_str("dump-primes", "");
    std::string checkpoint_path = cfg_str("checkpoint", "");
    uint64_t interval = cfg_u64("interval", 0);
    unsigned threads = static_cast<unsigned>(cfg_u64("threads", 0));

    // constant
    auto* cmd_constant = app.add_subcommand("constant", "Euler-product constant for an image");
    cmd_constant->add_option("--me", image.m_e, "Serre modulus M_E");
    cmd_constant->add_option("--image", image.image, "full | gens:<file>");
    cmd_constant->add_option("--cutoff", cutoff, "largest prime in the product");
    cmd_constant->add_option("--out", out_path, "output path (default stdout)");

    // bounds
    auto* cmd_bounds = app.add_subcommand("bounds", "sieve constants for a zero-free exponent");
    cmd_bounds->add_option("--theta", theta, "zero-free exponent in [1/2, 1)");
    cmd_bounds->add_option("--eps", eps, "epsilon in the level exponent");
    cmd_bounds->add_option("--out", out_path, "output path (default stdout)");

    // gl2
    auto* cmd_gl2 = app.add_subcommand("gl2", "matrix-class counts and densities");
    uint64_t count_c_n = 0, order_n = 0, density_l = 0, density_sq_l = 0;
    bool want_prob = false, want_omega = false;
    auto* opt_count = cmd_gl2->add_option("--count-C", count_c_n, "|C(n)| by brute force");
    auto* opt_order = cmd_gl2->add_option("--order", order_n, "|GL2(Z/nZ)|");
    auto* opt_density = cmd_gl2->add_option("--density", density_l, "|C(l)|/|G(l)| closed form");
    auto* opt_density_sq =
        cmd_gl2->add_option("--density-sq", density_sq_l, "|C(l^2)|/|G(l^2)| closed form");
    cmd_gl2->add_flag("--prob-coprime", want_prob, "1 - |Omega(M_E)|/|G(M_E)| for --me/--image");
    cmd_gl2->add_flag("--count-omega", want_omega, "|Omega(M_E)| for --me/--image");
    cmd_gl2->add_option("--me", image.m_e, "Serre modulus M_E");
    cmd_gl2->add_option("--image", image.image, "full | gens:<file>");
    cmd_gl2->add_option("--out", out_path, "output path (default stdout)");

    // census
    auto* cmd_census = app.add_subcommand("census", "stream primes and tally the statistics");
    cmd_census->add_option("--curve", curve_spec, "a1,a2,a3,a4,a6")->required(curve_spec.empty());
    cmd_census->add_option("--me", image.m_e, "Serre modulus M_E");
    cmd_census->add_option("--image", image.image, "full | gens:<file>");
    cmd_census->add_option("--x", x, "census bound")->required(x == 0);
    cmd_census->add_option("--theta", theta, "zero-free exponent");
    cmd_census->add_option("--eps", eps, "epsilon in the level exponent");
    cmd_census->add_option("--cutoff", cutoff, "Euler-product cutoff for predictions");
    cmd_census->add_option("--out", out_path, "output path (default stdout)");
    cmd_census->add_option("--format", format, "json | csv (plot-ready prefix table)");
    cmd_census->add_option("--dump-primes", dump_path, "per-prime CSV dump path");
    cmd_census->add_option("--checkpoint", checkpoint_path, "checkpoint file (resumes if present)");
    cmd_census->add_option("--interval", interval, "x-units between snapshots");
    cmd_census->add_option("--threads", threads, "worker threads (0 = auto)");

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "cross-check closed forms against brute force");

    // plot-data
    auto* cmd_plot = app.add_subcommand("plot-data", "emit x,pi_twin,prediction,ratio CSV");
    std::string report_path;
    cmd_plot->add_option("--report", report_path, "census report JSON")->required();
    cmd_plot->add_option("--out", out_path, "output path (default stdout)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    }

    if (cmd_constant->parsed()) {
        std::unique_ptr<ktwin_image, ImageDeleter> img(image.open());
        if (!img) return kExitComputation;
        char* json = nullptr;
        ktwin_status st = ktwin_constant_json(img.get(), cutoff, &json);
        if (st != KTWIN_OK) return fail(st);
        CString guard(json);
        return write_output(json, out_path);
    }

    if (cmd_bounds->parsed()) {
        char* json = nullptr;
        ktwin_status st = ktwin_bounds_json(theta, eps, &json);
        if (st != KTWIN_OK) return fail(st);
        CString guard(json);
        return write_output(json, out_path);
    }

    if (cmd_gl2->parsed()) {
        char buf[64];
        if (*opt_count) {
            uint64_t v = 0;
            ktwin_status st = ktwin_gl2_count_c_bruteforce(count_c_n, &v);
            if (st != KTWIN_OK) return fail(st);
            std::snprintf(buf, sizeof(buf), "%llu\n", static_cast<unsigned long long>(v));
            return write_output(buf, out_path);
        }
        if (*opt_order) {
            uint64_t v = 0;
            ktwin_status st = ktwin_gl2_order(order_n, &v);
            if (st != KTWIN_OK) return fail(st);
            std::snprintf(buf, sizeof(buf), "%llu\n", static_cast<unsigned long long>(v));
            return write_output(buf, out_path);
        }
        if (*opt_density || *opt_density_sq) {
            int64_t num = 0, den = 1;
            ktwin_status st = *opt_density ? ktwin_gl2_density_prime(density_l, &num, &den)
                                           : ktwin_gl2_density_prime_squared(density_sq_l, &num, &den);
            if (st != KTWIN_OK) return fail(st);
            std::snprintf(buf, sizeof(buf), "%lld/%lld\n", static_cast<long long>(num),
                          static_cast<long long>(den));
            return write_output(buf, out_path);
        }
        if (want_prob || want_omega) {
            std::unique_ptr<ktwin_image, ImageDeleter> img(image.open());
            if (!img) return kExitComputation;
            if (want_omega) {
                uint64_t v = 0;
                ktwin_status st = ktwin_image_omega_size(img.get(), &v);
                if (st != KTWIN_OK) return fail(st);
                std::snprintf(buf, sizeof(buf), "%llu\n", static_cast<unsigned long long>(v));
                return write_output(buf, out_path);
            }
            int64_t num = 0, den = 1;
            ktwin_status st = ktwin_image_prob_coprime(img.get(), &num, &den);
            if (st != KTWIN_OK) return fail(st);
            std::snprintf(buf, sizeof(buf), "%lld/%lld\n", static_cast<long long>(num),
                          static_cast<long long>(den));
            return write_output(buf, out_path);
        }
        std::fprintf(stderr, "usage error: gl2 needs one of --count-C, --order, --density, "
                             "--density-sq, --prob-coprime, --count-omega\n");
        return kExitUsage;
    }

    if (cmd_census->parsed()) {
        if (format != "json" && format != "csv") {
            std::fprintf(stderr, "usage error: --format must be json or csv\n");
            return kExitUsage;
        }
        ktwin_curve* curve_raw = nullptr;
        ktwin_status st = ktwin_curve_parse(curve_spec.c_str(), &curve_raw);
        if (st != KTWIN_OK) return fail(st);
        std::unique_ptr<ktwin_curve, CurveDeleter> curve(curve_raw);
        std::unique_ptr<ktwin_image, ImageDeleter> img(image.open());
        if (!img) return kExitComputation;

        ktwin_census_config config{};
        config.x = x;
        config.theta = theta;
        config.epsilon = eps;
        config.constant_cutoff = cutoff;
        config.checkpoint_interval = interval;
        config.threads = threads;
        if (!checkpoint_path.empty()) config.checkpoint_path = checkpoint_path.c_str();
        if (!dump_path.empty()) config.dump_csv_path = dump_path.c_str();

        ktwin_census* census_raw = nullptr;
        st = ktwin_census_run(curve.get(), img.get(), &config, &census_raw);
        if (st != KTWIN_OK) return fail(st);
        std::unique_ptr<ktwin_census, CensusDeleter> census(census_raw);

        char* json = nullptr;
        st = ktwin_census_report_json(census.get(), &json);
        if (st != KTWIN_OK) return fail(st);
        CString json_guard(json);
        if (format == "json") return write_output(json, out_path);

        char* csv = nullptr;
        st = ktwin_plot_csv_from_report(json, &csv);
        if (st != KTWIN_OK) return fail(st);
        CString csv_guard(csv);
        return write_output(csv, out_path);
    }

    if (cmd_verify->parsed()) {
        char* text = nullptr;
        ktwin_status st = ktwin_self_check(&text);
        CString guard(text);
        if (text != nullptr) std::fwrite(text, 1, std::string(text).size(), stdout);
        if (st == KTWIN_OK) {
            std::printf("all checks passed\n");
            return kExitOk;
        }
        if (st == KTWIN_E_INTERNAL) {
            std::printf("checks FAILED\n");
            return kExitComputation;
        }
        return fail(st);
    }

    if (cmd_plot->parsed()) {
        std::ifstream in(report_path, std::ios::binary);
        if (!in) {
            std::fprintf(stderr, "IoError: cannot read report %s\n", report_path.c_str());
            return kExitComputation;
        }
        std::stringstream ss;
        ss << in.rdbuf();
        char* csv = nullptr;
        ktwin_status st = ktwin_plot_csv_from_report(ss.str().c_str(), &csv);
        if (st != KTWIN_OK) return fail(st);
        CString guard(csv);
        return write_output(csv, out_path);
    }

    std::fprintf(stderr, "usage error: no subcommand given\n");
    return kExitUsage;
}
