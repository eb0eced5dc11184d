#include "census.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <future>
#include <numeric>
#include <thread>

#include "arith.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace ktwin {

namespace {

// ---------------------------------------------------------------------------
// Little-endian binary helpers for the checkpoint file
// ---------------------------------------------------------------------------

void put_u64(std::string& out, uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

struct ByteReader {
    const std::string& buf;
    size_t pos = 0;

    explicit ByteReader(const std::string& b) : buf(b) {}
    uint64_t u64() {
        if (pos + 8 > buf.size()) raise(errc::corrupt_checkpoint, "truncated checkpoint");
        uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= uint64_t(uint8_t(buf[pos + i])) << (8 * i);
        pos += 8;
        return v;
    }
};

uint64_t fnv1a(const void* data, size_t len, uint64_t h) {
    const auto* p = static_cast<const uint8_t*>(data);
    for (size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t fnv1a_str(const std::string& s, uint64_t h) { return fnv1a(s.data(), s.size(), h); }

constexpr uint64_t kFnvBasis = 0xcbf29ce484222325ull;
constexpr char kCheckpointMagic[5] = {'K', 'F', 'C', 'K', '1'};
constexpr uint64_t kCheckpointVersion = 1;

uint64_t dbl_bits(double v) { return std::bit_cast<uint64_t>(v); }
double bits_dbl(uint64_t v) { return std::bit_cast<double>(v); }

// ---------------------------------------------------------------------------
// Engine state: everything that survives a checkpoint/resume round trip
// ---------------------------------------------------------------------------

struct Tally {
    uint64_t n_good = 0, n_in_A = 0;
    uint64_t pi_twin = 0, pi_twin_all = 0;
    std::array<uint64_t, 16> p_r{};
    uint64_t S = 0, prime_small_or_gcd = 0;
    double H = 0.0;
    uint64_t gcd_twin_count = 0, gcd_twin_max_p = 0, sixteen_violations = 0;
    std::vector<uint64_t> ell_counts;  // aligned with config.ell_probes
    std::vector<uint64_t> div_counts;  // aligned with config.divisor_probes
    std::vector<uint64_t> excluded;
    std::string dump_rows;
};

struct EngineState {
    uint64_t next_block = 0;
    Tally total;
    std::vector<CensusSnapshot> snapshots;
    uint64_t dump_bytes = 0;
};

struct Env {
    uint64_t x = 0;
    uint64_t m_e = 1;
    SieveParams params;     // D filled
    double d_half = 0.0;    // D^(1/2)
    uint64_t n_blocks = 0;
    uint64_t snapshot_blocks = 1;
    ConstantEstimate constant;
    Rational prob_coprime = Rational(1);
    uint64_t config_hash = 0;
    bool dump = false;
};

void merge_into(Tally& total, const Tally& part) {
    total.n_good += part.n_good;
    total.n_in_A += part.n_in_A;
    total.pi_twin += part.pi_twin;
    total.pi_twin_all += part.pi_twin_all;
    for (size_t i = 0; i < total.p_r.size(); ++i) total.p_r[i] += part.p_r[i];
    total.S += part.S;
    total.prime_small_or_gcd += part.prime_small_or_gcd;
    total.H += part.H;
    total.gcd_twin_count += part.gcd_twin_count;
    total.gcd_twin_max_p = std::max(total.gcd_twin_max_p, part.gcd_twin_max_p);
    total.sixteen_violations += part.sixteen_violations;
    for (size_t i = 0; i < total.ell_counts.size(); ++i) total.ell_counts[i] += part.ell_counts[i];
    for (size_t i = 0; i < total.div_counts.size(); ++i) total.div_counts[i] += part.div_counts[i];
    total.excluded.insert(total.excluded.end(), part.excluded.begin(), part.excluded.end());
}

Tally process_block(const CensusConfig& cfg, const Env& env, uint64_t block) {
    Tally t;
    t.ell_counts.assign(cfg.ell_probes.size(), 0);
    t.div_counts.assign(cfg.divisor_probes.size(), 0);

    uint64_t lo = 2 + block * cfg.block_width;
    uint64_t hi = std::min(lo + cfg.block_width, env.x + 1);
    char row[96];

    for_each_prime(lo, hi, [&](uint64_t p) {
        if (!cfg.curve.good_reduction(p)) {
            t.excluded.push_back(p);
            return;
        }
        FrobeniusRecord rec = reduce_and_count(cfg.curve, p);
        ++t.n_good;
        uint64_t a = rec.np;
        FactoredInteger f = factorize(a);
        bool a_prime = f.is_prime();
        uint64_t g = std::gcd(a, env.m_e);

        for (size_t i = 0; i < cfg.ell_probes.size(); ++i)
            if (a % cfg.ell_probes[i] == 0) ++t.ell_counts[i];

        if (a_prime) {
            ++t.pi_twin_all;
            if (g > 1) {
                ++t.gcd_twin_count;
                t.gcd_twin_max_p = std::max(t.gcd_twin_max_p, p);
                if (p > 16 * env.m_e) ++t.sixteen_violations;
            }
            if (g > 1 || static_cast<double>(a) <= env.d_half) ++t.prime_small_or_gcd;
        }

        if (g == 1) {
            ++t.n_in_A;
            int omega = big_omega(f);
            for (int r = std::max(omega, 1); r <= 16; ++r) ++t.p_r[r - 1];
            if (a_prime) ++t.pi_twin;

            bool survives = true;
            double deficit = 0.0;
            for (const auto& [q, e] : f.factors) {
                if (env.m_e % q == 0) continue;  // not a sieve prime
                if (static_cast<double>(q) <= env.d_half) survives = false;
                deficit += greaves_deficit(q, env.params);
            }
            if (survives) ++t.S;
            t.H += deficit < 1.0 ? 1.0 - deficit : 0.0;

            for (size_t i = 0; i < cfg.divisor_probes.size(); ++i)
                if (a % cfg.divisor_probes[i] == 0) ++t.div_counts[i];
        }

        if (env.dump) {
            int len = std::snprintf(row, sizeof(row), "%llu,%lld,%llu,%llu,%d,%d\n",
                                    static_cast<unsigned long long>(p),
                                    static_cast<long long>(rec.ap),
                                    static_cast<unsigned long long>(a),
                                    static_cast<unsigned long long>(g), little_omega(f),
                                    big_omega(f));
            t.dump_rows.append(row, static_cast<size_t>(len));
        }
    });
    return t;
}

// ---------------------------------------------------------------------------
// Checkpoint serialization
// ---------------------------------------------------------------------------

void append_block(std::string& out, const std::string& payload) {
    put_u64(out, payload.size());
    out += payload;
}

std::string serialize_state(const EngineState& st, const Env& env, uint64_t block_width) {
    std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));

    std::string body;  // all payloads, checksummed at the end
    auto emit = [&](const std::string& payload) {
        append_block(out, payload);
        body += payload;
    };

    std::string b;
    put_u64(b, kCheckpointVersion);
    put_u64(b, env.config_hash);
    put_u64(b, env.x);
    put_u64(b, block_width);
    put_u64(b, st.next_block);
    emit(b);

    b.clear();
    const Tally& t = st.total;
    put_u64(b, t.n_good);
    put_u64(b, t.n_in_A);
    put_u64(b, t.pi_twin);
    put_u64(b, t.pi_twin_all);
    for (uint64_t v : t.p_r) put_u64(b, v);
    put_u64(b, t.S);
    put_u64(b, t.prime_small_or_gcd);
    put_u64(b, dbl_bits(t.H));
    put_u64(b, t.gcd_twin_count);
    put_u64(b, t.gcd_twin_max_p);
    put_u64(b, t.sixteen_violations);
    emit(b);

    auto emit_vec = [&](const std::vector<uint64_t>& v) {
        std::string p;
        put_u64(p, v.size());
        for (uint64_t x : v) put_u64(p, x);
        emit(p);
    };
    emit_vec(t.excluded);
    emit_vec(t.ell_counts);
    emit_vec(t.div_counts);

    b.clear();
    put_u64(b, st.snapshots.size());
    for (const CensusSnapshot& s : st.snapshots) {
        put_u64(b, s.x);
        put_u64(b, s.n_good);
        put_u64(b, s.n_in_A);
        put_u64(b, s.pi_twin);
        put_u64(b, s.pi_twin_all);
        put_u64(b, s.empirical_S);
        put_u64(b, s.n_prime_small_or_gcd);
        put_u64(b, dbl_bits(s.empirical_H));
        put_u64(b, dbl_bits(s.prediction_li2));
        put_u64(b, dbl_bits(s.prediction_log2));
        put_u64(b, s.ub1_holds ? 1 : 0);
    }
    emit(b);

    b.clear();
    put_u64(b, env.dump ? 1 : 0);
    put_u64(b, st.dump_bytes);
    emit(b);

    std::string tail;
    put_u64(tail, fnv1a_str(body, kFnvBasis));
    append_block(out, tail);
    return out;
}

EngineState deserialize_state(const std::string& raw, const Env& env, uint64_t block_width) {
    if (raw.size() < sizeof(kCheckpointMagic) ||
        raw.compare(0, sizeof(kCheckpointMagic), kCheckpointMagic, sizeof(kCheckpointMagic)) != 0)
        raise(errc::corrupt_checkpoint, "bad magic");

    ByteReader r(raw);
    r.pos = sizeof(kCheckpointMagic);
    std::string body;
    auto next_payload = [&]() -> std::string {
        uint64_t len = r.u64();
        if (len > raw.size() - r.pos) raise(errc::corrupt_checkpoint, "bad block length");
        std::string payload = raw.substr(r.pos, len);
        r.pos += len;
        body += payload;
        return payload;
    };

    EngineState st;
    {
        std::string p = next_payload();
        ByteReader h(p);
        if (h.u64() != kCheckpointVersion) raise(errc::corrupt_checkpoint, "unknown version");
        if (h.u64() != env.config_hash)
            raise(errc::invalid_argument, "checkpoint belongs to a different configuration");
        if (h.u64() != env.x || h.u64() != block_width)
            raise(errc::invalid_argument, "checkpoint belongs to a different configuration");
        st.next_block = h.u64();
        if (h.pos != p.size()) raise(errc::corrupt_checkpoint, "header size mismatch");
    }
    {
        std::string p = next_payload();
        ByteReader h(p);
        Tally& t = st.total;
        t.n_good = h.u64();
        t.n_in_A = h.u64();
        t.pi_twin = h.u64();
        t.pi_twin_all = h.u64();
        for (auto& v : t.p_r) v = h.u64();
        t.S = h.u64();
        t.prime_small_or_gcd = h.u64();
        t.H = bits_dbl(h.u64());
        t.gcd_twin_count = h.u64();
        t.gcd_twin_max_p = h.u64();
        t.sixteen_violations = h.u64();
        if (h.pos != p.size()) raise(errc::corrupt_checkpoint, "tally size mismatch");
    }
    auto read_vec = [&](std::vector<uint64_t>& v) {
        std::string p = next_payload();
        ByteReader h(p);
        uint64_t n = h.u64();
        if (p.size() != 8 * (n + 1)) raise(errc::corrupt_checkpoint, "vector size mismatch");
        v.resize(n);
        for (auto& x : v) x = h.u64();
    };
    read_vec(st.total.excluded);
    read_vec(st.total.ell_counts);
    read_vec(st.total.div_counts);
    {
        std::string p = next_payload();
        ByteReader h(p);
        uint64_t n = h.u64();
        if (p.size() != 8 * (11 * n + 1)) raise(errc::corrupt_checkpoint, "snapshot size mismatch");
        st.snapshots.resize(n);
        for (auto& s : st.snapshots) {
            s.x = h.u64();
            s.n_good = h.u64();
            s.n_in_A = h.u64();
            s.pi_twin = h.u64();
            s.pi_twin_all = h.u64();
            s.empirical_S = h.u64();
            s.n_prime_small_or_gcd = h.u64();
            s.empirical_H = bits_dbl(h.u64());
            s.prediction_li2 = bits_dbl(h.u64());
            s.prediction_log2 = bits_dbl(h.u64());
            s.ub1_holds = h.u64() != 0;
        }
    }
    {
        std::string p = next_payload();
        ByteReader h(p);
        bool had_dump = h.u64() != 0;
        if (had_dump != env.dump)
            raise(errc::invalid_argument, "checkpoint dump setting differs from configuration");
        st.dump_bytes = h.u64();
    }
    {
        uint64_t len = r.u64();
        if (len != 8 || r.pos + 8 != raw.size()) raise(errc::corrupt_checkpoint, "bad trailer");
        if (r.u64() != fnv1a_str(body, kFnvBasis))
            raise(errc::corrupt_checkpoint, "checksum mismatch");
    }
    return st;
}

void write_checkpoint_file(const std::string& path, const std::string& data) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) raise(errc::io_error, "cannot write checkpoint " + tmp);
        out.write(data.data(), static_cast<std::streamsize>(data.size()));
        if (!out) raise(errc::io_error, "short write on checkpoint " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) raise(errc::io_error, "cannot move checkpoint into place: " + ec.message());
}

// ---------------------------------------------------------------------------
// Config digestion
// ---------------------------------------------------------------------------

uint64_t hash_config(const CensusConfig& cfg, const Env& env) {
    uint64_t h = kFnvBasis;
    h = fnv1a_str(cfg.curve.str(), h);
    auto mix = [&](uint64_t v) { h = fnv1a(&v, 8, h); };
    mix(cfg.image.m_e());
    h = fnv1a_str(cfg.image.mode_label(), h);
    for (const auto& g : cfg.image.generators()) h = fnv1a_str(g.str(), h);
    mix(cfg.x);
    mix(cfg.block_width);
    mix(env.snapshot_blocks);
    mix(cfg.constant_cutoff);
    mix(dbl_bits(cfg.params.theta));
    mix(dbl_bits(cfg.params.epsilon));
    mix(dbl_bits(env.params.xi));
    mix(dbl_bits(env.params.U));
    mix(dbl_bits(env.params.V));
    for (uint64_t v : cfg.ell_probes) mix(v);
    for (uint64_t v : cfg.divisor_probes) mix(v);
    mix(cfg.dump_csv_path.empty() ? 0 : 1);
    return h;
}

Env make_env(const CensusConfig& cfg) {
    if (cfg.x < 100) raise(errc::invalid_argument, "census bound must be at least 100");
    if (cfg.x > kCensusMaxX)
        raise(errc::invalid_argument, "census bound exceeds the 64-bit safety cap of 1e15");
    if (cfg.block_width < 1024) raise(errc::invalid_argument, "block width must be >= 1024");

    Env env;
    env.x = cfg.x;
    env.m_e = cfg.image.m_e();
    env.params = cfg.params;
    if (env.params.r == 0) env.params.r = r_of_theta(env.params.theta);
    if (env.params.xi == 0.0)
        env.params.xi = 2.0 * (1.0 - env.params.theta) * (1.0 - env.params.epsilon) / 5.0;
    env.params.D = std::pow(static_cast<double>(cfg.x), env.params.xi);
    auto violated = check_conditions(env.params);
    if (!violated.empty()) {
        std::string msg = "inadmissible sieve parameters:";
        for (const auto& v : violated) msg += " [" + v + "]";
        raise(errc::invalid_argument, msg);
    }
    env.d_half = std::pow(env.params.D, 0.5);

    for (uint64_t ell : cfg.ell_probes) {
        if (!is_prime_u64(ell)) raise(errc::invalid_argument, "density probes must be prime");
        if (env.m_e % ell == 0)
            raise(errc::not_coprime, "density probe " + std::to_string(ell) + " divides m_e");
    }
    for (uint64_t d : cfg.divisor_probes) {
        if (d == 0 || d > kDivisorProbeMax)
            raise(errc::out_of_range, "divisor probes must lie in [1, 10^4]");
        if (!factorize(d).squarefree())
            raise(errc::not_squarefree, "divisor probe " + std::to_string(d) + " is not squarefree");
        if (std::gcd(d, env.m_e) != 1)
            raise(errc::not_coprime,
                  "divisor probe " + std::to_string(d) + " shares a factor with m_e");
    }

    env.n_blocks = (cfg.x - 2) / cfg.block_width + 1;
    uint64_t interval = cfg.checkpoint_interval;
    if (interval == 0) interval = std::max(cfg.x / 16, cfg.block_width);
    env.snapshot_blocks = std::max<uint64_t>(1, interval / cfg.block_width);

    env.prob_coprime = cfg.image.prob_coprime();  // materializes the image
    env.constant = koblitz_constant(cfg.image, cfg.constant_cutoff);
    env.dump = !cfg.dump_csv_path.empty();
    env.config_hash = hash_config(cfg, env);
    return env;
}

constexpr const char* kDumpHeader = "p,ap,np,gcd_me,omega,big_omega\n";

}  // namespace

// ---------------------------------------------------------------------------
// Derived report views
// ---------------------------------------------------------------------------

Rational CensusReport::density_observed(uint64_t ell) const {
    auto it = ell_counts.find(ell);
    if (it == ell_counts.end())
        raise(errc::invalid_argument, "density probe " + std::to_string(ell) + " was not tallied");
    if (n_good_primes == 0) return Rational(0);
    return Rational(static_cast<int64_t>(it->second), static_cast<int64_t>(n_good_primes));
}

CensusReport::DivisorCheck CensusReport::divisor_check(uint64_t d) const {
    auto it = divisor_counts.find(d);
    if (it == divisor_counts.end())
        raise(errc::invalid_argument, "divisor " + std::to_string(d) + " was not tallied");
    double density = 1.0;
    for (const auto& [p, e] : factorize(d).factors)
        density *= density_C_prime(p).to_double();
    DivisorCheck check;
    check.observed = it->second;
    check.predicted = density * prob_coprime.to_double() * li_x;
    check.residual = static_cast<double>(check.observed) - check.predicted;
    return check;
}

double CensusReport::greaves_ratio() const {
    return greaves_main_term > 0.0 ? empirical_H / greaves_main_term : 0.0;
}

// ---------------------------------------------------------------------------
// Engine
// ---------------------------------------------------------------------------

Omega1Probe omega1_probe(uint64_t m_e, double D) {
    Omega1Probe probe;
    for (uint64_t z = 2; static_cast<double>(2 * z) <= D; z *= 2) {
        double sum = 0.0;
        for (uint64_t ell : primes_in_range(z, 2 * z)) {
            if (m_e % ell == 0) continue;
            sum += density_C_prime(ell).to_double() * std::log(static_cast<double>(ell));
        }
        double dev = std::fabs(sum - std::log(2.0));
        probe.sup = std::max(probe.sup, dev);
        ++probe.windows;
    }
    return probe;
}

namespace {

CensusReport finalize_report(const CensusConfig& cfg, const Env& env, const EngineState& st) {
    CensusReport rep;
    rep.x = cfg.x;
    rep.curve = cfg.curve;
    rep.m_e = env.m_e;
    rep.image_mode = cfg.image.mode_label();
    rep.params = env.params;
    rep.block_width = cfg.block_width;
    rep.snapshot_blocks = env.snapshot_blocks;

    const Tally& t = st.total;
    rep.n_good_primes = t.n_good;
    rep.n_in_A = t.n_in_A;
    rep.pi_twin = t.pi_twin;
    rep.pi_twin_all = t.pi_twin_all;
    rep.p_r_counts = t.p_r;
    rep.empirical_H = t.H;
    rep.empirical_S = t.S;
    rep.n_prime_small_or_gcd = t.prime_small_or_gcd;
    rep.excluded_primes = t.excluded;
    rep.gcd_twin_count = t.gcd_twin_count;
    rep.gcd_twin_max_p = t.gcd_twin_max_p;
    rep.sixteen_me_violations = t.sixteen_violations;
    for (size_t i = 0; i < cfg.ell_probes.size(); ++i)
        rep.ell_counts[cfg.ell_probes[i]] = t.ell_counts[i];
    for (size_t i = 0; i < cfg.divisor_probes.size(); ++i)
        rep.divisor_counts[cfg.divisor_probes[i]] = t.div_counts[i];

    Omega1Probe probe = omega1_probe(env.m_e, env.params.D);
    rep.omega1_sup = probe.sup;
    rep.omega1_windows = probe.windows;

    rep.constant = env.constant;
    rep.prob_coprime = env.prob_coprime;
    double x = static_cast<double>(cfg.x);
    double logx = std::log(x);
    rep.li_x = li(x);
    rep.li2_x = li2(x);
    rep.prediction_log2 = env.constant.value * x / (logx * logx);
    rep.prediction_li2 = env.constant.value * rep.li2_x;
    rep.greaves_main_term =
        2.0 * J(env.params.xi, env.params.U, env.params.V) * env.constant.value * x / (logx * logx);
    rep.checkpoints = st.snapshots;
    return rep;
}

}  // namespace

CensusRun run_census_ex(const CensusConfig& cfg) {
    Env env = make_env(cfg);

    EngineState st;
    st.total.ell_counts.assign(cfg.ell_probes.size(), 0);
    st.total.div_counts.assign(cfg.divisor_probes.size(), 0);

    bool resumed = false;
    if (!cfg.checkpoint_path.empty() && std::filesystem::exists(cfg.checkpoint_path)) {
        std::ifstream in(cfg.checkpoint_path, std::ios::binary);
        if (!in) raise(errc::io_error, "cannot read checkpoint " + cfg.checkpoint_path);
        std::string raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        st = deserialize_state(raw, env, cfg.block_width);
        if (st.total.ell_counts.size() != cfg.ell_probes.size() ||
            st.total.div_counts.size() != cfg.divisor_probes.size())
            raise(errc::corrupt_checkpoint, "probe table size mismatch");
        resumed = true;
    }

    std::ofstream dump;
    if (env.dump) {
        if (resumed && st.next_block > 0) {
            if (!std::filesystem::exists(cfg.dump_csv_path))
                raise(errc::io_error, "dump file missing on resume: " + cfg.dump_csv_path);
            std::filesystem::resize_file(cfg.dump_csv_path, st.dump_bytes);
            dump.open(cfg.dump_csv_path, std::ios::binary | std::ios::app);
            if (!dump) raise(errc::io_error, "cannot append to dump " + cfg.dump_csv_path);
        } else {
            dump.open(cfg.dump_csv_path, std::ios::binary | std::ios::trunc);
            if (!dump) raise(errc::io_error, "cannot write dump " + cfg.dump_csv_path);
            dump << kDumpHeader;
            st.dump_bytes = std::string(kDumpHeader).size();
        }
    }

    unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
    if (threads == 0) threads = 1;

    std::deque<std::pair<uint64_t, std::future<Tally>>> inflight;
    uint64_t next_submit = st.next_block;
    auto top_up = [&] {
        while (inflight.size() < threads && next_submit < env.n_blocks) {
            uint64_t k = next_submit++;
            inflight.emplace_back(k, std::async(std::launch::async, [&cfg, &env, k] {
                                      return process_block(cfg, env, k);
                                  }));
        }
    };

    uint64_t merged_this_run = 0;
    while (st.next_block < env.n_blocks) {
        top_up();
        auto [k, fut] = std::move(inflight.front());
        inflight.pop_front();
        Tally part = fut.get();

        if (env.dump && !part.dump_rows.empty()) {
            dump.write(part.dump_rows.data(), static_cast<std::streamsize>(part.dump_rows.size()));
            st.dump_bytes += part.dump_rows.size();
        }
        merge_into(st.total, part);
        st.next_block = k + 1;
        ++merged_this_run;

        bool final_block = st.next_block == env.n_blocks;
        bool on_schedule = st.next_block % env.snapshot_blocks == 0;
        if (on_schedule || final_block) {
            CensusSnapshot snap;
            snap.x = std::min(2 + st.next_block * cfg.block_width - 1, env.x);
            snap.n_good = st.total.n_good;
            snap.n_in_A = st.total.n_in_A;
            snap.pi_twin = st.total.pi_twin;
            snap.pi_twin_all = st.total.pi_twin_all;
            snap.empirical_S = st.total.S;
            snap.n_prime_small_or_gcd = st.total.prime_small_or_gcd;
            snap.empirical_H = st.total.H;
            double xs = static_cast<double>(snap.x);
            double logxs = std::log(xs);
            snap.prediction_li2 = env.constant.value * li2(xs);
            snap.prediction_log2 = env.constant.value * xs / (logxs * logxs);
            snap.ub1_holds = snap.pi_twin_all <= snap.empirical_S + snap.n_prime_small_or_gcd;
            st.snapshots.push_back(snap);
        }

        bool interrupted = cfg.max_blocks != 0 && merged_this_run >= cfg.max_blocks && !final_block;
        if (!cfg.checkpoint_path.empty() && (on_schedule || final_block || interrupted)) {
            if (env.dump) dump.flush();
            write_checkpoint_file(cfg.checkpoint_path, serialize_state(st, env, cfg.block_width));
        }
        if (interrupted) {
            if (cfg.checkpoint_path.empty())
                raise(errc::invalid_argument, "interrupting a run requires a checkpoint path");
            CensusRun run;
            run.outcome = CensusOutcome::interrupted;
            return run;
        }
    }

    CensusRun run;
    run.outcome = CensusOutcome::complete;
    run.report = finalize_report(cfg, env, st);
    return run;
}

CensusReport run_census(const CensusConfig& cfg) {
    CensusConfig full = cfg;
    full.max_blocks = 0;
    return run_census_ex(full).report;
}

}  // namespace ktwin
