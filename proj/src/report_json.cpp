#include <charconv>
#include <json.hpp>

#include "census.hpp"
#include "errors.hpp"

namespace ktwin {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kSchema = "ktwin.census.v1";

json rational_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}};
}

Rational rational_from(const json& j) {
    return Rational(j.at("num").get<int64_t>(), j.at("den").get<int64_t>());
}

std::string fmt_double(double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) raise(errc::internal, "double formatting failed");
    return std::string(buf, ptr);
}

}  // namespace

std::string report_to_json(const CensusReport& rep) {
    json j;
    j["schema"] = kSchema;
    j["x"] = rep.x;
    j["curve"] = json{{"a1", rep.curve.a1}, {"a2", rep.curve.a2}, {"a3", rep.curve.a3},
                      {"a4", rep.curve.a4}, {"a6", rep.curve.a6}, {"disc", rep.curve.disc}};
    j["m_e"] = rep.m_e;
    j["image_mode"] = rep.image_mode;
    j["params"] = json{{"theta", rep.params.theta}, {"epsilon", rep.params.epsilon},
                       {"xi", rep.params.xi},       {"U", rep.params.U},
                       {"V", rep.params.V},         {"D", rep.params.D},
                       {"r", rep.params.r}};
    j["engine"] = json{{"block_width", rep.block_width}, {"snapshot_blocks", rep.snapshot_blocks}};

    j["n_good_primes"] = rep.n_good_primes;
    j["n_in_A"] = rep.n_in_A;
    j["pi_twin"] = rep.pi_twin;
    j["pi_twin_all"] = rep.pi_twin_all;
    j["p_r_counts"] = rep.p_r_counts;

    json divisors = json::object();
    for (const auto& [d, count] : rep.divisor_counts) divisors[std::to_string(d)] = count;
    j["divisor_counts"] = divisors;

    j["empirical_H"] = rep.empirical_H;
    j["empirical_S"] = rep.empirical_S;
    j["n_prime_small_or_gcd"] = rep.n_prime_small_or_gcd;

    json density = json::object();
    json ells = json::object();
    for (const auto& [ell, count] : rep.ell_counts) {
        ells[std::to_string(ell)] = count;
        density[std::to_string(ell)] = rational_json(rep.density_observed(ell));
    }
    j["density_observed"] = density;
    j["ell_counts"] = ells;
    j["excluded_primes"] = rep.excluded_primes;
    j["prob_coprime"] = rational_json(rep.prob_coprime);
    j["li_x"] = rep.li_x;
    j["li2_x"] = rep.li2_x;

    json pred;
    pred["koblitz_constant"] =
        json{{"value", rep.constant.value},   {"tail_bound", rep.constant.tail_bound},
             {"lower", rep.constant.lower()}, {"upper", rep.constant.upper()},
             {"cutoff", rep.constant.cutoff}, {"image_mode", rep.constant.image_mode}};
    pred["pi_twin_x_log2"] = rep.prediction_log2;
    pred["pi_twin_li2"] = rep.prediction_li2;
    pred["greaves_main_term"] = rep.greaves_main_term;
    json closed = json::object();
    for (const auto& [ell, count] : rep.ell_counts)
        closed[std::to_string(ell)] = rational_json(density_C_prime(ell));
    pred["density_closed_form"] = closed;
    json div_checks = json::object();
    for (const auto& [d, count] : rep.divisor_counts) {
        auto check = rep.divisor_check(d);
        div_checks[std::to_string(d)] = json{{"observed", check.observed},
                                             {"predicted", check.predicted},
                                             {"residual", check.residual}};
    }
    pred["divisors"] = div_checks;
    j["predictions"] = pred;

    j["greaves"] = json{{"empirical_H", rep.empirical_H},
                        {"main_term", rep.greaves_main_term},
                        {"ratio", rep.greaves_ratio()}};
    j["ub1"] = json{{"pi_twin_all", rep.pi_twin_all},
                    {"empirical_S", rep.empirical_S},
                    {"n_prime_small_or_gcd", rep.n_prime_small_or_gcd},
                    {"holds", rep.ub1_holds()}};
    j["sixteen_me"] = json{{"count", rep.gcd_twin_count},
                           {"max_p", rep.gcd_twin_max_p},
                           {"bound", 16 * rep.m_e},
                           {"violations", rep.sixteen_me_violations}};
    j["omega1"] = json{{"windows", rep.omega1_windows}, {"sup", rep.omega1_sup}};

    json snaps = json::array();
    for (const auto& s : rep.checkpoints) {
        snaps.push_back(json{{"x", s.x},
                             {"n_good", s.n_good},
                             {"n_in_A", s.n_in_A},
                             {"pi_twin", s.pi_twin},
                             {"pi_twin_all", s.pi_twin_all},
                             {"empirical_S", s.empirical_S},
                             {"n_prime_small_or_gcd", s.n_prime_small_or_gcd},
                             {"empirical_H", s.empirical_H},
                             {"prediction_li2", s.prediction_li2},
                             {"prediction_log2", s.prediction_log2},
                             {"ub1_holds", s.ub1_holds}});
    }
    j["checkpoints"] = snaps;
    return j.dump(2) + "\n";
}

CensusReport report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        raise(errc::invalid_argument, std::string("report is not valid JSON: ") + e.what());
    }
    try {
        if (j.at("schema").get<std::string>() != kSchema)
            raise(errc::invalid_argument, "unknown report schema");

        CensusReport rep;
        rep.x = j.at("x").get<uint64_t>();
        const json& c = j.at("curve");
        rep.curve = make_curve(c.at("a1").get<int64_t>(), c.at("a2").get<int64_t>(),
                               c.at("a3").get<int64_t>(), c.at("a4").get<int64_t>(),
                               c.at("a6").get<int64_t>());
        if (rep.curve.disc != c.at("disc").get<int64_t>())
            raise(errc::invalid_argument, "curve discriminant does not match coefficients");
        rep.m_e = j.at("m_e").get<uint64_t>();
        rep.image_mode = j.at("image_mode").get<std::string>();
        const json& p = j.at("params");
        rep.params.theta = p.at("theta").get<double>();
        rep.params.epsilon = p.at("epsilon").get<double>();
        rep.params.xi = p.at("xi").get<double>();
        rep.params.U = p.at("U").get<double>();
        rep.params.V = p.at("V").get<double>();
        rep.params.D = p.at("D").get<double>();
        rep.params.r = p.at("r").get<int>();
        rep.block_width = j.at("engine").at("block_width").get<uint64_t>();
        rep.snapshot_blocks = j.at("engine").at("snapshot_blocks").get<uint64_t>();

        rep.n_good_primes = j.at("n_good_primes").get<uint64_t>();
        rep.n_in_A = j.at("n_in_A").get<uint64_t>();
        rep.pi_twin = j.at("pi_twin").get<uint64_t>();
        rep.pi_twin_all = j.at("pi_twin_all").get<uint64_t>();
        const json& prc = j.at("p_r_counts");
        if (!prc.is_array() || prc.size() != rep.p_r_counts.size())
            raise(errc::invalid_argument, "p_r_counts must have 16 entries");
        for (size_t i = 0; i < rep.p_r_counts.size(); ++i)
            rep.p_r_counts[i] = prc[i].get<uint64_t>();

        for (const auto& [key, value] : j.at("divisor_counts").items())
            rep.divisor_counts[std::stoull(key)] = value.get<uint64_t>();
        rep.empirical_H = j.at("empirical_H").get<double>();
        rep.empirical_S = j.at("empirical_S").get<uint64_t>();
        rep.n_prime_small_or_gcd = j.at("n_prime_small_or_gcd").get<uint64_t>();
        for (const auto& [key, value] : j.at("ell_counts").items())
            rep.ell_counts[std::stoull(key)] = value.get<uint64_t>();
        rep.excluded_primes = j.at("excluded_primes").get<std::vector<uint64_t>>();
        rep.prob_coprime = rational_from(j.at("prob_coprime"));
        rep.li_x = j.at("li_x").get<double>();
        rep.li2_x = j.at("li2_x").get<double>();

        const json& pred = j.at("predictions");
        const json& kc = pred.at("koblitz_constant");
        rep.constant.value = kc.at("value").get<double>();
        rep.constant.tail_bound = kc.at("tail_bound").get<double>();
        rep.constant.cutoff = kc.at("cutoff").get<uint64_t>();
        rep.constant.image_mode = kc.at("image_mode").get<std::string>();
        rep.prediction_log2 = pred.at("pi_twin_x_log2").get<double>();
        rep.prediction_li2 = pred.at("pi_twin_li2").get<double>();
        rep.greaves_main_term = pred.at("greaves_main_term").get<double>();

        const json& sm = j.at("sixteen_me");
        rep.gcd_twin_count = sm.at("count").get<uint64_t>();
        rep.gcd_twin_max_p = sm.at("max_p").get<uint64_t>();
        rep.sixteen_me_violations = sm.at("violations").get<uint64_t>();
        rep.omega1_windows = j.at("omega1").at("windows").get<uint64_t>();
        rep.omega1_sup = j.at("omega1").at("sup").get<double>();

        if (!j.contains("checkpoints"))
            raise(errc::missing_checkpoints, "report has no checkpointed prefix tallies");
        for (const auto& s : j.at("checkpoints")) {
            CensusSnapshot snap;
            snap.x = s.at("x").get<uint64_t>();
            snap.n_good = s.at("n_good").get<uint64_t>();
            snap.n_in_A = s.at("n_in_A").get<uint64_t>();
            snap.pi_twin = s.at("pi_twin").get<uint64_t>();
            snap.pi_twin_all = s.at("pi_twin_all").get<uint64_t>();
            snap.empirical_S = s.at("empirical_S").get<uint64_t>();
            snap.n_prime_small_or_gcd = s.at("n_prime_small_or_gcd").get<uint64_t>();
            snap.empirical_H = s.at("empirical_H").get<double>();
            snap.prediction_li2 = s.at("prediction_li2").get<double>();
            snap.prediction_log2 = s.at("prediction_log2").get<double>();
            snap.ub1_holds = s.at("ub1_holds").get<bool>();
            rep.checkpoints.push_back(snap);
        }
        return rep;
    } catch (const json::exception& e) {
        raise(errc::invalid_argument, std::string("malformed report: ") + e.what());
    }
}

std::string plot_csv(const CensusReport& rep) {
    std::string out = "x,pi_twin,prediction,ratio\n";
    for (const auto& s : rep.checkpoints) {
        double ratio =
            s.prediction_li2 > 0.0 ? static_cast<double>(s.pi_twin) / s.prediction_li2 : 0.0;
        out += std::to_string(s.x) + "," + std::to_string(s.pi_twin) + "," +
               fmt_double(s.prediction_li2) + "," + fmt_double(ratio) + "\n";
    }
    return out;
}

}  // namespace ktwin
