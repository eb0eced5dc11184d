// Drives the installed ktwin binary end to end. The binary path comes from
// CMake through KTWIN_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using json = nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string out_file =
        (std::filesystem::temp_directory_path() / "ktwin_cli_out.txt").string();
    std::string cmd = std::string(KTWIN_CLI_PATH) + " " + args + " >" + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(out_file, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    r.out = ss.str();
    return r;
}

std::string tmp_file(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("ktwin_cli_" + name)).string();
}

}  // namespace

TEST_CASE("bounds subcommand") {
    auto r = run_cli("bounds --theta 0.5");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("r") == 8);
    CHECK(j.at("upper_constant").get<double>() > 10.0);
    CHECK(j.at("upper_constant").get<double>() < 10.01);
    CHECK(j.at("lower_constant").get<double>() == doctest::Approx(2.64608).epsilon(1e-4));
    CHECK(j.at("conditions").empty());
}

TEST_CASE("gl2 subcommand") {
    auto r = run_cli("gl2 --count-C 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "4\n");

    r = run_cli("gl2 --order 4");
    CHECK(r.out == "96\n");

    r = run_cli("gl2 --density 2");
    CHECK(r.out == "2/3\n");

    r = run_cli("gl2 --density-sq 2");
    CHECK(r.out == "5/12\n");

    r = run_cli("gl2 --prob-coprime --me 2");
    CHECK(r.out == "1/3\n");

    r = run_cli("gl2");
    CHECK(r.exit_code == 2);
}

TEST_CASE("constant subcommand") {
    auto r = run_cli("constant --me 1 --cutoff 10000");
    REQUIRE(r.exit_code == 0);
    json j = json::parse(r.out);
    CHECK(j.at("value").get<double>() > 0.4);
    CHECK(j.at("value").get<double>() < 0.6);
    CHECK(j.at("cutoff") == 10000);
}

TEST_CASE("census subcommand with report and plot round trip") {
    std::string report = tmp_file("report.json");
    auto r = run_cli("census --curve 0,0,1,-1,0 --x 1000 --me 1 --out " + report);
    REQUIRE(r.exit_code == 0);
    json j = json::parse(std::ifstream(report));
    CHECK(j.at("n_good_primes") == 167);
    CHECK(j.at("excluded_primes") == json::array({37}));

    auto plot = run_cli("plot-data --report " + report);
    REQUIRE(plot.exit_code == 0);
    CHECK(plot.out.rfind("x,pi_twin,prediction,ratio\n", 0) == 0);

    // identical invocations produce byte-identical output
    auto again = run_cli("census --curve 0,0,1,-1,0 --x 1000 --me 1");
    auto again2 = run_cli("census --curve 0,0,1,-1,0 --x 1000 --me 1");
    CHECK(again.exit_code == 0);
    CHECK(again.out == again2.out);

    // csv format emits the plot table directly
    auto csv = run_cli("census --curve 0,0,1,-1,0 --x 1000 --me 1 --format csv");
    CHECK(csv.exit_code == 0);
    CHECK(csv.out.rfind("x,pi_twin,prediction,ratio\n", 0) == 0);
}

TEST_CASE("config file supplies defaults that flags override") {
    std::string cfg = tmp_file("cfg.txt");
    {
        std::ofstream out(cfg);
        out << "# defaults for a small run\n";
        out << "curve = 0,0,1,-1,0\n";
        out << "me = 1\n";
        out << "x = 1000\n";
    }
    auto r = run_cli("census --config " + cfg);
    REQUIRE(r.exit_code == 0);
    CHECK(json::parse(r.out).at("x") == 1000);

    auto overridden = run_cli("census --config " + cfg + " --x 2000");
    REQUIRE(overridden.exit_code == 0);
    CHECK(json::parse(overridden.out).at("x") == 2000);
}

TEST_CASE("usage and computation error exit codes") {
    CHECK(run_cli("census --x 1000").exit_code == 2);         // missing --curve
    CHECK(run_cli("bogus-subcommand").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("bounds --theta 0.3").exit_code == 1);      // OutOfRange
    CHECK(run_cli("census --curve 0,0,0,0,0 --x 1000").exit_code == 1);  // SingularCurve
    CHECK(run_cli("gl2 --count-C 500").exit_code == 1);       // CapExceeded
    CHECK(run_cli("plot-data --report /does/not/exist.json").exit_code == 1);
}

TEST_CASE("verify subcommand") {
    auto r = run_cli("verify");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("dump and checkpoint flags") {
    std::string dump = tmp_file("dump.csv");
    std::string ck = tmp_file("cli.ck");
    std::filesystem::remove(ck);
    auto r = run_cli("census --curve 0,0,1,-1,0 --x 1000 --dump-primes " + dump +
                     " --checkpoint " + ck + " --out " + tmp_file("cli_report.json"));
    REQUIRE(r.exit_code == 0);
    std::ifstream in(dump);
    std::string header;
    std::getline(in, header);
    CHECK(header == "p,ap,np,gcd_me,omega,big_omega");
    CHECK(std::filesystem::exists(ck));
    std::filesystem::remove(ck);
    std::filesystem::remove(dump);
}
