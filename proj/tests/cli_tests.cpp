// End-to-end checks of the command-line tool: exit codes, output formats,
// config precedence, byte determinism. Drives the installed binary the way a
// user would.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kBin = OMENT_CLI_PATH;
const fs::path kTmp = OMENT_TEST_TMPDIR;

struct RunResult {
    int exit_code;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    fs::create_directories(kTmp);
    const fs::path out = kTmp / "stdout.txt", err = kTmp / "stderr.txt";
    const std::string cmd = kBin + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, slurp(out), slurp(err)};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        rows.push_back(cells);
    }
    return rows;
}

}  // namespace

TEST_CASE("entangle: resonant plateau with default parameters") {
    const RunResult r = run("entangle --omega 0 --tau1 0");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["en_closed"].get<double>() == doctest::Approx(0.15911).epsilon(2e-3));
    CHECK(j["stability"].get<bool>());
    CHECK(j["nn1"].get<double>() == doctest::Approx(9415217.1).epsilon(1e-6));
    CHECK(j.contains("re_m"));
    CHECK(j.contains("r12"));
}

TEST_CASE("entangle: no parametric drive means no entanglement") {
    const RunResult r = run("entangle --g2 0 --omega 156.5");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["en_closed"].get<double>() == 0.0);
    CHECK(j["en_covariance"].get<double>() == 0.0);
}

TEST_CASE("entangle: unstable configuration exits 2 and names the criterion") {
    const RunResult r = run("entangle --kappa2 400000 --g1 1000000 --g2 1000000");
    CHECK(r.exit_code == 2);
    CHECK(r.err.find("unstable") != std::string::npos);
    CHECK(r.err.find("G1^2/G2^2") != std::string::npos);
}

TEST_CASE("bad flags and bad config files exit 1") {
    CHECK(run("entangle --gamma notanumber").exit_code == 1);
    CHECK(run("entangle --no-such-flag 3").exit_code == 1);
    CHECK(run("nosuchcommand").exit_code == 1);
    const fs::path cfg = kTmp / "broken.cfg";
    fs::create_directories(kTmp);
    std::ofstream(cfg) << "gamma is large\n";
    CHECK(run("entangle --config " + cfg.string()).exit_code == 1);
    CHECK(run("entangle --config /nonexistent/path.cfg").exit_code == 1);
}

TEST_CASE("quadrature tolerance override exits 3 on entangle") {
    fs::create_directories(kTmp);
    const std::string cmd = "env OMENT_QUAD_TOL=1e-24 " + kBin +
                            " entangle --omega 156.5 >" + (kTmp / "o.txt").string() + " 2>" +
                            (kTmp / "e.txt").string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
    CHECK(slurp(kTmp / "e.txt").find("quadrature") != std::string::npos);
}

TEST_CASE("config precedence: flag beats file beats default") {
    fs::create_directories(kTmp);
    const fs::path cfg = kTmp / "prec.cfg";
    std::ofstream(cfg) << "omega=5\ngamma=2\n";

    // file layer only: omega = 5 (band [0,10]), gamma = 2
    const RunResult file_only = run("entangle --config " + cfg.string());
    REQUIRE(file_only.exit_code == 0);

    // flag overrides omega; file still supplies gamma
    const RunResult flag_wins = run("entangle --config " + cfg.string() + " --omega 156.5");
    REQUIRE(flag_wins.exit_code == 0);
    const double nn1_peak = json::parse(flag_wins.out)["nn1"].get<double>();
    CHECK(nn1_peak < 1e5);  // far from the resonant value ~9.4e6

    // default layer: no config, no flags: omega = 0
    const RunResult defaults = run("entangle");
    REQUIRE(defaults.exit_code == 0);
    CHECK(json::parse(defaults.out)["nn1"].get<double>() ==
          doctest::Approx(9415217.1).epsilon(1e-6));
}

TEST_CASE("normalized frequency flags resolve against the realized rates") {
    const RunResult a = run("entangle --omega-over-kappa 0.001565");
    const RunResult b = run("entangle --omega 156.5");
    REQUIRE(a.exit_code == 0);
    REQUIRE(b.exit_code == 0);
    CHECK(json::parse(a.out)["nn1"].get<double>() ==
          doctest::Approx(json::parse(b.out)["nn1"].get<double>()).epsilon(1e-3));
}

TEST_CASE("sweep: csv shape, determinism, round trip") {
    fs::create_directories(kTmp);
    const std::string spec = "sweep --variable omega --from 100 --to 1000 --points 5 "
                             "--scale log";
    const fs::path f1 = kTmp / "s1.csv", f2 = kTmp / "s2.csv";
    REQUIRE(run(spec + " --output " + f1.string()).exit_code == 0);
    REQUIRE(run(spec + " --output " + f2.string()).exit_code == 0);
    const std::string text = slurp(f1);
    CHECK(text == slurp(f2));  // byte-identical reruns

    const auto rows = parse_csv(text);
    REQUIRE(rows.size() == 6);  // header + 5
    CHECK(rows[0].size() == 11);
    CHECK(rows[0][0] == "omega");
    CHECK(rows[0][10] == "en_approx");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 11);
        for (const std::string& cell : rows[i]) {
            if (cell.empty() || cell.rfind("ERR:", 0) == 0) continue;
            const double v = std::strtod(cell.c_str(), nullptr);
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.16e", v);
            CHECK(cell == buf);  // 17 significant digits, value preserving
        }
    }
}

TEST_CASE("sweep: two-point run emits three lines") {
    const RunResult r = run("sweep --variable omega --from 150 --to 160 --points 2");
    REQUIRE(r.exit_code == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 3);
}

TEST_CASE("sweep options can come from a config file") {
    fs::create_directories(kTmp);
    const fs::path cfg = kTmp / "sweep.cfg";
    std::ofstream(cfg) << "variable=omega\nfrom=150\nto=160\npoints=2\nscale=linear\n";
    const RunResult r = run("sweep --config " + cfg.string());
    REQUIRE(r.exit_code == 0);
    CHECK(parse_csv(r.out).size() == 3);
}

TEST_CASE("spectra emits the density columns") {
    const RunResult r = run("spectra --from -10 --to 10 --points 5");
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"omega", "n1", "n2", "re_m", "im_m"});
    // center row sits on resonance where n1 peaks
    const double n1_mid = std::strtod(rows[3][1].c_str(), nullptr);
    const double n1_edge = std::strtod(rows[1][1].c_str(), nullptr);
    CHECK(n1_mid > n1_edge);
}

TEST_CASE("optimize over the delay reports seed and argmax") {
    const RunResult r = run("optimize --over tau --omega 50000 --sigma 100000 "
                            "--g1 1000000 --g2 1000000");
    REQUIRE(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["analytic_seed"].get<double>() == doctest::Approx(3.75e-8).epsilon(1e-4));
    CHECK(j["argmax"].get<double>() == doctest::Approx(3.674e-8).epsilon(1e-2));
    CHECK(j["value"].get<double>() == doctest::Approx(1.6787).epsilon(1e-3));
    CHECK(j["value"].get<double>() >= j["seed_value"].get<double>() - 1e-12);
}

TEST_CASE("validate passes, is seed-stable, and fails controlled") {
    const RunResult a = run("validate --seed 99");
    REQUIRE(a.exit_code == 0);
    CHECK(a.out.find("metric-preservation: PASS") != std::string::npos);
    CHECK(a.out.find("stability-agreement: PASS") != std::string::npos);
    const RunResult b = run("validate --seed 99");
    CHECK(a.out == b.out);

    // corrupted quadrature tolerance: the delay-invariance group aborts,
    // validate reports it and exits 4
    const std::string cmd = "env OMENT_QUAD_TOL=1e-24 " + kBin + " validate --seed 99 >" +
                            (kTmp / "v.txt").string() + " 2>" + (kTmp / "ve.txt").string();
    const int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 4);
    const std::string vout = slurp(kTmp / "v.txt");
    CHECK(vout.find("delay-invariance: FAIL") != std::string::npos);
    CHECK(slurp(kTmp / "ve.txt").find("delay-invariance") != std::string::npos);
}
