// Drives the installed command-line binary end to end through a shell.

#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#ifndef FORMSCHEME_CLI_PATH
#error "FORMSCHEME_CLI_PATH must be defined"
#endif

namespace {

namespace stdfs = std::filesystem;

struct RunResult {
    int code;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    stdfs::path tmp = stdfs::temp_directory_path() / "formscheme_cli_out.txt";
    std::string cmd = std::string(FORMSCHEME_CLI_PATH) + " " + args + " > " + tmp.string() + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream is(tmp);
    std::ostringstream os;
    os << is.rdbuf();
    return {WEXITSTATUS(rc), os.str()};
}

std::string slurp(const stdfs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("eig table output", "[cli]") {
    auto r = run_cli("eig --m 1 --q 2 --which Q --format csv");
    CHECK(r.code == 0);
    CHECK(r.out == "Q,0+,1\n0+,1,1\n1,1,-1\n");

    auto r3 = run_cli("eig --m 3 --q 2 --which Q --format csv");
    CHECK(r3.code == 0);
    // floor(3m/2)+1 = 5 rows plus the header
    int lines = 0;
    for (char c : r3.out) lines += c == '\n';
    CHECK(lines == 6);

    auto oracle = run_cli("eig --m 2 --q 2 --oracle --which Q");
    CHECK(oracle.code == 0);
    CHECK(oracle.out.find("PASS oracle validation") != std::string::npos);
}

TEST_CASE("construct, innerdist and code pipeline", "[cli]") {
    stdfs::path dir = stdfs::temp_directory_path() / "formscheme_cli_test";
    stdfs::create_directories(dir);
    stdfs::path forms = dir / "y33.json";

    auto c = run_cli("construct --family quad-oo --m 3 --d 3 --q 2 --out " + forms.string());
    REQUIRE(c.code == 0);
    nlohmann::json y = nlohmann::json::parse(slurp(forms));
    CHECK(y["forms"].size() == 8);
    CHECK(y["kind"] == "quadratic");

    auto d = run_cli("innerdist --in " + forms.string() + " --dual --design");
    REQUIRE(d.code == 0);
    nlohmann::json dist = nlohmann::json::parse(d.out);
    CHECK(dist["additive"] == true);
    CHECK(dist["design_degree"] == 2);
    auto& idx = dist["inner"]["index"];
    auto& val = dist["inner"]["values"];
    for (std::size_t t = 0; t < idx.size(); ++t)
        if (idx[t] == "3") CHECK(val[t] == "7");

    auto code = run_cli("code --in " + forms.string() + " --enum both");
    REQUIRE(code.code == 0);
    nlohmann::json cj = nlohmann::json::parse(code.out);
    CHECK(cj["equal"] == true);
    CHECK(cj["length"] == 7);
    CHECK(cj["min_distance"] == 1);

    // identical configuration produces byte-identical files
    stdfs::path forms2 = dir / "y33b.json";
    run_cli("construct --family quad-oo --m 3 --d 3 --q 2 --out " + forms2.string());
    CHECK(slurp(forms) == slurp(forms2));
    auto e1 = run_cli("eig --m 2 --q 3 --format json");
    auto e2 = run_cli("eig --m 2 --q 3 --format json");
    CHECK(e1.out == e2.out);
}

TEST_CASE("exit codes", "[cli]") {
    CHECK(run_cli("construct --family quad-oo --m 4 --d 3 --q 2").code == 1);  // parity
    CHECK(run_cli("construct --family sym --m 6 --d 2 --q 4 --cap 100").code == 3);  // cap
    CHECK(run_cli("verify --suite nosuch").code == 1);
    CHECK(run_cli("nosuchcommand").code == 1);
    CHECK(run_cli("eig --m 9 --q 5").code == 1);  // formula limit
}

TEST_CASE("FORMSCHEME_CAP environment override", "[cli]") {
    stdfs::path tmp = stdfs::temp_directory_path() / "formscheme_cap_out.txt";
    auto run_with_cap = [&](const std::string& args) {
        std::string cmd = std::string("FORMSCHEME_CAP=100 ") + FORMSCHEME_CLI_PATH + " " + args + " > " + tmp.string() + " 2>/dev/null";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    // 2^15 forms exceed the overridden cap; 8 forms do not
    CHECK(run_with_cap("construct --family quad-oo --m 5 --d 1 --q 2") == 3);
    CHECK(run_with_cap("construct --family quad-oo --m 3 --d 3 --q 2") == 0);
}

TEST_CASE("verify suite", "[cli]") {
    stdfs::path report = stdfs::temp_directory_path() / "formscheme_report.json";
    auto r = run_cli("verify --suite qnum --max-m 5 --max-q 3 --out " + report.string());
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    nlohmann::json j = nlohmann::json::parse(slurp(report));
    CHECK(j["pass"] == true);
    CHECK(j["suite"] == "qnum");
    CHECK(j["checks"].size() >= 1);
}
