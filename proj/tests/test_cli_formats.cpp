#include "doctest.h"

#include "qbailey/identities.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace qb;

namespace {

Exponent E(std::int64_t n) { return Exponent::from_int(n); }

struct RunResult {
    int rc;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(QIDENT_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

} // namespace

TEST_CASE("report_text formats") {
    IdentityParams p;
    auto r = verify_identity("pentagonal_multiple", p, E(10));
    CHECK(report_text(r) == "pentagonal_multiple [delta=0 n=1]: match to q^10");

    IdentityReport bad = compare_series(
        "demo", {},
        QSeries(QPoly::one(), E(5)),
        QSeries::zero(E(5)));
    CHECK(report_text(bad) == "demo: mismatch at q^0 (lhs 1, rhs 0)");

    auto err = verify_identity("no_such", p, E(4));
    CHECK(report_text(err) == "no_such: error: unknown identity: no_such");
}

TEST_CASE("report_json schema and round trip") {
    IdentityParams p;
    auto r = verify_identity("rr_multiple", p, E(8));
    std::string s = report_json(r);
    auto j = nlohmann::ordered_json::parse(s);
    // canonical form: re-serialization is byte-identical
    CHECK(j.dump() == s);
    CHECK(j["name"] == "rr_multiple");
    CHECK(j["status"] == "match");
    CHECK(j["verified_order"] == "16/2");
    CHECK(j["first_mismatch"].is_null());
    CHECK(j["terms"]["lhs"].is_number_integer());
    CHECK(j["millis"].is_number_integer());
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"name", "params", "status", "verified_order",
                                           "first_mismatch", "terms", "millis"});

    IdentityReport bad = compare_series("demo", {{"n", "1"}},
                                        QSeries(QPoly::monomial(Exponent::from_half(3)), E(4)),
                                        QSeries::zero(E(4)));
    auto jb = nlohmann::ordered_json::parse(report_json(bad));
    CHECK(jb["status"] == "mismatch");
    CHECK(jb["verified_order"] == "2/2");
    CHECK(jb["first_mismatch"]["exp"] == "3/2");
    CHECK(jb["first_mismatch"]["lhs"] == "1");
    CHECK(jb["first_mismatch"]["rhs"] == "0");
}

TEST_CASE("cli verify exit codes") {
    auto ok = run_cli("verify pentagonal_multiple rr_multiple --order 12");
    CHECK(ok.rc == 0);
    CHECK(ok.out.find("match to q^12") != std::string::npos);

    CHECK(run_cli("verify no_such_identity").rc == 2);
    CHECK(run_cli("bogus_subcommand").rc == 2);
    CHECK(run_cli("verify pentagonal_multiple --order 0").rc == 0);
    // engine error surfaces as exit 2
    CHECK(run_cli("verify pentagonal_multiple --delta 2 --order 4").rc == 2);
}

TEST_CASE("cli verify json output round trips") {
    auto res = run_cli("verify jacobi_triple --z 2*q^1 --order 10 --format json");
    CHECK(res.rc == 0);
    std::string line = res.out.substr(0, res.out.find('\n'));
    auto j = nlohmann::ordered_json::parse(line);
    CHECK(j.dump() == line);
    CHECK(j["status"] == "match");
    CHECK(j["params"]["z"] == "2*q^1");
}

TEST_CASE("cli list") {
    auto res = run_cli("list --format json");
    CHECK(res.rc == 0);
    auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["identities"].size() >= 20);
    for (const auto& row : j["identities"]) {
        CHECK(row.contains("name"));
        CHECK(row.contains("summary"));
    }
    auto filtered = run_cli("list --filter ag_ --format json");
    auto jf = nlohmann::ordered_json::parse(filtered.out);
    CHECK(jf["identities"].size() >= 2);
    CHECK(jf["identities"].size() < j["identities"].size());
}

TEST_CASE("cli dump oracles") {
    auto poch = run_cli("dump poch_inf --base q --order 7 --format json");
    CHECK(poch.rc == 0);
    auto j = nlohmann::ordered_json::parse(poch.out);
    // (q; q)_inf = 1 - q - q^2 + q^5 + q^7 - ...
    std::vector<std::pair<std::string, std::string>> want{
        {"0/2", "1"}, {"2/2", "-1"}, {"4/2", "-1"}, {"10/2", "1"}, {"14/2", "1"}};
    REQUIRE(j["terms"].size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(j["terms"][i]["exp"] == want[i].first);
        CHECK(j["terms"][i]["coeff"] == want[i].second);
    }

    auto gordon = run_cli("dump gordon_gf --k 2 --i 2 --order 6 --format json");
    auto jg = nlohmann::ordered_json::parse(gordon.out);
    std::vector<std::string> coeffs;
    for (const auto& t : jg["terms"]) coeffs.push_back(t["coeff"]);
    CHECK(coeffs == std::vector<std::string>{"1", "1", "1", "1", "2", "2", "3"});

    auto ag = run_cli("dump ag_product --k 2 --i 2 --order 6 --format json");
    CHECK(nlohmann::ordered_json::parse(ag.out)["terms"] == jg["terms"]);

    auto side = run_cli("dump side --identity rr_multiple --side lhs --order 6 --format json");
    CHECK(nlohmann::ordered_json::parse(side.out)["terms"] == jg["terms"]);

    CHECK(run_cli("dump no_such_expr").rc == 2);
    CHECK(run_cli("dump side --identity no_such").rc == 2);
    CHECK(run_cli("dump poch_inf --base nonsense").rc == 2);
}

TEST_CASE("cli config file defaults") {
    std::string path = "/tmp/qident_test.cfg";
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs("k = 2\ni = 2\norder = 6\nformat = json\n", f);
    fclose(f);
    auto res = run_cli("dump gordon_gf --config " + path);
    CHECK(res.rc == 0);
    auto j = nlohmann::ordered_json::parse(res.out);
    CHECK(j["terms"].size() == 7);
    // command line wins over the config value
    auto over = run_cli("dump gordon_gf --config " + path + " --order 2");
    CHECK(nlohmann::ordered_json::parse(over.out)["terms"].size() == 3);
    std::remove(path.c_str());
}
