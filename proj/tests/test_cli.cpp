// Copyright (c) 2026 The onesided authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

// End-to-end checks of the command-line front end: exit codes, report
// contents, the verify-cert round trip, and byte determinism.

namespace {

using nlohmann::ordered_json;

std::string temp_json_path() {
    char templ[] = "/tmp/onesided_cli_XXXXXX";
    int fd = mkstemp(templ);
    REQUIRE(fd >= 0);
    close(fd);
    return std::string(templ) + ".json";
}

struct RunResult {
    int exit_code;
    std::string stdout_text;
    ordered_json report;
};

std::string bin_path() {
    const char* p = std::getenv("ONESIDED_BIN");
    return p ? p : "";
}

std::string instance(const std::string& name) {
    const char* p = std::getenv("ONESIDED_INSTANCES");
    REQUIRE(p);
    return std::string(p) + "/" + name;
}

RunResult run_cli(const std::string& args) {
    std::string out_file = temp_json_path();
    std::string cmd = bin_path() + " " + args + " > " + out_file + " 2>/dev/null";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    std::remove(out_file.c_str());
    if (!r.stdout_text.empty()) r.report = ordered_json::parse(r.stdout_text);
    return r;
}

}  // namespace

TEST_CASE("command line end-to-end", "[cli]") {
    if (bin_path().empty()) {
        SKIP("ONESIDED_BIN not set");
    }

    SECTION("decide: Z(1,-1) fails with delta = 1, eps0 = 1/2, exit 3") {
        auto r = run_cli("decide " + instance("z1_minus1.json"));
        REQUIRE(r.exit_code == 3);
        REQUIRE(r.report["verdict"] == "FailsB");
        REQUIRE(r.report["certificate"]["delta"]["coeffs"][0] == "1");
        REQUIRE(r.report["certificate"]["eps0"]["coeffs"][0] == "1/2");
        REQUIRE(r.report["routes"]["ii"]["holds"] == false);
        REQUIRE(r.report["routes"]["iii"]["holds"] == false);
    }

    SECTION("decide: Z^2 holds, exit 0") {
        auto r = run_cli("decide " + instance("z2.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["verdict"] == "HoldsB");
        REQUIRE(r.report["certificate"]["type"] == "positivity");
    }

    SECTION("gordan on (1 1): alternative ii with x = [1], exit 0") {
        auto r = run_cli("gordan " + instance("gordan_ones.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["alternative"] == "ii");
        REQUIRE(r.report["x"][0] == "1");
    }

    SECTION("farkas mixed-sign example: alternative i, exit 0") {
        auto r = run_cli("farkas " + instance("farkas_mixed.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["alternative"] == "i");
    }

    SECTION("reducible field polynomial: exit 2 with diagnostics") {
        auto r = run_cli("decide " + instance("reducible_field.json"));
        REQUIRE(r.exit_code == 2);
        REQUIRE(r.report["error"]["pointer"] == "/field");
        REQUIRE(r.report["error"]["message"].get<std::string>().find("reducible") != std::string::npos);
    }

    SECTION("witness on the pinched sqrt2 group: exit 0 and exact slack") {
        auto r = run_cli("witness " + instance("pinched_sqrt2.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["witness"]["m"] == "2");
    }

    SECTION("witness on Z(1,-1): no witness exists, exit 3 with certificate") {
        auto r = run_cli("witness " + instance("z1_minus1.json"));
        REQUIRE(r.exit_code == 3);
        REQUIRE(r.report["no_witness_exists"] == true);
        REQUIRE(r.report["certificate"]["type"] == "failure");
    }

    SECTION("density of tau_1 on the pinched sqrt2 group: Dense") {
        auto r = run_cli("density " + instance("density_tau1_pinched.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["classification"] == "Dense");
    }

    SECTION("property-a on Z(1,-1): exit 3 with witness") {
        auto r = run_cli("property-a " + instance("z1_minus1.json"));
        REQUIRE(r.exit_code == 3);
        REQUIRE(r.report["holds"] == false);
        REQUIRE(r.report["witness_m"][0] == "1");
    }

    SECTION("face of Z(1,-1)") {
        auto r = run_cli("face " + instance("z1_minus1.json"));
        REQUIRE(r.exit_code == 0);
        REQUIRE(r.report["face"]["support"] == ordered_json::array({1, 2}));
        REQUIRE(r.report["z_set"]["empty"] == false);
    }

    SECTION("unperforated flagship: exit 3, torsion-free and holey") {
        auto r = run_cli("unperforated " + instance("flagship_holey.json"));
        REQUIRE(r.exit_code == 3);
        REQUIRE(r.report["torsion_free"] == true);
        REQUIRE(r.report["convexity"] == "ConvexByTrivialIntersection");
        REQUIRE(r.report["verdict"] == "Perforated");
        REQUIRE(r.report["certificate"]["type"] == "failure");
    }

    SECTION("refinable: tau_1 is not refinable, tau_1 + sqrt2 tau_2 is") {
        auto r1 = run_cli("refinable " + instance("flagship_tau1.json"));
        REQUIRE(r1.exit_code == 3);
        REQUIRE(r1.report["verdict"] == "NotRefinable");
        auto r2 = run_cli("refinable " + instance("flagship_tau1_sqrt2tau2.json"));
        REQUIRE(r2.exit_code == 0);
        REQUIRE(r2.report["verdict"] == "Refinable");
    }

    SECTION("verify-cert round trip: emitted certificates re-verify with exit 0") {
        auto decide_run = run_cli("decide " + instance("z1_minus1.json"));
        REQUIRE(decide_run.exit_code == 3);
        // embed the emitted certificate into a verify-cert problem file
        std::ifstream in(instance("z1_minus1.json"));
        ordered_json problem = ordered_json::parse(in);
        problem["certificate"] = decide_run.report["certificate"];
        problem["sweep_radius"] = 50;
        std::string tmp = temp_json_path();
        std::ofstream out(tmp);
        out << problem.dump(2);
        out.close();
        auto verify_run = run_cli("verify-cert " + tmp);
        std::remove(tmp.c_str());
        REQUIRE(verify_run.exit_code == 0);
        REQUIRE(verify_run.report["valid"] == true);
        REQUIRE(verify_run.report["swept_candidates"] == 101);
    }

    SECTION("verify-cert round trip for positivity certificates") {
        auto decide_run = run_cli("decide " + instance("z2.json"));
        REQUIRE(decide_run.exit_code == 0);
        std::ifstream in(instance("z2.json"));
        ordered_json problem = ordered_json::parse(in);
        problem["certificate"] = decide_run.report["certificate"];
        std::string tmp = temp_json_path();
        std::ofstream out(tmp);
        out << problem.dump(2);
        out.close();
        auto verify_run = run_cli("verify-cert " + tmp);
        std::remove(tmp.c_str());
        REQUIRE(verify_run.exit_code == 0);
        REQUIRE(verify_run.report["valid"] == true);
    }

    SECTION("byte determinism of reports in single-thread mode") {
        auto a = run_cli("decide " + instance("pinched_sqrt2.json"));
        auto b = run_cli("decide " + instance("pinched_sqrt2.json"));
        REQUIRE(a.stdout_text == b.stdout_text);
        REQUIRE(!a.stdout_text.empty());
    }
}
