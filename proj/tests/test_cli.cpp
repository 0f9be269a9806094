/*
   Copyright 2026 The mmwi Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct Result {
    int code;
    std::string out;
};

Result sh(const std::string& args) {
    const std::string cmd = std::string(MMWI_CLI_PATH) + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_tmp(const std::string& name, const std::string& text) {
    const std::string path = "mmwi_cli_test_" + name;
    std::ofstream(path) << text;
    return path;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

const char* kSmall =
    "[network]\nlambda = 1e-3\ntwo_b = 2.6\nh = 10\nr_max = 200\n"
    "[array]\nn_c = 16\n[montecarlo]\ntrials = 300\nseed = 2\n[service]\nr0 = 20, 60\n";

}  // namespace

TEST_CASE("usage and unknown subcommands exit 1") {
    const Result none = sh("");
    CHECK(none.code == 1);
    const Result bad = sh("frobnicate --config x.ini");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("usage: mmwi") != std::string::npos);
}

TEST_CASE("invalid config exits 1 with the field name") {
    const std::string cfg = write_tmp("bad.ini", "[network]\nlambda = -1\n");
    const Result r = sh("service --config " + cfg);
    CHECK(r.code == 1);
    CHECK(r.out.find("network.lambda") != std::string::npos);
}

TEST_CASE("service writes the documented columns") {
    const std::string cfg = write_tmp("small.ini", kSmall);
    const Result r = sh("service --config " + cfg);
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("# mmwi ", 0) == 0);
    CHECK(r.out.find("\nr0,p_s\n20,") != std::string::npos);
    CHECK(r.out.find("# network.lambda = 0.001\n") != std::string::npos);
    CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("same seed, same bytes; --seed overrides") {
    const std::string cfg = write_tmp("small.ini", kSmall);
    const Result a = sh("montecarlo --config " + cfg);
    const Result b = sh("montecarlo --config " + cfg);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("r0,p_service,ci_lo,ci_hi,p_sc,sc_lo,sc_hi\n") != std::string::npos);
    const Result c = sh("montecarlo --seed 5 --config " + cfg);
    CHECK(c.out.find("# seed = 5\n") != std::string::npos);
    CHECK(c.out.find("# montecarlo.seed = 5\n") != std::string::npos);
}

TEST_CASE("output file and plot script") {
    const std::string cfg = write_tmp("small.ini", kSmall);
    const Result r = sh("service --config " + cfg + " --out mmwi_cli_test_out.csv --plot");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp("mmwi_cli_test_out.csv").find("r0,p_s") != std::string::npos);
    CHECK(slurp("mmwi_cli_test_out.py").find("import matplotlib") != std::string::npos);
}

TEST_CASE("non-convergence exits 2") {
    const std::string cfg =
        write_tmp("tight.ini", std::string(kSmall) + "[inversion]\ntol = 1e-14\nn_points = 64\n");
    const Result r = sh("service --config " + cfg);
    CHECK(r.code == 2);
    CHECK(r.out.find("no convergence") != std::string::npos);
}

TEST_CASE("other subcommands run on a small case") {
    const std::string cfg = write_tmp(
        "cf.ini", "[network]\nlambda = 1\ntwo_b = 2.6\nh = 5\n[cf]\nomega_min = 1\nomega_max = 1e4\nn_omega = 5\n"
                  "[invert]\nn_x = 5\n[montecarlo]\ntrials = 200\nr_max_num = 20\n"
                  "[sweep]\naxis = threshold\nvalues = 0 dB, 3 dB\n[service]\nr_bar = 10\nr0 = 2\n");
    const Result cf = sh("cf --config " + cfg);
    CHECK(cf.code == 0);
    CHECK(cf.out.find("omega,re_xi_prime,im_xi_prime,slope_estimate,re_psi,im_psi\n") != std::string::npos);
    const Result mix = sh("mixture --config " + cfg);
    CHECK(mix.code == 0);
    CHECK(mix.out.find("# omega_bar = ") != std::string::npos);
    const Result inv = sh("invert --config " + cfg);
    CHECK(inv.code == 0);
    CHECK(inv.out.find("x,cdf,pdf,cdf_mc\n") != std::string::npos);
    const Result sw = sh("sweep --config " + cfg);
    CHECK(sw.code == 0);
    CHECK(sw.out.find("value,n_c,n_v,avg_ps,users_served,signal,mean_interference,status\n") != std::string::npos);
    const Result v = sh("validate --config " + cfg);
    CHECK(v.code == 0);
    CHECK(v.out.find("# verdict = ") != std::string::npos);
}

TEST_CASE("sweep without values is a usage error") {
    const std::string cfg = write_tmp("nosweep.ini", kSmall);
    CHECK(sh("sweep --config " + cfg).code == 1);
}
