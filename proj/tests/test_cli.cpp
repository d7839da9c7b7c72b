// Drives the built CLI binary end to end: exit codes, output shape,
// and the reproducibility contract of the simulate subcommand.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

#ifndef NBLDPC_CLI_PATH
#error "NBLDPC_CLI_PATH must point at the built binary"
#endif

struct RunResult {
    int exit_code = -1;
    std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                                 "/nbldpc_cli_test_out.txt";
    const std::string cmd =
        std::string(NBLDPC_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    r.stdout_text = ss.str();
    std::remove(out_path.c_str());
    return r;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("threshold subcommand prints the reference value") {
    const RunResult r = run_cli("threshold --lambda y --rho y^2 --m 1");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("# lambda = y") != std::string::npos);
    // Last non-comment line carries the threshold.
    std::istringstream in(r.stdout_text);
    std::string line, value_line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') value_line = line;
    }
    CHECK(std::abs(std::strtod(value_line.c_str(), nullptr) - 0.5) < 5e-4);

    const RunResult r6 = run_cli("threshold --lambda y --rho y^2 --m 6");
    CHECK(r6.exit_code == 0);
    CHECK(r6.stdout_text.find("0.6464") != std::string::npos);
}

TEST_CASE("config errors exit with code 2") {
    CHECK(run_cli("threshold --lambda y --rho y^2 --m 1 --labels GF:zz").exit_code == 2);
    CHECK(run_cli("threshold --lambda 'y^'").exit_code == 2);
    CHECK(run_cli("threshold --lambda 0.5y --rho y^2").exit_code == 2);  // weights != 1
    CHECK(run_cli("threshold --no-such-flag").exit_code == 2);
    // Reducible polynomial mask.
    CHECK(run_cli("threshold --lambda y --rho y^2 --m 2 --labels GF:0x5").exit_code == 2);
}

TEST_CASE("unsupported analysis configurations exit with code 3") {
    CHECK(run_cli("threshold --lambda y --rho y^2 --m 5 --labels GF:0x25").exit_code == 3);
    CHECK(run_cli("evolve --epsilon 0.4 --lambda y --rho y^2 --m 5 --labels GF:0x25").exit_code ==
          3);
    CHECK(run_cli("simulate --epsilon 0.4 --n 50 --trials 2 --lambda y --rho y^2 --m 5 "
                  "--labels GF:0x25 --analysis de --out /tmp/nbldpc_t3.csv")
              .exit_code == 3);
    // The same simulation without the density-evolution summary is allowed.
    CHECK(run_cli("simulate --epsilon 0.4 --n 50 --trials 2 --max-iter 20 --lambda y --rho y^2 "
                  "--m 5 --labels GF:0x25 --analysis none --out /tmp/nbldpc_t3.csv")
              .exit_code == 0);
    std::remove("/tmp/nbldpc_t3.csv");
    // Finite-field labels with m <= 3 are inside the analysis scope.
    CHECK(run_cli("threshold --lambda y --rho y^2 --m 2 --labels GF:0x7").exit_code == 0);
}

TEST_CASE("evolve CSV: eps = 0 gives the single all-known row") {
    const RunResult r = run_cli("evolve --epsilon 0 --lambda y --rho y^2 --m 2");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.stdout_text);
    std::string line;
    int data_rows = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("iter,", 0) == 0) {
            CHECK(line == "iter,p0,p1,p2,expected_dim");
            saw_header = true;
            continue;
        }
        ++data_rows;
        CHECK(line == "1,1,0,0,0");
    }
    CHECK(saw_header);
    CHECK(data_rows == 1);
}

TEST_CASE("evolve CSV rows stay normalized below threshold") {
    const RunResult r = run_cli("evolve --epsilon 0.5 --lambda y --rho y^2 --m 2");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.stdout_text);
    std::string line;
    double last_expected = 1e300;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("iter,", 0) == 0) continue;
        double p0, p1, p2, ed;
        int iter;
        REQUIRE(std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf", &iter, &p0, &p1, &p2, &ed) == 5);
        CHECK(p0 + p1 + p2 == doctest::Approx(1.0).epsilon(1e-4));  // 6 sig digits
        CHECK(ed <= last_expected + 1e-9);
        last_expected = ed;
    }
    CHECK(last_expected < 1e-7);  // converged
}

TEST_CASE("exit subcommand reports the bound and a monotone curve") {
    const std::string curve_path = "/tmp/nbldpc_curve.csv";
    const RunResult r = run_cli("exit --lambda y --rho y^2 --m 2 --step 0.01 --out " + curve_path);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("0.577") != std::string::npos);

    std::istringstream in(slurp(curve_path));
    std::string line;
    double prev = -1.0, prev_eps = -1.0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line == "epsilon,h_bp") {
            saw_header = true;
            continue;
        }
        double eps, h;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &eps, &h) == 2);
        CHECK(eps > prev_eps);
        CHECK(h >= prev - 1e-9);
        CHECK(h >= 0.0);
        CHECK(h <= 1.0);
        prev = h;
        prev_eps = eps;
    }
    CHECK(saw_header);
    std::remove(curve_path.c_str());
}

TEST_CASE("stability subcommand: values and the vacuous case") {
    const RunResult m1 = run_cli("stability --lambda y --rho y^2 --m 1");
    CHECK(m1.exit_code == 0);
    CHECK(m1.stdout_text.find("\n0.5\n") != std::string::npos);

    const RunResult m2 = run_cli("stability --lambda y --rho y^2 --m 2");
    CHECK(m2.stdout_text.find("0.58113") != std::string::npos);  // sqrt(2.5) - 1

    const RunResult vac = run_cli("stability --lambda y^2 --rho y^3 --m 2");
    CHECK(vac.exit_code == 0);
    CHECK(vac.stdout_text.find("condition vacuous, bound = 1") != std::string::npos);
    CHECK(vac.stdout_text.find("\n1\n") != std::string::npos);
}

TEST_CASE("simulate is bit-identical across reruns with one seed") {
    const std::string out1 = "/tmp/nbldpc_sim1.csv", out2 = "/tmp/nbldpc_sim2.csv";
    const std::string hist1 = "/tmp/nbldpc_hist1.csv", hist2 = "/tmp/nbldpc_hist2.csv";
    const std::string args =
        "simulate --epsilon 0.5 --n 300 --trials 4 --max-iter 30 "
        "--lambda y --rho y^2 --m 2 ";
    CHECK(run_cli(args + "--seed 77 --out " + out1 + " --hist-out " + hist1).exit_code == 0);
    CHECK(run_cli(args + "--seed 77 --out " + out2 + " --hist-out " + hist2).exit_code == 0);
    const std::string a = slurp(out1);
    CHECK(!a.empty());
    CHECK(a == slurp(out2));
    CHECK(a.find("# seed = 77") != std::string::npos);
    CHECK(a.find("trial,iterations,symbol_erasure_rate,bit_erasure_rate") != std::string::npos);
    const std::string h = slurp(hist1);
    CHECK(h == slurp(hist2));
    CHECK(h.find("iter,dim,count") != std::string::npos);
    for (const auto& p : {out1, out2, hist1, hist2}) std::remove(p.c_str());

    // A different seed changes the records.
    const std::string out3 = "/tmp/nbldpc_sim3.csv";
    CHECK(run_cli(args + "--seed 78 --out " + out3).exit_code == 0);
    CHECK(a != slurp(out3));
    std::remove(out3.c_str());
}

TEST_CASE("ensemble config file feeds every subcommand") {
    const std::string path = "/tmp/nbldpc_ensemble.cfg";
    {
        std::ofstream out(path);
        out << "# mixed reference ensemble\n"
               "lambda = 0.5 y^1 + 0.5 y^4\n"
               "rho = y^5\n"
               "m = 2\n"
               "labels = GL\n";
    }
    const RunResult r = run_cli("threshold --config " + path);
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("0.4488") != std::string::npos);  // reference value 0.4487

    // Flags override single fields of the config.
    const RunResult r1 = run_cli("threshold --config " + path + " --m 1");
    CHECK(r1.exit_code == 0);
    CHECK(r1.stdout_text.find("0.3999") != std::string::npos);  // reference value 0.4

    CHECK(run_cli("threshold --config /tmp/does_not_exist.cfg").exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("simulate prints density-evolution predictions next to MC estimates") {
    const RunResult r = run_cli(
        "simulate --epsilon 0.65 --n 400 --trials 3 --max-iter 15 --seed 5 "
        "--lambda y --rho y^2 --m 2 --out /tmp/nbldpc_sim_de.csv");
    CHECK(r.exit_code == 0);
    CHECK(r.stdout_text.find("failure_fraction") != std::string::npos);
    CHECK(r.stdout_text.find("does not converge") != std::string::npos);
    CHECK(r.stdout_text.find("MC mean dim, DE expected dim") != std::string::npos);
    std::remove("/tmp/nbldpc_sim_de.csv");
}
