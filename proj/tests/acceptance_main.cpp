// Acceptance suite: runs every headline requirement at its stated tolerance
// and prints one line per criterion. Exit code 0 only if all pass.

#include "femtodl/params.hpp"
#include "femtodl/validation.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace femtodl;
using validation::CheckResult;

namespace {

std::string g_cli;
std::string g_config;

struct Criterion {
    std::string label;
    bool pass = false;
    std::string detail;
    double runtime_s = 0.0;
};

Criterion aggregate(const std::string& label, const std::vector<CheckResult>& rs,
                    double runtime_limit_s = 0.0) {
    Criterion c;
    c.label = label;
    c.pass = true;
    double total = 0.0;
    double worst_dev = 0.0;
    std::string first_fail;
    for (const auto& r : rs) {
        total += r.runtime_s;
        worst_dev = std::max(worst_dev, r.tolerance > 0.0 ? r.deviation / r.tolerance
                                                          : r.deviation);
        if (!r.pass && first_fail.empty()) first_fail = r.name + ": " + r.detail;
        c.pass = c.pass && r.pass;
    }
    c.runtime_s = total;
    if (runtime_limit_s > 0.0 && total >= runtime_limit_s) {
        c.pass = false;
        first_fail = "runtime limit exceeded";
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%zu checks, worst deviation/tol=%.3g, %.2f s",
                  rs.size(), worst_dev, total);
    c.detail = c.pass ? buf : first_fail;
    return c;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>/dev/null";
    return WEXITSTATUS(std::system(cmd.c_str()));
}

Criterion determinism_criterion() {
    const auto t0 = std::chrono::steady_clock::now();
    Criterion c;
    c.label = "10. determinism: identical seed, identical bytes";
    c.pass = true;

    const std::string vargs = "validate --config " + g_config +
                              " --quick --drops 500 --fading 2 --seed 777 --out ";
    if (run_cli(vargs + "/tmp/femtodl_acc_v1.json") > 1 ||
        run_cli(vargs + "/tmp/femtodl_acc_v2.json") > 1) {
        c.pass = false;
        c.detail = "validate invocation failed";
    } else if (slurp("/tmp/femtodl_acc_v1.json") != slurp("/tmp/femtodl_acc_v2.json") ||
               slurp("/tmp/femtodl_acc_v1.json").empty()) {
        c.pass = false;
        c.detail = "validate reports differ between identical runs";
    }

    const std::string sargs = "sweep --config " + g_config +
                              " --var D --range 140:460:9 --seed 777 "
                              "--outputs tier-throughput,shared-access --out ";
    if (c.pass) {
        if (run_cli(sargs + "/tmp/femtodl_acc_s1") != 0 ||
            run_cli(sargs + "/tmp/femtodl_acc_s2") != 0) {
            c.pass = false;
            c.detail = "sweep invocation failed";
        } else if (slurp("/tmp/femtodl_acc_s1_tier-throughput.csv") !=
                       slurp("/tmp/femtodl_acc_s2_tier-throughput.csv") ||
                   slurp("/tmp/femtodl_acc_s1_shared-access.csv") !=
                       slurp("/tmp/femtodl_acc_s2_shared-access.csv") ||
                   slurp("/tmp/femtodl_acc_s1_tier-throughput.csv").empty()) {
            c.pass = false;
            c.detail = "sweep CSVs differ between identical runs";
        }
    }
    if (c.pass) c.detail = "validate + sweep reproduced byte-identically";
    c.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return c;
}

} // namespace

int main(int argc, char** argv) {
#ifdef FEMTODL_CLI_PATH
    g_cli = FEMTODL_CLI_PATH;
#endif
#ifdef FEMTODL_CONFIG_PATH
    g_config = FEMTODL_CONFIG_PATH;
#endif
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string a = argv[i];
        if (a == "--cli") g_cli = argv[i + 1];
        if (a == "--config") g_config = argv[i + 1];
    }
    if (g_config.empty()) {
        std::fprintf(stderr, "usage: acceptance --cli <femtodl> --config <table1.json>\n");
        return 1;
    }

    const SystemParams p = load_params_file(g_config);
    validation::Options o; // full sample counts: 1e5 per MC combo

    std::vector<Criterion> criteria;
    criteria.push_back(aggregate("1. threshold distance D_th = 130 m +- 1 m, < 1 ms",
                                 validation::check_threshold_distance(p)));
    criteria.push_back(aggregate("2. center-offset factor = 1.02 +- 0.005",
                                 validation::check_center_offset(p)));
    criteria.push_back(
        aggregate("3. closed form vs quadrature <= 1e-8 (200 triples/lemma), < 30 s",
                  validation::check_backend_equivalence(p, o), 30.0));
    criteria.push_back(
        aggregate("4. Monte Carlo oracle sup-distance <= 0.02 at >= 1e5 samples, < 5 min",
                  validation::check_mc_oracle(p, o), 300.0));
    criteria.push_back(aggregate("5. qualitative figure shapes on 50-point grids",
                                 validation::check_figure_shapes(p)));
    criteria.push_back(aggregate("6. closed-access cellular starvation < 0.003 bps/Hz",
                                 validation::check_starvation(p)));
    criteria.push_back(
        aggregate("7. proposition vs grid search <= 1e-3 on 100 feasible draws, < 1 min",
                  validation::check_prop1_vs_grid(p, o), 60.0));
    criteria.push_back(aggregate("8. shared-access ordering and cell-edge ratio",
                                 validation::check_shared_ordering(p)));
    criteria.push_back(
        aggregate("9. special functions vs quadrature oracles <= 1e-9 (1000 draws)",
                  validation::check_specfun(o)));
    if (!g_cli.empty()) {
        criteria.push_back(determinism_criterion());
    } else {
        Criterion c;
        c.label = "10. determinism: identical seed, identical bytes";
        c.pass = false;
        c.detail = "CLI path not provided";
        criteria.push_back(c);
    }

    bool all = true;
    for (const auto& c : criteria) {
        all = all && c.pass;
        std::printf("[%s] %s | %s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(),
                    c.detail.c_str());
    }
    std::printf("%s\n", all ? "ACCEPTANCE: ALL CRITERIA PASSED"
                            : "ACCEPTANCE: FAILURES PRESENT");
    return all ? 0 : 1;
}
