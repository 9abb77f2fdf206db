// anr: command-line front end for the A-numerical-radius check suite.
//
//   anr repro
//   anr check --instance inst.json [--check-id id|all] [--tol 1e-8]
//   anr fuzz --trials N --n-min 2 --n-max 6 --rank-policy mixed --seed S [--json out] [--csv out]
//   anr scan-sharpness --check-id id --trials N --top 10
//
// Exit codes: 0 all pass or skip, 1 violation, 2 usage or input error, 3 repro mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "anr/harness.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRepro = 3;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw anr::Error(anr::ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

void emit(const anr::Report& rep, const std::string& json_path, const std::string& csv_path) {
    if (!json_path.empty()) write_file(json_path, anr::report_to_json(rep).dump(2) + "\n");
    if (!csv_path.empty()) write_file(csv_path, anr::report_to_csv(rep));
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

void print_summary(const anr::Report& rep, bool show_top) {
    for (const auto& s : rep.summary) {
        std::cout << s.check_id << "  evaluated=" << s.evaluated << " skipped=" << s.skipped
                  << " violations=" << s.violations;
        if (s.min_rel_slack) std::cout << " min_rel_slack=" << fmt(*s.min_rel_slack) << " seed=" << s.sharpest_seed;
        std::cout << '\n';
        if (show_top)
            for (const auto& [seed, rel] : s.top) std::cout << "    seed=" << seed << " rel_slack=" << fmt(rel) << '\n';
    }
    std::cout << "trials=" << rep.trials << " rows=" << rep.rows.size() << " skipped=" << rep.skipped()
              << " violations=" << rep.violations() << '\n';
}

struct RunOptions {
    anr::FuzzConfig cfg;
    std::string rank_policy = "mixed";
    std::string bias = "none";
    std::string json_path, csv_path;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
    cmd->add_option("--trials", o.cfg.trials, "number of trials");
    cmd->add_option("--n-min", o.cfg.n_min, "smallest dimension");
    cmd->add_option("--n-max", o.cfg.n_max, "largest dimension");
    cmd->add_option("--rank-policy", o.rank_policy, "full | mixed | degenerate-heavy");
    cmd->add_option("--seed", o.cfg.master_seed, "master seed");
    cmd->add_option("--tol", o.cfg.tol, "relative tolerance");
    cmd->add_option("--bias", o.bias, "shape of T: none | nilpotent | normal");
    cmd->add_flag("--identity", o.cfg.force_identity, "use A = I in every trial");
    cmd->add_option("--jobs", o.cfg.jobs, "worker threads");
    cmd->add_option("--json", o.json_path, "write the report as JSON");
    cmd->add_option("--csv", o.csv_path, "write the rows as CSV");
}

void finish(RunOptions& o) {
    o.cfg.rank_policy = anr::parse_rank_policy(o.rank_policy);
    o.cfg.bias = anr::parse_bias(o.bias);
}

int run(int argc, char** argv) {
    CLI::App app{"Checks numerical-radius inequalities in semi-Hilbert spaces on finite matrices"};
    app.require_subcommand(1);
    app.set_version_flag("--version", anr::kToolVersion);

    auto* repro = app.add_subcommand("repro", "recompute the worked examples");

    auto* check = app.add_subcommand("check", "run checks on one instance file");
    std::string instance_path, check_id = "all", check_json;
    double check_tol = anr::kDefaultCheckTol;
    double exponent = 1.0;
    check->add_option("--instance", instance_path, "instance JSON")->required();
    check->add_option("--check-id", check_id, "check id, family, or all");
    check->add_option("--tol", check_tol, "relative tolerance");
    check->add_option("--r", exponent, "exponent for the generic thm_power_r");
    check->add_option("--json", check_json, "write the results as a JSON report");

    RunOptions fuzz_opts;
    auto* fuzz = app.add_subcommand("fuzz", "seeded random soundness sweep");
    add_run_options(fuzz, fuzz_opts);
    fuzz->add_option("--checks", fuzz_opts.cfg.checks, "check id, family, or all");

    RunOptions scan_opts;
    scan_opts.cfg.top_k = 10;
    auto* scan = app.add_subcommand("scan-sharpness", "rank instances by relative slack");
    add_run_options(scan, scan_opts);
    scan->add_option("--check-id", scan_opts.cfg.checks, "check id or family")->required();
    scan->add_option("--top", scan_opts.cfg.top_k, "instances kept per check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (repro->parsed()) {
            try {
                const auto rep = anr::repro_examples();
                for (const auto& row : rep.rows)
                    std::cout << "ok  " << row.check_id << " = " << fmt(row.lhs) << '\n';
                return 0;
            } catch (const anr::Error& e) {
                if (e.code() != anr::ErrorCode::ReproMismatch) throw;
                std::cerr << "repro mismatch: " << e.what() << '\n';
                return kExitRepro;
            }
        }

        if (check->parsed()) {
            const anr::Instance inst = anr::load_instance(instance_path);
            const anr::Frame f = anr::validate_instance(inst);
            anr::CheckParams params;
            params.seed = inst.seed;
            params.r = exponent;
            std::vector<anr::CheckResult> results;
            if (check_id == "thm_power_r")
                results.push_back(anr::run_check(check_id, f, inst.operators, params, {}, check_tol));
            else
                results = anr::run_all(f, inst.operators, params, {}, check_tol, anr::select_checks(check_id));
            anr::Report rep;
            rep.master_seed = inst.seed;
            rep.trials = 1;
            bool violated = false;
            for (const auto& r : results) {
                const char* tag = r.skipped() ? "SKIP" : r.pass ? "PASS" : "FAIL";
                violated |= r.violated();
                std::cout << tag << "  " << r.check_id;
                if (r.skipped())
                    std::cout << "  (" << r.notes.at("skip_reason") << ")";
                else
                    std::cout << "  lhs=" << fmt(r.lhs) << " rhs=" << fmt(r.rhs) << " slack=" << fmt(r.slack);
                if (auto it = r.notes.find("error"); it != r.notes.end()) std::cout << "  error: " << it->second;
                std::cout << '\n';
                anr::ReportRow row{0, inst.seed, r.check_id, r.lhs, r.rhs, r.slack, r.pass, r.skipped(), {}};
                rep.rows.push_back(row);
            }
            rep.summary = anr::summarize(rep.rows, 0);
            emit(rep, check_json, {});
            return violated ? kExitViolation : 0;
        }

        if (fuzz->parsed()) {
            finish(fuzz_opts);
            const auto rep = anr::fuzz(fuzz_opts.cfg);
            print_summary(rep, false);
            emit(rep, fuzz_opts.json_path, fuzz_opts.csv_path);
            return rep.violations() > 0 ? kExitViolation : 0;
        }

        if (scan->parsed()) {
            finish(scan_opts);
            const auto rep = anr::scan_sharpness(scan_opts.cfg);
            print_summary(rep, true);
            emit(rep, scan_opts.json_path, scan_opts.csv_path);
            return rep.violations() > 0 ? kExitViolation : 0;
        }
    } catch (const anr::Error& e) {
        std::cerr << "error [" << anr::to_string(e.code()) << "]: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

} // namespace

int main(int argc, char** argv) {
    return run(argc, argv);
}
