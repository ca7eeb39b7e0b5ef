#include "spectra/exactmath.hpp"
#include "spectra/family.hpp"
#include "spectra/json_io.hpp"
#include "spectra/perm.hpp"
#include "spectra/repr.hpp"
#include "spectra/search.hpp"
#include "spectra/spectral.hpp"
#include "spectra/verify.hpp"

#include "CLI11.hpp"

#include <omp.h>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using spectra::CheckResult;
using spectra::CheckStatus;
using spectra::Int;
using spectra::Json;
using spectra::Partition;

constexpr const char* kSchema = "1";

void emit(const Json& report, const std::string& out_path) {
    std::string text = report.dump(2);
    text += '\n';
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
    f << text;
}

const char* status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        default: return "incomplete";
    }
}

Json checks_to_json(const std::vector<CheckResult>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["status"] = status_name(c.status);
        j["detail"] = c.detail;
        j["seconds"] = c.seconds;   // timing field, excluded from reproducibility
        arr.push_back(std::move(j));
    }
    return arr;
}

// Loads, validates, and installs a character-table cache file. The result is
// a named check so corrupt caches surface in the report, not as a crash.
CheckResult load_cache(const std::string& path) {
    CheckResult r;
    r.name = "character-cache-validation";
    try {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("cannot read: " + path);
        Json payload = Json::parse(f);
        auto tables = spectra::character_cache_from_json(payload);
        for (auto& t : tables) spectra::CharacterTable::install(t);
        r.status = CheckStatus::pass;
        r.detail = "validated and installed " + std::to_string(tables.size()) + " table(s) from " + path;
    } catch (const std::exception& e) {
        r.status = CheckStatus::fail;
        r.detail = e.what();
    }
    return r;
}

bool closed_form_rows_ok(const spectra::SpectrumTable& t) {
    int n = t.n;
    Int d = spectra::derangement_count(n);
    Partition row(std::vector<int>{n});
    Partition col(std::vector<int>(static_cast<size_t>(n), 1));
    Partition standard(std::vector<int>{n - 1, 1});
    std::vector<int> hook_parts{2};
    hook_parts.insert(hook_parts.end(), static_cast<size_t>(n - 2), 1);
    Partition hook(hook_parts);
    return t.eigenvalue(row) == d &&
           t.eigenvalue(col) == (n % 2 == 0 ? Int(-(n - 1)) : Int(n - 1)) &&
           t.eigenvalue(standard) == -spectra::exact_div(d, Int(n - 1)) &&
           t.eigenvalue(hook) == Int(n % 2 == 0 ? 1 : -1);
}

int cmd_spectrum(int n, const std::string& out, const std::string& cache) {
    Json report;
    report["schema"] = kSchema;
    report["command"] = "spectrum";
    std::vector<CheckResult> checks;
    if (!cache.empty()) {
        checks.push_back(load_cache(cache));
        if (checks.back().status == CheckStatus::fail) {
            report["checks"] = checks_to_json(checks);
            report["ok"] = false;
            emit(report, out);
            return 2;
        }
    }

    spectra::SpectrumTable t = spectra::derangement_spectrum(n);
    report["spectrum"] = spectra::spectrum_to_json(t);

    bool rows_applicable = n >= 4;
    bool rows_ok = !rows_applicable || closed_form_rows_ok(t);
    Json rows;
    rows["applicable"] = rows_applicable;
    rows["ok"] = rows_ok;
    report["closed_form_rows"] = rows;

    spectra::TraceCheck tc = spectra::trace_identity_check(t);
    Json trace;
    trace["lhs"] = spectra::int_to_string(tc.lhs);
    trace["rhs"] = spectra::int_to_string(tc.rhs);
    trace["ok"] = tc.ok;
    report["trace_identity"] = trace;

    spectra::SpectrumSummary s = spectra::summarize(t);
    Json sum;
    sum["d"] = spectra::int_to_string(s.d);
    sum["lambda_min"] = spectra::int_to_string(s.lambda_min);
    sum["degenerate"] = s.degenerate;
    if (s.lambda2) sum["lambda2"] = spectra::int_to_string(*s.lambda2);
    if (s.nu) sum["nu"] = spectra::int_to_string(*s.nu);
    sum["tie_flag"] = s.tie_flag;
    report["summary"] = sum;

    bool nu_ok = true;
    if (n >= 4) {
        spectra::NuCheck nc = spectra::nu_formula_check(n);
        Json nj;
        nj["nu"] = spectra::rat_to_string(nc.nu);
        nj["formula_ok"] = nc.formula_ok;
        nj["dominance_ok"] = nc.dominance_ok;
        nj["tie"] = nc.tie;
        nj["ok"] = nc.ok;
        report["nu_check"] = nj;
        nu_ok = nc.ok;
    }

    bool ok = rows_ok && tc.ok && nu_ok;
    report["ok"] = ok;
    emit(report, out);
    return ok ? 0 : 2;
}

int cmd_verify(spectra::VerifyConfig cfg, const std::string& tasks_csv, const std::string& out,
               const std::string& cache) {
    if (tasks_csv == "\x01all") {
        cfg.tasks = spectra::verify_task_names();
    } else {
        std::istringstream ss(tasks_csv);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) cfg.tasks.push_back(item);
    }

    Json report;
    report["schema"] = kSchema;
    report["command"] = "verify";
    Json cj;
    cj["n_min"] = cfg.n_min;
    cj["n_max"] = cfg.n_max;
    cj["seed"] = cfg.seed;
    cj["budget_seconds"] = cfg.budget_seconds;
    cj["tasks"] = cfg.tasks;
    report["config"] = cj;

    std::vector<CheckResult> checks;
    if (!cache.empty()) {
        checks.push_back(load_cache(cache));
        if (checks.back().status == CheckStatus::fail) {
            report["checks"] = checks_to_json(checks);
            report["ok"] = false;
            emit(report, out);
            return 2;
        }
    }
    auto results = spectra::run_verify(cfg);
    checks.insert(checks.end(), results.begin(), results.end());

    report["checks"] = checks_to_json(checks);
    bool ok = spectra::all_passed(checks);
    report["ok"] = ok;
    emit(report, out);
    if (!ok) return 2;
    return spectra::any_incomplete(checks) ? 3 : 0;
}

int cmd_search(const std::string& kind, int n, bool non_centred, double budget,
               const std::string& out) {
    spectra::SearchOptions opt;
    opt.non_centred = non_centred;
    opt.budget_seconds = budget;
    spectra::SearchResult r = (kind == "max-intersecting")
                                  ? spectra::max_intersecting_search(n, opt)
                                  : spectra::max_cross_product_search(n, opt);
    Json report;
    report["schema"] = kSchema;
    report["command"] = "search";
    report["kind"] = kind;
    report["n"] = n;
    report["non_centred"] = non_centred;
    report["budget_seconds"] = budget;
    report["result"] = spectra::search_result_to_json(r);
    emit(report, out);
    return r.status == spectra::SearchStatus::complete ? 0 : 3;
}

int cmd_cache(int n_min, int n_max, const std::string& out) {
    std::vector<int> ns;
    for (int n = n_min; n <= n_max; ++n) ns.push_back(n);
    emit(spectra::character_cache_to_json(ns), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectra, bounds, and extremal-family searches on the symmetric group"};
    app.require_subcommand(1);

    int jobs = 0;
    app.add_option("--jobs", jobs, "OpenMP thread count (default: all hardware threads)")
        ->check(CLI::PositiveNumber);

    auto* sp = app.add_subcommand("spectrum", "eigenvalue table of the derangement graph");
    int sp_n = 5;
    std::string sp_out, sp_cache;
    sp->add_option("--n", sp_n, "symmetric group degree")->required()->check(CLI::Range(1, 9));
    sp->add_option("--out", sp_out, "write the JSON report here instead of stdout");
    sp->add_option("--cache", sp_cache, "character-table cache file to load");

    auto* ver = app.add_subcommand("verify", "run named checks over an n range");
    spectra::VerifyConfig cfg;
    std::string ver_tasks = "\x01all";   // sentinel: flag absent means every task
    std::string ver_out, ver_cache;
    ver->add_option("--n-min", cfg.n_min, "smallest n")->check(CLI::Range(1, 13));
    ver->add_option("--n-max", cfg.n_max, "largest n")->check(CLI::Range(1, 13));
    ver->add_option("--seed", cfg.seed, "seed for property-test sampling");
    ver->add_option("--budget", cfg.budget_seconds, "seconds allowed per search-backed task")
        ->check(CLI::PositiveNumber);
    ver->add_option("--tasks", ver_tasks,
                    "comma-separated task names (empty string runs nothing; default: all)");
    ver->add_option("--out", ver_out, "write the JSON report here instead of stdout");
    ver->add_option("--cache", ver_cache, "character-table cache file to load");

    auto* se = app.add_subcommand("search", "exhaustive extremal-family searches");
    std::string se_kind;
    int se_n = 4;
    bool se_non_centred = false;
    double se_budget = 10.0;
    std::string se_out;
    se->add_option("--kind", se_kind, "which optimum to search for")
        ->required()
        ->check(CLI::IsMember({"max-intersecting", "max-cross-product"}));
    se->add_option("--n", se_n, "symmetric group degree")->required()->check(CLI::Range(1, 7));
    se->add_flag("--non-centred", se_non_centred, "restrict to non-centred families");
    se->add_option("--budget", se_budget, "seconds before reporting incomplete")
        ->check(CLI::PositiveNumber);
    se->add_option("--out", se_out, "write the JSON report here instead of stdout");

    auto* ca = app.add_subcommand("cache", "write a character-table cache file");
    int ca_min = 1, ca_max = 9;
    std::string ca_out;
    ca->add_option("--n-min", ca_min, "smallest n")->check(CLI::Range(1, 9));
    ca->add_option("--n-max", ca_max, "largest n")->check(CLI::Range(1, 9));
    ca->add_option("--out", ca_out, "write the cache here instead of stdout");

    CLI11_PARSE(app, argc, argv);

    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (*sp) return cmd_spectrum(sp_n, sp_out, sp_cache);
        if (*ver) return cmd_verify(cfg, ver_tasks, ver_out, ver_cache);
        if (*se) return cmd_search(se_kind, se_n, se_non_centred, se_budget, se_out);
        if (*ca) return cmd_cache(ca_min, ca_max, ca_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
