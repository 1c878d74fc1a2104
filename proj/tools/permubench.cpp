// permubench: experiment runner for the permutation-based (1+1) EA.
//
// Subcommands:
//   run            one batch of EA runs on a single benchmark cell
//   sweep          parameter sweep across n from a JSON config
//   fit            scaling-exponent regression over a runs CSV
//   verify         lemma-verification report
//   exact-hitting  absorbing-chain expected hitting time for small n

#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "permubench/permubench.hpp"

namespace pb = permubench;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 0;
    std::size_t threads = 1;
    std::string out_dir = ".";
    std::string format = "csv";
    bool no_timestamp = false;
};

std::ofstream open_out(const GlobalOpts& g, const std::string& name) {
    std::filesystem::create_directories(g.out_dir);
    const auto path = std::filesystem::path(g.out_dir) / name;
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    return os;
}

pb::BenchmarkSpec make_spec(const std::string& kind, std::size_t n, std::size_t m) {
    if (kind == "pham") return pb::BenchmarkSpec::pham(n);
    if (kind == "pleadingones") return pb::BenchmarkSpec::pleadingones(n);
    if (kind == "pjump") return pb::BenchmarkSpec::pjump(n, m);
    throw CLI::ValidationError("--benchmark", "unknown benchmark kind: " + kind);
}

pb::MutationConfig make_mutation(const std::string& op, const std::string& counts,
                                 double lambda, double beta, std::size_t n, bool plus_one) {
    pb::MutationConfig cfg;
    if (op == "swap") cfg.op = pb::MutationConfig::Operator::Swap;
    else if (op == "scramble") cfg.op = pb::MutationConfig::Operator::Scramble;
    else throw CLI::ValidationError("--operator", "unknown operator: " + op);
    if (counts == "poisson") cfg.counts = pb::CountDistribution::poisson(lambda);
    else if (counts == "powerlaw") cfg.counts = pb::CountDistribution::power_law(beta, n);
    else throw CLI::ValidationError("--counts", "unknown count distribution: " + counts);
    cfg.plus_one = plus_one;
    if (plus_one && cfg.op != pb::MutationConfig::Operator::Swap)
        throw CLI::ValidationError("--plus-one", "applies to the swap operator only");
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"permutation-based (1+1) EA benchmark and verification runner"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master seed (echoed in all outputs)");
    app.add_option("--threads", g.threads, "worker threads for batches");
    app.add_option("--out-dir", g.out_dir, "output directory");
    app.add_option("--format", g.format, "output format: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_flag("--no-timestamp", g.no_timestamp, "suppress the timestamp header line");

    // ---- run -------------------------------------------------------------
    auto* run = app.add_subcommand("run", "run one batch on a single cell");
    std::string run_bench = "pham", run_op = "swap", run_counts = "poisson", run_start = "uniform";
    std::size_t run_n = 16, run_m = 3, run_count = 100;
    double run_lambda = 1.0, run_beta = 1.5, run_budget_mult = 50.0;
    std::uint64_t run_budget = 0;
    bool run_plus_one = false;
    std::string run_start_perm;
    run->add_option("--benchmark", run_bench, "pham|pleadingones|pjump");
    run->add_option("--n", run_n, "problem size")->required();
    run->add_option("--m", run_m, "jump parameter (pjump)");
    run->add_option("--operator", run_op, "swap|scramble");
    run->add_option("--counts", run_counts, "poisson|powerlaw");
    run->add_option("--lambda", run_lambda, "Poisson mean");
    run->add_option("--beta", run_beta, "power-law exponent");
    run->add_flag("--plus-one", run_plus_one, "apply k+1 transpositions (swap)");
    run->add_option("--runs", run_count, "number of runs");
    run->add_option("--budget", run_budget, "iteration budget (0 = default rule)");
    run->add_option("--budget-multiplier", run_budget_mult, "default-budget multiplier");
    run->add_option("--start", run_start, "uniform|identity|a2plus|good|<word>");

    // ---- sweep -----------------------------------------------------------
    auto* sweep_cmd = app.add_subcommand("sweep", "run a sweep from a JSON config");
    std::string sweep_config;
    sweep_cmd->add_option("--config", sweep_config, "sweep plan (JSON)")->required();

    // ---- fit -------------------------------------------------------------
    auto* fit_cmd = app.add_subcommand("fit", "fit scaling exponents from a runs CSV");
    std::string fit_input;
    double fit_floor = 0.999;
    fit_cmd->add_option("--input", fit_input, "runs CSV")->required();
    fit_cmd->add_option("--success-floor", fit_floor, "minimum cell success rate");

    // ---- verify ----------------------------------------------------------
    auto* verify_cmd = app.add_subcommand("verify", "lemma verification report");
    std::vector<std::string> verify_lemma_names;
    std::size_t verify_samples = 1000000;
    verify_cmd->add_option("--lemma", verify_lemma_names,
                           "same-cycle-split|leadingones-improvement|cycle-change|"
                           "good-distance|scramble-jump (default: all)");
    verify_cmd->add_option("--samples", verify_samples, "Monte-Carlo sample budget per state");

    // ---- exact-hitting ---------------------------------------------------
    auto* exact_cmd = app.add_subcommand("exact-hitting", "exact expected hitting time");
    std::string ex_bench = "pham", ex_op = "swap", ex_counts = "poisson", ex_start = "uniform";
    std::size_t ex_n = 4, ex_m = 3;
    double ex_lambda = 1.0, ex_beta = 1.5;
    bool ex_plus_one = false;
    exact_cmd->add_option("--benchmark", ex_bench, "pham|pleadingones|pjump");
    exact_cmd->add_option("--n", ex_n, "problem size (<= 7)")->required();
    exact_cmd->add_option("--m", ex_m, "jump parameter (pjump)");
    exact_cmd->add_option("--operator", ex_op, "swap|scramble");
    exact_cmd->add_option("--counts", ex_counts, "poisson|powerlaw");
    exact_cmd->add_option("--lambda", ex_lambda, "Poisson mean");
    exact_cmd->add_option("--beta", ex_beta, "power-law exponent");
    exact_cmd->add_flag("--plus-one", ex_plus_one, "apply k+1 transpositions (swap)");
    exact_cmd->add_option("--start", ex_start, "uniform|identity|a2plus|good|<word>");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto spec = make_spec(run_bench, run_n, run_m);
            const auto mcfg =
                make_mutation(run_op, run_counts, run_lambda, run_beta, run_n, run_plus_one);
            const std::uint64_t budget =
                run_budget ? run_budget : pb::default_budget(spec, mcfg, run_budget_mult);

            pb::StartPolicy policy;
            std::optional<pb::Permutation> start_perm;
            if (run_start.find(',') != std::string::npos) {
                policy = pb::StartPolicy::Explicit;
                start_perm = pb::Permutation::parse(run_start);
            } else {
                policy = run_start == "explicit" ? pb::StartPolicy::Explicit
                                                 : pb::start_policy_from_string(run_start);
            }
            pb::BatchSummary summary;
            if (start_perm) {
                summary.run_count = run_count;
                summary.records.resize(run_count);
                for (std::size_t i = 0; i < run_count; ++i)
                    summary.records[i] = pb::run_once(spec, mcfg, budget,
                                                      pb::derive_seed(g.seed, i), policy,
                                                      start_perm);
            } else {
                summary = pb::run_batch(spec, mcfg, budget, run_count, g.seed, policy, g.threads);
            }
            // recompute aggregate when run one by one
            if (start_perm) {
                std::size_t succ = 0;
                double sum = 0;
                for (const auto& r : summary.records)
                    if (r.success) { ++succ; sum += static_cast<double>(r.iterations); }
                summary.success_rate = static_cast<double>(succ) / run_count;
                if (succ) summary.mean_iterations = sum / static_cast<double>(succ);
            }

            pb::CellResult cell{spec, mcfg, budget, g.seed, std::move(summary)};
            const std::vector<pb::CellResult> cells{std::move(cell)};
            if (g.format == "json") {
                auto os = open_out(g, "runs.json");
                nlohmann::json j;
                j["master_seed"] = g.seed;
                j["start"] = pb::to_string(policy);
                j["cells"] = pb::cells_json(cells);
                os << j.dump(2) << "\n";
            } else {
                auto os = open_out(g, "runs.csv");
                pb::write_runs_csv(os, cells, g.no_timestamp);
            }
            std::cout << "master_seed=" << g.seed << " budget=" << budget
                      << " success_rate=" << cells[0].summary.success_rate
                      << " mean_iterations=" << cells[0].summary.mean_iterations << "\n";
            const double sr = cells[0].summary.success_rate;
            if (sr < 1.0)
                std::cout << "note: " << (1.0 - sr) * 100 << "% of runs censored at the budget;"
                          << " mean is over successes only\n";
            return 0;
        }

        if (*sweep_cmd) {
            std::ifstream is(sweep_config);
            if (!is) throw std::runtime_error("cannot read " + sweep_config);
            nlohmann::json j;
            is >> j;
            pb::SweepPlan plan = pb::sweep_plan_from_json(j);
            if (app.count("--seed")) plan.master_seed = g.seed;
            plan.threads = g.threads;

            auto os = open_out(g, "runs.csv");
            pb::write_timestamp_header(os, g.no_timestamp);
            os << pb::kRunCsvHeader << "\n";
            const auto cells = pb::sweep(plan, [&](const std::string& row) {
                os << row << "\n";
                os.flush();  // partial results survive interruption
            });

            auto sos = open_out(g, "summary.csv");
            pb::write_summary_csv(sos, cells, g.no_timestamp);
            if (g.format == "json") {
                auto jos = open_out(g, "runs.json");
                nlohmann::json out;
                out["master_seed"] = plan.master_seed;
                out["start"] = pb::to_string(plan.start);
                out["cells"] = pb::cells_json(cells);
                jos << out.dump(2) << "\n";
            }
            std::cout << "master_seed=" << plan.master_seed << " cells=" << cells.size() << "\n";
            return 0;
        }

        if (*fit_cmd) {
            std::ifstream is(fit_input);
            if (!is) throw std::runtime_error("cannot read " + fit_input);
            const auto groups = pb::parse_runs_csv(is);
            std::map<pb::GroupKey, pb::FitResult> fits;
            for (const auto& [key, points] : groups)
                fits[key] = pb::fit_exponent(points, fit_floor);
            if (g.format == "json") {
                auto os = open_out(g, "fits.json");
                nlohmann::json j;
                for (const auto& [key, fit] : fits)
                    j[key.to_string()] = {{"exponent", fit.exponent},
                                          {"exponent_se", fit.exponent_se},
                                          {"intercept", fit.intercept},
                                          {"points_used", fit.points_used}};
                os << j.dump(2) << "\n";
            } else {
                auto os = open_out(g, "fits.csv");
                pb::write_fit_csv(os, fits, g.no_timestamp);
            }
            for (const auto& [key, points] : groups) {
                std::string name = "plot_" + key.to_string() + ".dat";
                for (auto& c : name)
                    if (c == '/' || c == ':' || c == '(' || c == ')') c = '_';
                pb::write_plot_data((std::filesystem::path(g.out_dir) / name).string(), points,
                                    fits.at(key));
            }
            for (const auto& [key, fit] : fits)
                std::cout << key.to_string() << ": exponent=" << fit.exponent
                          << " se=" << fit.exponent_se << "\n";
            return 0;
        }

        if (*verify_cmd) {
            const auto checks = pb::verify_lemmas(verify_lemma_names, g.seed, verify_samples);
            bool any_fail = false;
            for (const auto& c : checks) {
                if (c.skipped) {
                    std::cout << "[SKIP] " << c.lemma << ": " << c.claim << " (" << c.note
                              << ")\n";
                    continue;
                }
                std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.lemma << ": " << c.claim
                          << " | value=" << c.value << " bound=" << c.bound;
                if (!c.note.empty()) std::cout << " | " << c.note;
                std::cout << "\n";
                any_fail |= !c.pass;
            }
            return any_fail ? 1 : 0;
        }

        if (*exact_cmd) {
            const auto spec = make_spec(ex_bench, ex_n, ex_m);
            const auto mcfg =
                make_mutation(ex_op, ex_counts, ex_lambda, ex_beta, ex_n, ex_plus_one);
            pb::StartSpec start;
            if (ex_start.find(',') != std::string::npos)
                start = pb::StartSpec::at(pb::Permutation::parse(ex_start));
            else
                start.policy = pb::start_policy_from_string(ex_start);
            const double h = pb::ea_hitting_time_exact(spec, mcfg, start);
            std::cout << "expected_hitting_time=" << pb::format_double(h) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
