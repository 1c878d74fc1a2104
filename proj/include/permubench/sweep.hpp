#pragma once

// Experiment sweeps across n and mutation configs, CSV/JSON emission, and the
// glue from sweep output to the scaling-exponent fit. Output ordering is
// canonical (mutation config, then n, then run index) and byte-identical for
// a fixed master seed regardless of thread count.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "permubench/engine.hpp"
#include "permubench/stats.hpp"

namespace permubench {

struct SweepPlan {
    BenchmarkSpec::Kind kind = BenchmarkSpec::Kind::PHam;
    std::size_t m = 0;  // PJump only
    std::vector<std::size_t> n_values;
    std::vector<MutationConfig> mutations;
    std::size_t runs_per_cell = 100;
    double budget_multiplier = 50.0;
    std::uint64_t fixed_budget = 0;  // 0 = use the default budget rule
    std::uint64_t master_seed = 0;
    StartPolicy start = StartPolicy::UniformRandom;
    std::size_t threads = 1;

    void validate() const {
        for (std::size_t i = 1; i < n_values.size(); ++i)
            if (n_values[i] <= n_values[i - 1])
                throw std::invalid_argument("sweep: n_values must be strictly increasing");
        if (runs_per_cell < 1)
            throw std::invalid_argument("sweep: runs_per_cell must be >= 1");
        if (mutations.empty())
            throw std::invalid_argument("sweep: at least one mutation config required");
        if (budget_multiplier <= 0 && fixed_budget == 0)
            throw std::invalid_argument("sweep: infeasible budget rule");
    }

    BenchmarkSpec spec_for(std::size_t n) const {
        switch (kind) {
            case BenchmarkSpec::Kind::PHam: return BenchmarkSpec::pham(n);
            case BenchmarkSpec::Kind::PLeadingOnes: return BenchmarkSpec::pleadingones(n);
            case BenchmarkSpec::Kind::PJump: return BenchmarkSpec::pjump(n, m);
            case BenchmarkSpec::Kind::Lifted:
                throw std::invalid_argument("sweep: lifted benchmarks need explicit specs");
        }
        throw std::logic_error("spec_for: bad kind");
    }
};

struct CellResult {
    BenchmarkSpec spec;
    MutationConfig mcfg;
    std::uint64_t budget = 0;
    std::uint64_t cell_seed = 0;
    BatchSummary summary;
};

inline const char* kRunCsvHeader =
    "benchmark,n,m,operator,counts,seed,iterations,success,final_fitness";

inline std::string run_csv_row(const CellResult& cell, const RunRecord& rec) {
    std::string row;
    row += cell.spec.kind_name();
    row += ',' + std::to_string(cell.spec.n);
    row += ',' + std::to_string(cell.spec.m);
    row += ',' + cell.mcfg.operator_name();
    row += ',' + cell.mcfg.counts_name();
    row += ',' + std::to_string(rec.seed);
    row += ',' + std::to_string(rec.iterations);
    row += ',' + std::string(rec.success ? "1" : "0");
    row += ',' + std::to_string(rec.final_fitness);
    return row;
}

// Executes every cell; rows are handed to `on_row` as cells complete so that
// partial CSV output survives interruption.
inline std::vector<CellResult> sweep(
    const SweepPlan& plan,
    const std::function<void(const std::string&)>& on_row = {}) {
    plan.validate();
    std::vector<CellResult> cells;
    std::size_t cell_index = 0;
    for (std::size_t mi = 0; mi < plan.mutations.size(); ++mi) {
        for (std::size_t n : plan.n_values) {
            CellResult cell;
            cell.spec = plan.spec_for(n);
            cell.mcfg = plan.mutations[mi];
            if (cell.mcfg.counts.kind == CountDistribution::Kind::PowerLaw &&
                cell.mcfg.counts.range_u == 0)
                cell.mcfg.counts.range_u = n;  // range tracks the problem size
            cell.budget = plan.fixed_budget ? plan.fixed_budget
                                            : default_budget(cell.spec, cell.mcfg,
                                                             plan.budget_multiplier);
            cell.cell_seed = derive_seed(plan.master_seed, 1 + cell_index);
            cell.summary = run_batch(cell.spec, cell.mcfg, cell.budget, plan.runs_per_cell,
                                     cell.cell_seed, plan.start, plan.threads);
            if (on_row)
                for (const auto& rec : cell.summary.records)
                    on_row(run_csv_row(cell, rec));
            cells.push_back(std::move(cell));
            ++cell_index;
        }
    }
    return cells;
}

// ---------------------------------------------------------------------------
// emission

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_timestamp_header(std::ostream& os, bool suppress) {
    if (suppress) return;
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[64];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    os << "# generated " << buf << "\n";
}

inline void write_runs_csv(std::ostream& os, const std::vector<CellResult>& cells,
                           bool suppress_timestamp) {
    write_timestamp_header(os, suppress_timestamp);
    os << kRunCsvHeader << "\n";
    for (const auto& cell : cells)
        for (const auto& rec : cell.summary.records)
            os << run_csv_row(cell, rec) << "\n";
}

inline void write_summary_csv(std::ostream& os, const std::vector<CellResult>& cells,
                              bool suppress_timestamp) {
    write_timestamp_header(os, suppress_timestamp);
    os << "benchmark,n,m,operator,counts,runs,budget,success_rate,mean_iterations,"
          "standard_error\n";
    for (const auto& c : cells) {
        os << c.spec.kind_name() << ',' << c.spec.n << ',' << c.spec.m << ','
           << c.mcfg.operator_name() << ',' << c.mcfg.counts_name() << ','
           << c.summary.run_count << ',' << c.budget << ','
           << format_double(c.summary.success_rate) << ','
           << format_double(c.summary.mean_iterations) << ','
           << format_double(c.summary.standard_error) << "\n";
    }
}

inline nlohmann::json run_record_json(const RunRecord& rec) {
    nlohmann::json j;
    j["seed"] = rec.seed;
    j["iterations"] = rec.iterations;
    j["success"] = rec.success;
    j["final_fitness"] = rec.final_fitness;
    j["region_entry"] = {{"A1", rec.region_entry[0]},
                         {"A2Interior", rec.region_entry[1]},
                         {"A2Plus", rec.region_entry[2]},
                         {"A3", rec.region_entry[3]}};
    j["cycle_change_events"] = rec.cycle_change_events;
    nlohmann::json traj = nlohmann::json::array();
    for (const auto& [it, f] : rec.trajectory) traj.push_back({it, f});
    j["trajectory"] = traj;
    return j;
}

inline nlohmann::json cells_json(const std::vector<CellResult>& cells) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : cells) {
        nlohmann::json jc;
        jc["benchmark"] = c.spec.kind_name();
        jc["n"] = c.spec.n;
        jc["m"] = c.spec.m;
        jc["operator"] = c.mcfg.operator_name();
        jc["counts"] = c.mcfg.counts_name();
        jc["budget"] = c.budget;
        jc["cell_seed"] = c.cell_seed;
        jc["success_rate"] = c.summary.success_rate;
        jc["mean_iterations"] = c.summary.mean_iterations;
        jc["standard_error"] = c.summary.standard_error;
        nlohmann::json runs = nlohmann::json::array();
        for (const auto& r : c.summary.records) runs.push_back(run_record_json(r));
        jc["runs"] = runs;
        out.push_back(jc);
    }
    return out;
}

// ---------------------------------------------------------------------------
// fitting sweep results

struct GroupKey {
    std::string benchmark;
    std::size_t m = 0;
    std::string op;
    std::string counts;

    bool operator<(const GroupKey& o) const {
        return std::tie(benchmark, m, op, counts) < std::tie(o.benchmark, o.m, o.op, o.counts);
    }
    std::string to_string() const {
        return benchmark + (m ? ":" + std::to_string(m) : "") + "/" + op + "/" + counts;
    }
};

inline std::map<GroupKey, std::vector<FitPoint>> group_cells(
    const std::vector<CellResult>& cells) {
    std::map<GroupKey, std::vector<FitPoint>> groups;
    for (const auto& c : cells) {
        GroupKey key{c.spec.kind_name(), c.spec.m, c.mcfg.operator_name(), c.mcfg.counts_name()};
        groups[key].push_back(
            {c.spec.n, c.summary.mean_iterations, c.summary.success_rate});
    }
    return groups;
}

// Parses a runs CSV (as written by write_runs_csv) back into fit points.
inline std::map<GroupKey, std::vector<FitPoint>> parse_runs_csv(std::istream& is) {
    struct Acc {
        double sum = 0;
        std::size_t successes = 0;
        std::size_t total = 0;
    };
    std::map<GroupKey, std::map<std::size_t, Acc>> accs;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("benchmark,", 0) == 0) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(tok);
        if (fields.size() < 9) throw std::invalid_argument("runs csv: bad row: " + line);
        GroupKey key{fields[0], static_cast<std::size_t>(std::stoul(fields[2])), fields[3],
                     fields[4]};
        const std::size_t n = std::stoul(fields[1]);
        Acc& a = accs[key][n];
        ++a.total;
        if (fields[7] == "1") {
            ++a.successes;
            a.sum += std::stod(fields[6]);
        }
    }
    std::map<GroupKey, std::vector<FitPoint>> out;
    for (const auto& [key, by_n] : accs)
        for (const auto& [n, a] : by_n)
            out[key].push_back({n,
                                a.successes ? a.sum / static_cast<double>(a.successes) : 0.0,
                                static_cast<double>(a.successes) / static_cast<double>(a.total)});
    return out;
}

inline void write_fit_csv(std::ostream& os,
                          const std::map<GroupKey, FitResult>& fits,
                          bool suppress_timestamp) {
    write_timestamp_header(os, suppress_timestamp);
    os << "group,exponent,exponent_se,intercept,points_used\n";
    for (const auto& [key, fit] : fits)
        os << key.to_string() << ',' << format_double(fit.exponent) << ','
           << format_double(fit.exponent_se) << ',' << format_double(fit.intercept) << ','
           << fit.points_used << "\n";
}

// Two-column log-log points plus the fitted-line parameters, one file per
// group, consumable by any plotting tool.
inline void write_plot_data(const std::string& path, const std::vector<FitPoint>& points,
                            const FitResult& fit) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << "# ln_n ln_mean\n";
    for (const auto& p : points)
        os << format_double(std::log(static_cast<double>(p.n))) << ' '
           << format_double(std::log(p.mean_iterations)) << "\n";
    os << "# fit slope=" << format_double(fit.exponent)
       << " intercept=" << format_double(fit.intercept) << "\n";
}

// ---------------------------------------------------------------------------
// config files: JSON mirroring the schemas above

inline CountDistribution count_distribution_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "poisson") return CountDistribution::poisson(j.at("lambda").get<double>());
    if (kind == "powerlaw") {
        const auto u = j.value("u", std::size_t{0});
        if (u > 0) return CountDistribution::power_law(j.at("beta").get<double>(), u);
        // u omitted: placeholder that the sweep backfills with each cell's n
        auto d = CountDistribution::power_law(j.at("beta").get<double>(), 1);
        d.range_u = 0;
        return d;
    }
    throw std::invalid_argument("config: unknown count distribution kind " + kind);
}

inline MutationConfig mutation_config_from_json(const nlohmann::json& j) {
    MutationConfig cfg;
    const std::string op = j.at("operator").get<std::string>();
    if (op == "swap") cfg.op = MutationConfig::Operator::Swap;
    else if (op == "scramble") cfg.op = MutationConfig::Operator::Scramble;
    else throw std::invalid_argument("config: unknown operator " + op);
    cfg.counts = count_distribution_from_json(j.at("counts"));
    cfg.plus_one = j.value("plus_one", false);
    if (cfg.plus_one && cfg.op != MutationConfig::Operator::Swap)
        throw std::invalid_argument("config: plus_one applies to swap only");
    return cfg;
}

inline StartPolicy start_policy_from_string(const std::string& s) {
    if (s == "uniform") return StartPolicy::UniformRandom;
    if (s == "identity") return StartPolicy::Identity;
    if (s == "a2plus") return StartPolicy::UniformA2Plus;
    if (s == "good") return StartPolicy::UniformGood;
    throw std::invalid_argument("config: unknown start policy " + s);
}

inline SweepPlan sweep_plan_from_json(const nlohmann::json& j) {
    SweepPlan plan;
    const auto& b = j.at("benchmark");
    const std::string kind = b.at("kind").get<std::string>();
    if (kind == "pham") plan.kind = BenchmarkSpec::Kind::PHam;
    else if (kind == "pleadingones") plan.kind = BenchmarkSpec::Kind::PLeadingOnes;
    else if (kind == "pjump") {
        plan.kind = BenchmarkSpec::Kind::PJump;
        plan.m = b.at("m").get<std::size_t>();
    } else {
        throw std::invalid_argument("config: unknown benchmark kind " + kind);
    }
    plan.n_values = j.at("n_values").get<std::vector<std::size_t>>();
    for (const auto& mj : j.at("mutations")) plan.mutations.push_back(mutation_config_from_json(mj));
    plan.runs_per_cell = j.at("runs_per_cell").get<std::size_t>();
    plan.budget_multiplier = j.value("budget_multiplier", 50.0);
    plan.fixed_budget = j.value("budget", std::uint64_t{0});
    plan.master_seed = j.value("seed", std::uint64_t{0});
    plan.start = start_policy_from_string(j.value("start", std::string("uniform")));
    plan.validate();
    return plan;
}

}  // namespace permubench
