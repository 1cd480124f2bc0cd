// Command-line front end: simulate, analyze, calibrate, preset.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hpsim/analytics/report.hpp"
#include "hpsim/experiment/calibrate.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/experiment/runner.hpp"
#include "hpsim/sim/profile.hpp"

namespace fs = std::filesystem;
using namespace hpsim;

namespace {

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("hpsim");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* level = std::getenv("HPSIM_LOG_LEVEL");
    spdlog::set_level(level ? spdlog::level::from_str(level) : spdlog::level::info);
}

int cmd_simulate(const std::string& config_path, const std::string& out, std::optional<std::uint64_t> seed,
                 std::optional<int> replicates, std::optional<std::string> profile_name, int threads) {
    auto cfg = experiment::load_config(config_path);
    if (seed) cfg.seed = *seed;
    if (replicates) cfg.replicates = *replicates;
    if (profile_name) cfg.profile = *profile_name;
    experiment::validate(cfg);
    const auto profile = sim::load_profile(cfg.profile);
    spdlog::info("simulating {} honeypots for {} days, {} replicate(s), seed {}, profile {}", cfg.honeypots.size(),
                 cfg.horizon_days, cfg.replicates, cfg.seed, profile.calibration_name);
    experiment::RunOptions opt;
    opt.threads = threads;
    opt.on_replicate_done = [](int rep, std::uint64_t s) { spdlog::debug("replicate {} done (seed {})", rep, s); };
    const auto res = experiment::run_experiment(cfg, profile, out, opt);
    spdlog::info("interactions per honeypot/week: {:.1f}", analytics::round_to(res.report.interactions_per_week, 1));
    spdlog::info("wrote {}", out);
    return 0;
}

int cmd_analyze(const std::string& runs, const std::string& out) {
    const auto rep = experiment::analyze_runs(runs, out);
    spdlog::info("analysed {} run(s); report written to {}", rep.runs, out);
    return 0;
}

int cmd_calibrate(const std::string& targets_path, int budget, const std::string& start_name, const std::string& out,
                  int replicates, std::uint64_t seed, int threads) {
    const auto targets = experiment::load_targets(targets_path);
    const auto start = sim::load_profile(start_name);
    experiment::CalibrationOptions opt;
    opt.replicates = replicates;
    opt.seed = seed;
    opt.threads = threads;
    opt.on_evaluation = [](int n, double loss, double best) {
        spdlog::debug("evaluation {}: loss {:.4f} (best {:.4f})", n, loss, best);
        if (n % 10 == 0) spdlog::info("evaluation {}: best loss {:.4f}", n, best);
    };
    const auto res = experiment::calibrate(start, targets, budget, opt);
    if (res.status == ErrorCode::BudgetExhausted) {
        spdlog::warn("BudgetExhausted after {} evaluations; best loss {:.4f} (start {:.4f})", res.evaluations, res.loss,
                     res.start_loss);
    }
    const auto name = fs::path(out).stem().string();
    csv::write_file(out, experiment::calibrated_profile_json(res, name).dump(2) + "\n");
    spdlog::info("wrote {}", out);
    return 0;
}

int cmd_preset(const std::string& name, const std::string& out) {
    if (name != "paper-testbed") throw Error(ErrorCode::ValidationError, "unknown preset '" + name + "'");
    csv::write_file(out, experiment::config_to_json(experiment::preset_paper_testbed()).dump(2) + "\n");
    spdlog::info("wrote {}", out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Social honeypot simulator and analytics"};
    app.require_subcommand(1);
    int threads = experiment::default_threads();
    app.add_option("--threads", threads, "Worker threads for replicates")->check(CLI::PositiveNumber);

    auto* sim_cmd = app.add_subcommand("simulate", "Run an experiment and write CSVs plus the report");
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> replicates;
    std::optional<std::string> profile;
    sim_cmd->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("--out", out, "Output directory")->required();
    sim_cmd->add_option("--seed", seed, "Base seed (overrides the config)");
    sim_cmd->add_option("--replicates", replicates, "Replicates (overrides the config)")->check(CLI::PositiveNumber);
    sim_cmd->add_option("--profile", profile, "Behaviour profile name or path (overrides the config)");

    auto* an_cmd = app.add_subcommand("analyze", "Rebuild the report from exported runs");
    std::string runs_dir;
    an_cmd->add_option("--runs", runs_dir, "Directory holding rep_* runs or a single run")->required();
    an_cmd->add_option("--out", out, "Report directory")->required();

    auto* cal_cmd = app.add_subcommand("calibrate", "Random-search the behaviour profile against target group means");
    std::string targets;
    int budget = 100;
    std::string start = "default";
    std::string cal_out = "paper-calibrated.json";
    int cal_reps = 10;
    std::uint64_t cal_seed = 1;
    cal_cmd->add_option("--targets", targets, "Target means (JSON)")->required()->check(CLI::ExistingFile);
    cal_cmd->add_option("--budget", budget, "Number of profile evaluations")->required()->check(CLI::PositiveNumber);
    cal_cmd->add_option("--start", start, "Starting profile name or path");
    cal_cmd->add_option("--out", cal_out, "Where to write the best profile");
    cal_cmd->add_option("--replicates", cal_reps, "Replicates per evaluation")->check(CLI::PositiveNumber);
    cal_cmd->add_option("--seed", cal_seed, "Seed for evaluations and the search");

    auto* pre_cmd = app.add_subcommand("preset", "Write a preset config");
    std::string preset_name;
    std::string preset_out;
    pre_cmd->add_option("name", preset_name, "Preset name (paper-testbed)")->required();
    pre_cmd->add_option("--out", preset_out, "Output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim_cmd) return cmd_simulate(config_path, out, seed, replicates, profile, threads);
        if (*an_cmd) return cmd_analyze(runs_dir, out);
        if (*cal_cmd) return cmd_calibrate(targets, budget, start, cal_out, cal_reps, cal_seed, threads);
        if (*pre_cmd) return cmd_preset(preset_name, preset_out);
    } catch (const Error& e) {
        spdlog::error("{}", e.what());
        return 2;
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 3;
    }
    return 1;
}
