#pragma once

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "hpsim/analytics/report.hpp"
#include "hpsim/analytics/run_view.hpp"
#include "hpsim/core/random.hpp"
#include "hpsim/experiment/config.hpp"
#include "hpsim/sim/engine.hpp"
#include "hpsim/sim/export.hpp"
#include "hpsim/sim/profile.hpp"

namespace hpsim::experiment {

/// Seed of replicate `rep`: depends only on the base seed and the index.
inline std::uint64_t replicate_seed(std::uint64_t seed, int rep) {
    return RandomStream(seed).split(static_cast<std::uint64_t>(rep)).key();
}

inline std::string replicate_dir_name(int rep) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "rep_%03d", rep);
    return buf;
}

/**
 * Calls `job(i)` for i in [0, n) on up to `threads` workers. The first
 * exception (lowest index) is rethrown after all workers stop.
 */
inline void parallel_for(int n, int threads, const std::function<void(int)>& job) {
    threads = std::max(1, std::min(threads, n));
    if (threads == 1) {
        for (int i = 0; i < n; ++i) job(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int i = next++; i < n; i = next++) {
                try {
                    job(i);
                } catch (...) {
                    errors[static_cast<std::size_t>(i)] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

inline int default_threads() { return static_cast<int>(std::max(1u, std::thread::hardware_concurrency())); }

struct RunOptions {
    int threads = 1;
    bool write_runs = true;
    std::function<void(int rep, std::uint64_t seed)> on_replicate_done;
};

struct ExperimentResult {
    std::vector<std::uint64_t> seeds;
    std::vector<analytics::RunView> runs;
    analytics::Report report;
};

/// Runs every replicate of `cfg` and returns their analytics views, in replicate order.
inline std::vector<analytics::RunView> simulate_replicates(const ExperimentConfig& cfg, const sim::BehaviorProfile& profile,
                                                           const std::filesystem::path& out_dir, const RunOptions& opt,
                                                           std::vector<std::uint64_t>* seeds = nullptr) {
    validate(cfg);
    std::vector<analytics::RunView> views(static_cast<std::size_t>(cfg.replicates));
    std::vector<std::uint64_t> used(views.size());
    std::mutex done_mutex;
    parallel_for(cfg.replicates, opt.threads, [&](int rep) {
        const auto seed = replicate_seed(cfg.seed, rep);
        used[static_cast<std::size_t>(rep)] = seed;
        try {
            auto rec = sim::run(cfg, profile, seed);
            if (opt.write_runs) sim::write_run(rec, out_dir / replicate_dir_name(rep));
            views[static_cast<std::size_t>(rep)] = analytics::view_of(rec);
        } catch (const Error& e) {
            throw Error(e.code(), "replicate " + std::to_string(rep) + " (seed " + std::to_string(seed) + "): " + e.what());
        }
        if (opt.on_replicate_done) {
            std::lock_guard lock(done_mutex);
            opt.on_replicate_done(rep, seed);
        }
    });
    if (seeds) *seeds = used;
    return views;
}

/**
 * Runs all replicates, writes out_dir/rep_NNN/ for each and the aggregate
 * report files into out_dir.
 */
inline ExperimentResult run_experiment(const ExperimentConfig& cfg, const sim::BehaviorProfile& profile,
                                       const std::filesystem::path& out_dir, const RunOptions& opt = {}) {
    ExperimentResult res;
    std::filesystem::create_directories(out_dir);
    res.runs = simulate_replicates(cfg, profile, out_dir, opt, &res.seeds);
    res.report = analytics::build_report(res.runs);
    if (opt.write_runs) {
        analytics::write_report(res.report, out_dir);
        csv::write_file(out_dir / "config.json", config_to_json(cfg).dump(2) + "\n");
    }
    return res;
}

/// Replicate directories under `dir` (rep_*), or `dir` itself when it holds a single run.
inline std::vector<std::filesystem::path> find_run_dirs(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorCode::IoError, "not a directory: " + dir.string());
    if (std::filesystem::exists(dir / "run.json")) return {dir};
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.is_directory() && std::filesystem::exists(e.path() / "run.json")) out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    if (out.empty()) throw Error(ErrorCode::IoError, "no runs found under " + dir.string());
    return out;
}

/// Re-reads exported runs and writes the report files into out_dir.
inline analytics::Report analyze_runs(const std::filesystem::path& runs_dir, const std::filesystem::path& out_dir) {
    std::vector<analytics::RunView> views;
    for (const auto& d : find_run_dirs(runs_dir)) views.push_back(analytics::read_run(d));
    auto rep = analytics::build_report(views);
    analytics::write_report(rep, out_dir);
    return rep;
}

}  // namespace hpsim::experiment
