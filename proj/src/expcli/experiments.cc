// Copyright 2026 The mlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mlearn/expcli/experiments.h"

#include <chrono>
#include <cmath>
#include <fstream>

#include "json.hpp"
#include "mlearn/errors.h"
#include "mlearn/haarverify/tv.h"
#include "mlearn/haarverify/weingarten.h"
#include "mlearn/protocols/protocols.h"
#include "mlearn/stats/scaling.h"

namespace mlearn {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct SampleStats {
    double mean = 0;
    double std_error = 0;
};

SampleStats statistic_stats(const std::vector<TrialRecord> &records, std::optional<Hypothesis> only) {
    std::vector<double> xs;
    for (const auto &r : records) {
        if (!only || r.truth == *only) {
            xs.push_back(r.statistic);
        }
    }
    SampleStats s;
    if (xs.empty()) {
        return s;
    }
    for (double x : xs) {
        s.mean += x;
    }
    auto n = static_cast<double>(xs.size());
    s.mean /= n;
    if (xs.size() > 1) {
        double ss = 0;
        for (double x : xs) {
            ss += (x - s.mean) * (x - s.mean);
        }
        s.std_error = std::sqrt(ss / (n - 1) / n);
    }
    return s;
}

class Runner {
   public:
    Runner(const ExperimentConfig &cfg, ExperimentResult &result) : cfg_(cfg), result_(result) {
    }

    TrialOptions options(std::optional<Hypothesis> forced = std::nullopt) const {
        return TrialOptions{cfg_.backend, forced, cfg_.threads};
    }

    // Emits the aggregate row for `records` and, on request, its trials.
    void emit(const std::string &name, std::size_t d, std::size_t n_queries, const std::vector<TrialRecord> &records,
              bool robust, Clock::time_point start) {
        SuccessEstimate est = robust ? summarize_robust(records) : summarize(records);
        SampleStats stats = statistic_stats(records, std::nullopt);
        ResultRow row = make_row(name, d, n_queries, est.trials, est.successes, stats.mean, stats.std_error, cfg_.seed,
                                 std::string(to_string(cfg_.backend)));
        if (cfg_.timing) {
            row.elapsed_ms = ms_since(start);
        }
        result_.rows.push_back(std::move(row));
        if (cfg_.per_trial) {
            for (std::size_t t = 0; t < records.size(); t++) {
                result_.trial_rows.push_back({name, d, n_queries, t, records[t]});
            }
        }
    }

    void collision(std::size_t d) {
        std::size_t n = cfg_.n.value_or(default_collision_queries(d));
        struct Cell {
            const char *name;
            std::optional<Hypothesis> forced;
        };
        for (Cell cell : {Cell{"collision", std::nullopt}, Cell{"collision/uniform", Hypothesis::Classical},
                          Cell{"collision/haar", Hypothesis::Quantum}}) {
            auto start = Clock::now();
            auto records =
                run_collision_trials(d, n, cfg_.trials, derive_seed(cfg_.seed, cell.name, d), options(cell.forced));
            emit(cell.name, d, n, records, false, start);
        }
    }

    void measure_twice(std::size_t d, bool robust) {
        std::size_t reps = robust ? 2 * *cfg_.n : *cfg_.n;
        std::string base = robust ? "robust" : "measure-twice";
        struct Cell {
            std::string name;
            std::optional<Hypothesis> forced;
        };
        for (const Cell &cell : {Cell{base, std::nullopt}, Cell{base + "/classical", Hypothesis::Classical},
                                 Cell{base + "/haar", Hypothesis::Quantum}}) {
            auto start = Clock::now();
            auto records = run_measure_twice_trials(d, reps, cfg_.trials, derive_seed(cfg_.seed, cell.name, d),
                                                    options(cell.forced), robust);
            emit(cell.name, d, 2 * reps, records, robust, start);
        }
    }

    void sweep() {
        std::vector<ScalingPoint> collision_points, twice_points;
        for (std::size_t d : cfg_.dims) {
            auto start = Clock::now();
            RngStream c_rng = derive_seed(cfg_.seed, "sweep/collision", d);
            std::size_t n_min = minimal_query_search(d, cfg_.target, cfg_.trials, c_rng, options());
            // The search scored budget n on c_rng.derive(n); re-running it reproduces that cell.
            auto records = run_collision_trials(d, n_min, cfg_.trials, c_rng.derive(n_min), options());
            emit("sweep/collision", d, n_min, records, false, start);
            collision_points.push_back({d, n_min});

            start = Clock::now();
            RngStream m_rng = derive_seed(cfg_.seed, "sweep/measure-twice", d);
            std::size_t reps_min = minimal_reps_search(d, cfg_.target, cfg_.trials, m_rng, options());
            auto twice = run_measure_twice_trials(d, reps_min, cfg_.trials, m_rng.derive(reps_min), options());
            emit("sweep/measure-twice", d, 2 * reps_min, twice, false, start);
            twice_points.push_back({d, 2 * reps_min});
        }
        if (collision_points.size() >= 3) {
            result_.collision_slope = scaling_exponent(collision_points).slope;
            result_.measure_twice_slope = scaling_exponent(twice_points).slope;
        }
    }

    void verify_weingarten(std::size_t d) {
        std::size_t t_max = cfg_.n.value_or(4);
        for (std::size_t t = 1; t <= t_max && t * t <= d; t++) {
            auto start = Clock::now();
            WeingartenGap gap = wg_identity_gap(t, d);
            bool ok = gap.within_bound();
            result_.bounds_hold = result_.bounds_hold && ok;
            ResultRow row = make_row("verify-weingarten", d, t, 1, ok ? 1 : 0, gap.entrywise, 0, cfg_.seed, "exact");
            if (cfg_.timing) {
                row.elapsed_ms = ms_since(start);
            }
            result_.rows.push_back(std::move(row));
        }
    }

    void verify_tv(std::size_t d) {
        std::size_t t = cfg_.n.value_or(2);
        auto start = Clock::now();
        TvResult tv = tv_iid_protocol(d, t);
        bool ok = tv.within_bound();
        result_.bounds_hold = result_.bounds_hold && ok;
        ResultRow row = make_row("verify-tv", d, t, 1, ok ? 1 : 0, tv.tv, 0, cfg_.seed, "exact");
        if (cfg_.timing) {
            row.elapsed_ms = ms_since(start);
        }
        result_.rows.push_back(std::move(row));
    }

   private:
    const ExperimentConfig &cfg_;
    ExperimentResult &result_;
};

const char *hypothesis_label(Hypothesis h) {
    return h == Hypothesis::Classical ? "classical" : "quantum";
}

}  // namespace

RngStream derive_seed(std::uint64_t master, std::string_view experiment, std::uint64_t index) {
    return RngStream(master, stable_hash(experiment, index));
}

void validate_config(const ExperimentConfig &cfg) {
    const auto &e = cfg.experiment;
    bool known = e == "collision" || e == "measure-twice" || e == "robust" || e == "sweep" ||
                 e == "verify-weingarten" || e == "verify-tv";
    if (!known) {
        throw UsageError("unknown experiment '" + e + "'");
    }
    if (cfg.dims.empty()) {
        throw InvalidParameter("experiment needs at least one dimension");
    }
    for (std::size_t d : cfg.dims) {
        if (d < 2) {
            throw InvalidParameter("every d must be at least 2, got " + std::to_string(d));
        }
    }
    if (cfg.trials < 1) {
        throw InvalidParameter("trials must be at least 1");
    }
    if ((e == "measure-twice" || e == "robust") && (!cfg.n || *cfg.n < 1)) {
        throw InvalidParameter(e + " needs reps >= 1");
    }
    if (e == "collision" && cfg.n && *cfg.n < 2) {
        throw InvalidParameter("collision needs N >= 2");
    }
    if (e == "sweep" && !(cfg.target > 0.5 && cfg.target < 1.0)) {
        throw InvalidParameter("sweep target must lie in (0.5, 1)");
    }
}

ExperimentResult run_experiment(const ExperimentConfig &cfg) {
    validate_config(cfg);
    ExperimentResult result;
    auto start = Clock::now();
    Runner runner(cfg, result);
    const auto &e = cfg.experiment;
    if (e == "sweep") {
        runner.sweep();
    } else {
        for (std::size_t d : cfg.dims) {
            if (e == "collision") {
                runner.collision(d);
            } else if (e == "measure-twice" || e == "robust") {
                runner.measure_twice(d, e == "robust" || cfg.robust);
            } else if (e == "verify-weingarten") {
                runner.verify_weingarten(d);
            } else {
                runner.verify_tv(d);
            }
        }
    }
    result.wall_ms = ms_since(start);
    return result;
}

std::string summary_json(const ExperimentConfig &cfg, const ExperimentResult &result) {
    nlohmann::ordered_json j;
    j["version"] = kVersion;
    j["config"] = {
        {"experiment", cfg.experiment},
        {"dims", cfg.dims},
        {"n", cfg.n ? nlohmann::ordered_json(*cfg.n) : nlohmann::ordered_json(nullptr)},
        {"trials", cfg.trials},
        {"target", cfg.target},
        {"seed", cfg.seed},
        {"backend", std::string(to_string(cfg.backend))},
        {"robust", cfg.robust || cfg.experiment == "robust"},
    };
    j["fitted_slopes"] = {
        {"collision", result.collision_slope ? nlohmann::ordered_json(*result.collision_slope) : nullptr},
        {"measure_twice", result.measure_twice_slope ? nlohmann::ordered_json(*result.measure_twice_slope) : nullptr},
    };
    j["rows"] = result.rows.size();
    j["bounds_hold"] = result.bounds_hold;
    j["wall_ms"] = result.wall_ms;
    return j.dump(2) + "\n";
}

std::string render_trial_csv(const std::vector<TrialRow> &rows) {
    std::string out = "experiment,d,n_queries,trial,truth,verdict,statistic,correct,honest\n";
    for (const auto &r : rows) {
        out += r.experiment + ',' + std::to_string(r.d) + ',' + std::to_string(r.n_queries) + ',' +
               std::to_string(r.trial) + ',' + hypothesis_label(r.record.truth) + ',' +
               hypothesis_label(r.record.verdict) + ',' + format_double(r.record.statistic) + ',' +
               (r.record.correct() ? "1" : "0") + ',' + (r.record.honest ? "1" : "0") + '\n';
    }
    return out;
}

void write_outputs(const ExperimentConfig &cfg, const ExperimentResult &result) {
    if (!cfg.out) {
        return;
    }
    append_csv(*cfg.out, result.rows);
    auto write_file = [](const std::filesystem::path &path, const std::string &text) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw IoError("cannot open " + path.string() + " for writing");
        }
        f << text;
        if (!f.flush()) {
            throw IoError("write to " + path.string() + " failed");
        }
    };
    write_file(sidecar_path(*cfg.out, ".summary.json"), summary_json(cfg, result));
    if (cfg.per_trial) {
        write_file(sidecar_path(*cfg.out, ".trials.csv"), render_trial_csv(result.trial_rows));
    }
}

}  // namespace mlearn
