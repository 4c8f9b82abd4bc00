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

#include "cli.h"

#include <algorithm>
#include <cstdio>

#include "CLI11.hpp"
#include "mlearn/errors.h"
#include "mlearn/expcli/experiments.h"
#include "mlearn/haarverify/tv.h"
#include "mlearn/haarverify/weingarten.h"
#include "mlearn/measure/povm_io.h"
#include "mlearn/protocols/cswap.h"

namespace mlearn {

namespace {

constexpr double kCycleSumTolerance = 1e-10;
constexpr std::size_t kCswapShots = 200000;

std::string fmt(const char *spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

void print_rows(const ExperimentResult &result, std::ostream &out) {
    for (const auto &row : result.rows) {
        out << row.experiment << " d=" << row.d << " n_queries=" << row.n_queries << " success=" << row.successes
            << "/" << row.trials << " (" << fmt("%.4f", row.success_rate) << ") mean=" << fmt("%.6g", row.mean)
            << " stderr=" << fmt("%.3g", row.std_error) << "\n";
    }
    if (result.collision_slope) {
        out << "fitted slope collision=" << fmt("%.4f", *result.collision_slope)
            << " measure-twice=" << fmt("%.4f", *result.measure_twice_slope) << "\n";
    }
}

int run_and_write(const ExperimentConfig &cfg, std::ostream &out) {
    auto result = run_experiment(cfg);
    write_outputs(cfg, result);
    print_rows(result, out);
    return result.bounds_hold ? kExitOk : kExitBoundViolation;
}

int verify_weingarten(std::size_t t_max, std::size_t d, std::ostream &out) {
    bool ok = true;
    for (std::size_t t = 1; t <= t_max; t++) {
        auto table = weingarten_table(t, d);
        out << "T=" << t << " d=" << d << " |G wg - I|=" << fmt("%.3g", table.inverse_residual);
        if (t * t <= d) {
            auto gap = wg_identity_gap(t, d);
            ok = ok && gap.within_bound();
            out << " gap(entrywise)=" << fmt("%.6g", gap.entrywise) << " gap(spectral)=" << fmt("%.6g", gap.spectral)
                << " gap(row-sum)=" << fmt("%.6g", gap.row_sum) << " bound=" << fmt("%.6g", gap.bound)
                << (gap.within_bound() ? " ok" : " VIOLATED");
        }
        out << "\n";
    }
    for (std::size_t t = 1; t <= std::max<std::size_t>(t_max, 1) && t <= 8; t++) {
        auto cs = cycle_sum_identity(t, d);
        double rel = std::abs(cs.lhs - cs.rhs) / std::abs(cs.rhs);
        bool agree = rel <= kCycleSumTolerance;
        ok = ok && agree;
        out << "cycle-sum T=" << t << " lhs=" << fmt("%.15g", cs.lhs) << " rhs=" << fmt("%.15g", cs.rhs)
            << (agree ? " ok" : " VIOLATED") << "\n";
    }
    return ok ? kExitOk : kExitBoundViolation;
}

int verify_tv(std::size_t d, std::size_t t, std::ostream &out) {
    auto r = tv_iid_protocol(d, t);
    out << "d=" << d << " T=" << t << " tv=" << fmt("%.12g", r.tv) << " bound=" << fmt("%.12g", r.bound)
        << (r.within_bound() ? " ok" : " VIOLATED") << "\n";
    return r.within_bound() ? kExitOk : kExitBoundViolation;
}

int verify_cswap(std::size_t d, std::uint64_t seed, std::ostream &out) {
    if (d > kMaxCswapDim) {
        throw ResourceError("verify cswap: d must be at most " + std::to_string(kMaxCswapDim));
    }
    RngStream rng = derive_seed(seed, "verify-cswap", d);
    bool ok = true;
    for (int which = 0; which < 2; which++) {
        KindSpec spec = which == 0 ? KindSpec(ProjectiveHaarSpec{d, std::nullopt}) : KindSpec(ClassicalUniformSpec{d});
        Device device = make_device(std::move(spec), Access::WithPostState, Backend::Dense, rng);
        RngStream check_rng = rng.derive(static_cast<std::uint64_t>(which));
        auto r = controlled_swap_equivalence_check(device, kCswapShots, check_rng);
        ok = ok && r.passed;
        out << to_string(device.kind()) << " d=" << d << " table_gap=" << fmt("%.3g", r.table_gap)
            << " control_order_gap=" << fmt("%.3g", r.control_order_gap) << " sampled_tv=" << fmt("%.4g", r.sampled_tv)
            << " shots=" << r.shots << (r.passed ? " ok" : " VIOLATED") << "\n";
    }
    return ok ? kExitOk : kExitBoundViolation;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Measurement-learning experiments: collision test, measuring twice, Haar verification", "mlearn"};
    app.require_subcommand(1);

    std::string backend_name = "fast";
    ExperimentConfig cfg;
    std::size_t d = 0;
    std::string out_path;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--trials", cfg.trials, "Independent trials per cell")->required();
        sub->add_option("--seed", cfg.seed, "Master seed (default " + std::to_string(kDefaultSeed) + ")");
        sub->add_option("--out", out_path, "CSV file to append to")->required();
        sub->add_option("--threads", cfg.threads, "Worker threads, 0 = all cores");
        sub->add_option("--backend", backend_name, "Simulation backend: fast or dense")
            ->check(CLI::IsMember({"fast", "dense"}));
        sub->add_flag("--per-trial", cfg.per_trial, "Also write <stem>.trials.csv");
        sub->add_flag("--timing", cfg.timing, "Record elapsed_ms (makes rows run-dependent)");
    };

    auto *collision = app.add_subcommand("collision", "Collision test under both hypotheses");
    collision->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2ul, 1ul << 40));
    std::size_t n = 0;
    auto *n_opt = collision->add_option("--n", n, "Queries per trial (default ceil(20 sqrt d))");
    add_common(collision);

    auto *twice = app.add_subcommand("measure-twice", "Measuring-twice sharpness estimator");
    twice->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2ul, 1ul << 40));
    std::size_t reps = 0;
    twice->add_option("--reps", reps, "Repetitions per trial")->required();
    twice->add_flag("--robust", cfg.robust, "Coin-routed variant with 2x reps and an honesty check");
    add_common(twice);

    auto *sweep = app.add_subcommand("sweep", "Minimal budgets over dimensions and fitted exponents");
    std::vector<std::size_t> dims;
    sweep->add_option("--dims", dims, "Comma-separated dimensions")->required()->delimiter(',');
    sweep->add_option("--target", cfg.target, "Success target in (0.5, 1)")->required();
    add_common(sweep);

    auto *sharp = app.add_subcommand("sharpness", "Sharpness of a POVM or instrument file");
    std::string povm_path;
    sharp->add_option("--povm", povm_path, "Measurement JSON file")->required();

    auto *verify = app.add_subcommand("verify", "Exact checks; exit 3 on any bound violation");
    verify->require_subcommand(1);
    auto *v_wg = verify->add_subcommand("weingarten", "Weingarten inverse, gap bound and cycle-sum identity");
    std::size_t t_max = 0;
    v_wg->add_option("--t-max", t_max, "Largest T")->required()->check(CLI::Range(1, 5));
    v_wg->add_option("--d", d, "Dimension")->required()->check(CLI::Range(1ul, 1ul << 20));
    auto *v_tv = verify->add_subcommand("tv", "Exact TV of the i.i.d. fixed-input protocol");
    std::size_t t = 0;
    v_tv->add_option("--d", d, "Dimension")->required();
    v_tv->add_option("--t", t, "Queries T")->required();
    auto *v_cs = verify->add_subcommand("cswap", "Controlled-SWAP circuit vs coin routing");
    v_cs->add_option("--d", d, "Dimension")->required()->check(CLI::Range(2, 4));
    std::uint64_t cswap_seed = kDefaultSeed;
    v_cs->add_option("--seed", cswap_seed, "Master seed");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (!out_path.empty()) {
            cfg.out = out_path;
        }
        cfg.backend = backend_name == "dense" ? Backend::Dense : Backend::Fast;
        if (*collision) {
            cfg.experiment = "collision";
            cfg.dims = {d};
            if (*n_opt) {
                cfg.n = n;
            }
            return run_and_write(cfg, out);
        }
        if (*twice) {
            cfg.experiment = cfg.robust ? "robust" : "measure-twice";
            cfg.dims = {d};
            cfg.n = reps;
            return run_and_write(cfg, out);
        }
        if (*sweep) {
            cfg.experiment = "sweep";
            cfg.dims = dims;
            return run_and_write(cfg, out);
        }
        if (*sharp) {
            auto file = load_measurement_file(povm_path);
            out << fmt("%.12g", sharpness(file.effects())) << "\n";
            return kExitOk;
        }
        if (*v_wg) {
            return verify_weingarten(t_max, d, out);
        }
        if (*v_tv) {
            return verify_tv(d, t, out);
        }
        if (*v_cs) {
            return verify_cswap(d, cswap_seed, out);
        }
    } catch (const InvariantViolation &e) {
        err << "error: " << e.what() << "\n";
        // Inside verify an invariant failure is a violated identity, not bad input.
        return *verify ? kExitBoundViolation : kExitUsage;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    err << app.help();
    return kExitUsage;
}

}  // namespace mlearn
