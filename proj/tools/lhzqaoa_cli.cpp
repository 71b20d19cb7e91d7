// Copyright 2026 The lhzqaoa Authors
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

// lhzqaoa: instance generation, constraint-block compilation and
// verification, and ensemble experiments.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "lhzqaoa/lhzqaoa.hpp"

namespace fs = std::filesystem;
using namespace lhzqaoa;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerify = 2;

fs::path under_root(const std::string &p) {
    fs::path path(p);
    if (path.is_relative()) {
        if (const char *root = std::getenv(kOutputRootEnv);
            root != nullptr && *root != '\0') {
            return fs::path(root) / path;
        }
    }
    return path;
}

void ensure_parent(const fs::path &p) {
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
}

void print_summary(const EnsembleReport &r) {
    std::cout << "protocol  m   count  mean_F      stderr_F    mean_E\n";
    for (const auto &s : r.summary) {
        std::cout << std::left << std::setw(10) << to_string(s.protocol)
                  << std::setw(4) << s.m << std::setw(7) << s.count
                  << std::fixed << std::setprecision(6) << std::setw(12)
                  << s.mean_fidelity << std::setw(12) << s.stderr_fidelity
                  << s.mean_energy << '\n';
        std::cout.unsetf(std::ios::floatfield);
    }
}

std::string timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct GenArgs {
    std::size_t n = 4;
    std::size_t count = 1;
    std::uint64_t seed = 1;
    std::string out = "instances";
};

int cmd_gen(const GenArgs &a) {
    if (a.n < 2) {
        throw InvalidArgument("N must be >= 2");
    }
    const auto dir = under_root(a.out);
    fs::create_directories(dir);
    for (std::size_t k = 0; k < a.count; ++k) {
        std::ostringstream name;
        name << "instance_" << std::setw(4) << std::setfill('0') << k << ".txt";
        const auto path = dir / name.str();
        save_instance(path.string(), generate_instance(a.n, a.seed + k));
        std::cout << path.string() << '\n';
    }
    return kExitOk;
}

struct ScheduleArgs {
    std::size_t n = 4;
    double alpha = 0.25;
    std::string out;
    std::string layout_out;
};

int cmd_schedule(const ScheduleArgs &a) {
    if (a.n < 4) {
        throw InvalidArgument("schedule: N must be >= 4");
    }
    const auto layout = build_layout(a.n, AncillaMode::augmented);
    auto circuit = build_constraint_block(
        layout, std::vector<double>(layout.constraint_count(), a.alpha));
    circuit.add_param("N", static_cast<double>(a.n));
    circuit.add_param("alpha", a.alpha);
    const auto path = under_root(a.out);
    ensure_parent(path);
    save_circuit(path.string(), circuit);
    if (!a.layout_out.empty()) {
        const auto lp = under_root(a.layout_out);
        ensure_parent(lp);
        std::ofstream os(lp);
        if (!os) {
            throw std::runtime_error("cannot open '" + lp.string() + "'");
        }
        write_layout(os, layout);
    }
    std::cout << "layers: " << circuit.depth() << '\n'
              << "gates: " << circuit.gate_count() << '\n'
              << "qubits: " << circuit.qubit_count() << '\n';
    return kExitOk;
}

struct VerifyArgs {
    std::string path;
    std::size_t n = 0;
    std::optional<double> alpha;
    std::string mode = "augmented";
    std::size_t unitary_limit = 6;
};

int cmd_verify(const VerifyArgs &a) {
    const auto circuit = load_circuit(a.path);
    double alpha = 0.0;
    if (a.alpha) {
        alpha = *a.alpha;
    } else {
        bool found = false;
        for (const auto &[k, v] : circuit.params()) {
            if (k == "alpha") {
                alpha = v;
                found = true;
            }
        }
        if (!found) {
            throw InvalidArgument("verify: no '# param alpha' in " + a.path +
                                  "; pass --alpha");
        }
    }
    const auto layout = build_layout(a.n, parse_ancilla_mode(a.mode));
    const bool unitary = a.n <= a.unitary_limit;
    BlockCheck r;
    if (unitary) {
        r = check_constraint_block(circuit, layout, alpha);
    } else {
        r.layer_issues = layer_issues(circuit);
        r.qubit_count_ok = circuit.qubit_count() == layout.qubit_count();
    }
    std::cout << "circuit: " << a.path << " (" << circuit.qubit_count()
              << " qubits, " << circuit.depth() << " layers, "
              << circuit.gate_count() << " gates)\n";
    if (!r.qubit_count_ok) {
        std::cout << "FAIL qubit count: circuit has " << circuit.qubit_count()
                  << ", N=" << a.n << ' ' << a.mode << " layout has "
                  << layout.qubit_count() << '\n';
    }
    if (r.layer_issues.empty()) {
        std::cout << "ok   layer disjointness\n";
    } else {
        std::cout << "FAIL layer disjointness: " << r.layer_issues.size()
                  << " layer(s) reuse a qubit\n";
        for (const auto &i : r.layer_issues) {
            std::cout << "     layer " << i.layer << ": qubit " << i.qubit
                      << " used twice\n";
        }
    }
    if (r.unitary_checked) {
        std::cout << (r.mismatches == 0 ? "ok   " : "FAIL ")
                  << "unitary vs diagonal oracle (alpha=" << format_real(alpha)
                  << ", " << r.method << ", " << r.inputs
                  << " inputs): max deviation " << r.max_deviation << '\n';
        if (r.mismatches != 0) {
            std::cout << "     " << r.mismatches << " mismatching "
                      << (r.method == "exhaustive" ? "basis states" : "samples")
                      << ", first at " << r.first_mismatch << '\n';
        }
    } else if (r.qubit_count_ok && !unitary) {
        std::cout << "skip unitary check (N > " << a.unitary_limit << ")\n";
    }
    return r.ok() ? kExitOk : kExitVerify;
}

struct RunArgs {
    std::string config;
    bool quiet = false;
};

int cmd_run(const RunArgs &a) {
    const auto cfg = load_run_config(a.config);
    const auto dir = resolve_output_dir(cfg);
    fs::create_directories(dir);
    {
        std::ofstream os(dir / "config.cfg");
        write_run_config(os, cfg);
        if (!os) {
            throw std::runtime_error("cannot write " + (dir / "config.cfg").string());
        }
    }
    std::ofstream log(dir / "run.log", std::ios::app);
    log << timestamp() << " start " << a.config << '\n';
    const auto t0 = std::chrono::steady_clock::now();
    ProgressFn progress;
    if (!a.quiet) {
        progress = [](std::size_t done, std::size_t total) {
            if (done == total || done % std::max<std::size_t>(1, total / 20) == 0) {
                std::cerr << "\r" << done << '/' << total << " instances"
                          << (done == total ? "\n" : "") << std::flush;
            }
        };
    }
    const auto report = run_ensemble(cfg.ensemble, progress);
    write_report_files(dir, report);
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    log << timestamp() << " done in " << secs << " s\n";
    std::cout << "# " << report.provenance << '\n';
    print_summary(report);
    std::cout << "wrote " << dir.string() << '\n';
    return kExitOk;
}

int cmd_report(const std::string &dir_arg) {
    const auto dir = under_root(dir_arg);
    std::ifstream is(dir / "runs.csv");
    if (!is) {
        throw std::runtime_error("cannot open '" + (dir / "runs.csv").string() + "'");
    }
    const auto report = read_runs_csv(is);
    write_summary_files(dir, report);
    std::cout << "# " << report.provenance << '\n';
    print_summary(report);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parity-encoded QAOA toolkit (version " +
                 std::string(kVersion) + ")"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    GenArgs gen;
    auto *g = app.add_subcommand("gen", "Write random all-to-all instances");
    g->add_option("-N,--spins", gen.n, "Logical spins")->required();
    g->add_option("-c,--count", gen.count, "Number of instances");
    g->add_option("-s,--seed", gen.seed, "Seed of the first instance");
    g->add_option("-o,--out", gen.out, "Output directory");

    ScheduleArgs sch;
    auto *s = app.add_subcommand("schedule",
                                 "Compile the augmented constraint block");
    s->add_option("-N,--spins", sch.n, "Logical spins")->required();
    s->add_option("-a,--alpha", sch.alpha, "Plaquette phase angle");
    s->add_option("-o,--out", sch.out, "Circuit file")->required();
    s->add_option("--layout", sch.layout_out, "Also write the layout here");

    VerifyArgs ver;
    auto *v = app.add_subcommand("verify",
                                 "Check a constraint-block circuit file");
    v->add_option("circuit", ver.path, "Circuit file")->required();
    v->add_option("-N,--spins", ver.n, "Logical spins")->required();
    v->add_option("-a,--alpha", ver.alpha,
                  "Expected angle (default: '# param alpha' in the file)");
    v->add_option("--ancilla-mode", ver.mode, "augmented or bare")
        ->check(CLI::IsMember({"augmented", "bare"}));
    v->add_option("--unitary-max-n", ver.unitary_limit,
                  "Largest N for the unitary check");

    RunArgs run;
    auto *r = app.add_subcommand("run", "Run an ensemble experiment");
    r->add_option("config", run.config, "Config file")->required();
    r->add_flag("-q,--quiet", run.quiet, "No progress output");

    std::string report_dir;
    auto *rep = app.add_subcommand("report",
                                   "Re-render summaries from runs.csv");
    rep->add_option("dir", report_dir, "Output directory of a run")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        (void)app.exit(e);
        return kExitUsage;
    }

    try {
        if (*g) return cmd_gen(gen);
        if (*s) return cmd_schedule(sch);
        if (*v) return cmd_verify(ver);
        if (*r) return cmd_run(run);
        if (*rep) return cmd_report(report_dir);
    } catch (const ConfigError &e) {
        std::cerr << "error: invalid config\n";
        for (const auto &p : e.problems()) {
            std::cerr << "  " << p << '\n';
        }
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
