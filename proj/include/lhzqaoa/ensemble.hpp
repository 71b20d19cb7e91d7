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

/**
 * @file
 * Ensemble experiment: many random instances, every (protocol, cycles)
 * combination optimized on each instance, plus the CSV tables built from
 * the results.
 *
 * Instance i uses problem seed `seed + i`; the Monte Carlo stream of each
 * cell is derived from (seed, i, protocol, cycles). Results therefore do
 * not depend on the thread count or scheduling order.
 */

#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "layout.hpp"
#include "optimizer.hpp"
#include "problem.hpp"
#include "protocol.hpp"
#include "rng.hpp"
#include "stats.hpp"
#include "text.hpp"
#include "version.hpp"

namespace lhzqaoa {

struct EnsembleConfig {
    std::size_t n_logical = 4;
    std::vector<std::size_t> m_values{1, 2, 3};
    std::vector<ProtocolKind> protocols{ProtocolKind::A, ProtocolKind::B,
                                        ProtocolKind::C};
    std::size_t instances = 2000;
    std::uint64_t seed = 1;
    /// `mc.seed` is ignored; per-cell seeds are derived from `seed`.
    McConfig mc;
    AncillaMode ancilla_mode = AncillaMode::bare;
    BlockMode block_mode = BlockMode::direct;
    FidelityMode fidelity_mode = FidelityMode::probability;
    double c_ref = 2.0;
    bool extra_diagonal = false;
    /// 0 = hardware concurrency.
    std::size_t threads = 0;
    std::size_t histogram_bins = 20;

    /// One message per violated field; empty when valid.
    [[nodiscard]] std::vector<std::string> problems() const {
        std::vector<std::string> out;
        if (n_logical < 2) {
            out.push_back("n_logical: must be >= 2");
        } else if (n_logical > kMaxBruteForceSpins ||
                   pair_count(n_logical) +
                           (ancilla_mode == AncillaMode::augmented
                                ? n_logical - 2
                                : 0) >
                       kMaxQubits) {
            out.push_back("n_logical: layout exceeds " +
                          std::to_string(kMaxQubits) + " qubits");
        }
        if (m_values.empty()) {
            out.push_back("m: list must not be empty");
        }
        for (auto m : m_values) {
            if (m < 1) {
                out.push_back("m: cycle counts must be >= 1");
                break;
            }
        }
        if (protocols.empty()) {
            out.push_back("protocols: list must not be empty");
        }
        if (instances < 1) {
            out.push_back("instances: must be >= 1");
        }
        if (!(mc.delta_max > 0.0) || !std::isfinite(mc.delta_max)) {
            out.push_back("delta_max: must be > 0");
        }
        if (mc.c_update_period < 1) {
            out.push_back("c_update_period: must be >= 1");
        }
        if (!std::isfinite(mc.angles_init)) {
            out.push_back("angles_init: must be finite");
        }
        if (!(mc.c_init >= 0.0) || !std::isfinite(mc.c_init)) {
            out.push_back("c_init: must be >= 0");
        }
        if (!(c_ref > 0.0) || !std::isfinite(c_ref)) {
            out.push_back("c_ref: must be > 0");
        }
        if (histogram_bins < 1) {
            out.push_back("histogram_bins: must be >= 1");
        }
        return out;
    }

    void validate() const {
        const auto p = problems();
        if (!p.empty()) {
            std::string msg = "invalid ensemble config:";
            for (const auto &s : p) {
                msg += "\n  " + s;
            }
            throw InvalidArgument(msg);
        }
    }
};

/// Single line of `key=value` pairs identifying how a report was made.
[[nodiscard]] inline std::string provenance(const EnsembleConfig &c) {
    std::ostringstream os;
    os << "lhzqaoa version=" << kVersion << " rng=" << kRngAlgorithm
       << " seed=" << c.seed << " N=" << c.n_logical
       << " M=" << c.mc.steps << " L=" << c.instances
       << " delta_max=" << format_real(c.mc.delta_max)
       << " objective=" << to_string(c.mc.objective)
       << " c_update_period=" << c.mc.c_update_period
       << " c_pool=" << to_string(c.mc.c_pool)
       << " angles_init=" << format_real(c.mc.angles_init)
       << " c_init=" << format_real(c.mc.c_init)
       << " c_ref=" << format_real(c.c_ref)
       << " ancilla_mode=" << to_string(c.ancilla_mode)
       << " block_mode=" << to_string(c.block_mode)
       << " fidelity_mode=" << to_string(c.fidelity_mode)
       << " extra_diagonal=" << (c.extra_diagonal ? 1 : 0)
       << " bins=" << c.histogram_bins;
    return os.str();
}

struct RunRecord {
    std::size_t instance = 0;
    ProtocolKind protocol = ProtocolKind::A;
    std::size_t m = 1;
    double final_energy = 0.0;
    double final_fidelity = 0.0;
    std::size_t accepts = 0;
    /// Not stored in runs.csv; empty after reading a table back.
    ParamSet params;

    friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

struct CellSummary {
    ProtocolKind protocol = ProtocolKind::A;
    std::size_t m = 1;
    std::size_t count = 0;
    double mean_fidelity = 0.0;
    double stderr_fidelity = 0.0;
    double mean_energy = 0.0;
    double stderr_energy = 0.0;

    friend bool operator==(const CellSummary &, const CellSummary &) = default;
};

struct FidelityHistogram {
    ProtocolKind protocol = ProtocolKind::A;
    std::size_t m = 1;
    /// Fraction of instances per bin; bins split [0, 1] evenly.
    std::vector<double> mass;

    friend bool operator==(const FidelityHistogram &,
                           const FidelityHistogram &) = default;
};

struct EnsembleReport {
    std::string provenance;
    std::size_t histogram_bins = 20;
    std::vector<RunRecord> rows;
    std::vector<CellSummary> summary;
    std::vector<FidelityHistogram> histograms;

    /// Final fidelities of one cell ordered by instance.
    [[nodiscard]] std::vector<double> fidelities(ProtocolKind p,
                                                 std::size_t m) const {
        std::vector<const RunRecord *> sel;
        for (const auto &r : rows) {
            if (r.protocol == p && r.m == m) {
                sel.push_back(&r);
            }
        }
        std::sort(sel.begin(), sel.end(), [](auto *a, auto *b) {
            return a->instance < b->instance;
        });
        std::vector<double> f;
        f.reserve(sel.size());
        for (const auto *r : sel) {
            f.push_back(r->final_fidelity);
        }
        return f;
    }

    [[nodiscard]] const CellSummary *cell(ProtocolKind p,
                                          std::size_t m) const {
        for (const auto &s : summary) {
            if (s.protocol == p && s.m == m) {
                return &s;
            }
        }
        return nullptr;
    }

    friend bool operator==(const EnsembleReport &,
                           const EnsembleReport &) = default;
};

[[nodiscard]] inline std::size_t histogram_bin(double f, std::size_t bins) {
    if (!(f > 0.0)) {
        return 0;
    }
    const auto b = static_cast<std::size_t>(f * static_cast<double>(bins));
    return std::min(b, bins - 1);
}

/// Rebuilds summary and histograms from `report.rows`, keeping the order
/// in which (protocol, m) cells first appear.
inline void summarize(EnsembleReport &report) {
    if (report.histogram_bins < 1) {
        throw InvalidArgument("summarize: need at least one bin");
    }
    std::vector<std::pair<ProtocolKind, std::size_t>> cells;
    for (const auto &r : report.rows) {
        const std::pair key{r.protocol, r.m};
        if (std::find(cells.begin(), cells.end(), key) == cells.end()) {
            cells.push_back(key);
        }
    }
    report.summary.clear();
    report.histograms.clear();
    for (const auto &[p, m] : cells) {
        std::vector<double> f;
        std::vector<double> e;
        for (const auto &r : report.rows) {
            if (r.protocol == p && r.m == m) {
                f.push_back(r.final_fidelity);
                e.push_back(r.final_energy);
            }
        }
        report.summary.push_back({p, m, f.size(), stats::mean(f),
                                  stats::stderr_of_mean(f), stats::mean(e),
                                  stats::stderr_of_mean(e)});
        FidelityHistogram h{p, m, std::vector<double>(report.histogram_bins)};
        for (double x : f) {
            h.mass[histogram_bin(x, report.histogram_bins)] += 1.0;
        }
        for (double &x : h.mass) {
            x /= static_cast<double>(f.size());
        }
        report.histograms.push_back(std::move(h));
    }
}

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

[[nodiscard]] inline EnsembleReport
run_ensemble(const EnsembleConfig &config, const ProgressFn &progress = {}) {
    config.validate();
    const auto layout = build_layout(config.n_logical, config.ancilla_mode);
    const std::size_t per_instance =
        config.protocols.size() * config.m_values.size();
    std::vector<RunRecord> rows(config.instances * per_instance);

    auto run_instance = [&](std::size_t idx) {
        const auto problem =
            generate_instance(config.n_logical, config.seed + idx);
        std::size_t slot = idx * per_instance;
        for (auto kind : config.protocols) {
            for (auto m : config.m_values) {
                ProtocolSpec spec;
                spec.kind = kind;
                spec.cycles = m;
                spec.block_mode = config.block_mode;
                spec.fidelity_mode = config.fidelity_mode;
                spec.c_ref = config.c_ref;
                spec.extra_diagonal = config.extra_diagonal;
                McConfig mc = config.mc;
                mc.seed = derive_seed(config.seed, idx,
                                      static_cast<std::uint64_t>(kind), m);
                const auto trace =
                    mc_optimize(ProtocolRunner(problem, layout, spec), mc);
                rows[slot++] = {idx,
                                kind,
                                m,
                                trace.final.energy,
                                trace.final.fidelity,
                                trace.accept_count,
                                trace.best_params};
            }
        }
    };

    std::size_t workers = config.threads;
    if (workers == 0) {
        workers = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    workers = std::min(workers, config.instances);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex progress_mutex;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t idx = next++; idx < config.instances; idx = next++) {
            try {
                run_instance(idx);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = config.instances;
                return;
            }
            const auto d = ++done;
            if (progress) {
                std::lock_guard lock(progress_mutex);
                progress(d, config.instances);
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    EnsembleReport report;
    report.provenance = provenance(config);
    report.histogram_bins = config.histogram_bins;
    report.rows = std::move(rows);
    summarize(report);
    return report;
}

// ---------------------------------------------------------------------------
// Tables. Every file starts with `# <provenance>`.

inline void write_runs_csv(std::ostream &os, const EnsembleReport &r) {
    os << "# " << r.provenance << '\n';
    os << "instance,protocol,m,final_E,final_F,accepts\n";
    for (const auto &row : r.rows) {
        os << row.instance << ',' << to_string(row.protocol) << ',' << row.m
           << ',' << format_real(row.final_energy) << ','
           << format_real(row.final_fidelity) << ',' << row.accepts << '\n';
    }
}

inline void write_summary_csv(std::ostream &os, const EnsembleReport &r) {
    os << "# " << r.provenance << '\n';
    os << "protocol,m,count,mean_F,stderr_F,mean_E,stderr_E\n";
    for (const auto &s : r.summary) {
        os << to_string(s.protocol) << ',' << s.m << ',' << s.count << ','
           << format_real(s.mean_fidelity) << ','
           << format_real(s.stderr_fidelity) << ','
           << format_real(s.mean_energy) << ','
           << format_real(s.stderr_energy) << '\n';
    }
}

inline void write_histogram_csv(std::ostream &os, const EnsembleReport &r) {
    os << "# " << r.provenance << '\n';
    os << "protocol,m,bin_lo,bin_hi,mass\n";
    const auto bins = static_cast<double>(r.histogram_bins);
    for (const auto &h : r.histograms) {
        for (std::size_t b = 0; b < h.mass.size(); ++b) {
            os << to_string(h.protocol) << ',' << h.m << ','
               << format_real(static_cast<double>(b) / bins) << ','
               << format_real(static_cast<double>(b + 1) / bins) << ','
               << format_real(h.mass[b]) << '\n';
        }
    }
}

/// Per-instance final F side by side for each m: `instance,m,F_A,F_B,...`.
inline void write_pairs_csv(std::ostream &os, const EnsembleReport &r) {
    std::vector<ProtocolKind> kinds;
    std::vector<std::size_t> ms;
    for (const auto &row : r.rows) {
        if (std::find(kinds.begin(), kinds.end(), row.protocol) == kinds.end()) {
            kinds.push_back(row.protocol);
        }
        if (std::find(ms.begin(), ms.end(), row.m) == ms.end()) {
            ms.push_back(row.m);
        }
    }
    std::map<std::pair<std::size_t, std::size_t>,
             std::map<ProtocolKind, double>>
        table;
    for (const auto &row : r.rows) {
        table[{row.m, row.instance}][row.protocol] = row.final_fidelity;
    }
    os << "# " << r.provenance << '\n';
    os << "instance,m";
    for (auto k : kinds) {
        os << ",F_" << to_string(k);
    }
    os << '\n';
    for (auto m : ms) {
        for (const auto &[key, vals] : table) {
            if (key.first != m) {
                continue;
            }
            os << key.second << ',' << m;
            for (auto k : kinds) {
                os << ',';
                if (const auto it = vals.find(k); it != vals.end()) {
                    os << format_real(it->second);
                }
            }
            os << '\n';
        }
    }
}

/// Optimized parameters, one cell per line: `instance protocol m <params>`.
inline void write_params(std::ostream &os, const EnsembleReport &r) {
    os << "# " << r.provenance << '\n';
    for (const auto &row : r.rows) {
        os << row.instance << ' ' << to_string(row.protocol) << ' ' << row.m
           << ' ' << format_params(row.params) << '\n';
    }
}

/// Reads runs.csv back; summary and histograms are recomputed.
[[nodiscard]] inline EnsembleReport read_runs_csv(std::istream &is) {
    EnsembleReport r;
    std::string line;
    std::size_t lineno = 0;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        const auto t = trim(line);
        if (t.empty()) {
            continue;
        }
        if (t.front() == '#') {
            if (r.provenance.empty()) {
                r.provenance = std::string(trim(t.substr(1)));
                for (auto tok : split_ws(r.provenance)) {
                    if (tok.starts_with("bins=")) {
                        r.histogram_bins = parse_size(tok.substr(5), lineno);
                    }
                }
            }
            continue;
        }
        if (!header) {
            if (t != "instance,protocol,m,final_E,final_F,accepts") {
                throw ParseError(lineno, "unexpected runs.csv header");
            }
            header = true;
            continue;
        }
        std::vector<std::string_view> f;
        std::size_t s = 0;
        while (true) {
            const auto c = t.find(',', s);
            f.push_back(t.substr(s, c == std::string_view::npos ? c : c - s));
            if (c == std::string_view::npos) {
                break;
            }
            s = c + 1;
        }
        if (f.size() != 6) {
            throw ParseError(lineno, "expected 6 fields");
        }
        RunRecord row;
        row.instance = parse_size(f[0], lineno);
        try {
            row.protocol = parse_protocol_kind(f[1]);
        } catch (const InvalidArgument &e) {
            throw ParseError(lineno, e.what());
        }
        row.m = parse_size(f[2], lineno);
        row.final_energy = parse_real(f[3], lineno);
        row.final_fidelity = parse_real(f[4], lineno);
        row.accepts = parse_size(f[5], lineno);
        r.rows.push_back(std::move(row));
    }
    if (!header) {
        throw ParseError(0, "runs.csv has no header");
    }
    if (!r.rows.empty()) {
        summarize(r);
    }
    return r;
}

namespace detail {
template <class Fn>
void write_file(const std::filesystem::path &path, Fn &&fn) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path.string() +
                                 "' for writing");
    }
    fn(os);
    if (!os) {
        throw std::runtime_error("write failed: " + path.string());
    }
}
} // namespace detail

/// summary.csv, histogram.csv and pairs.csv.
inline void write_summary_files(const std::filesystem::path &dir,
                                const EnsembleReport &r) {
    detail::write_file(dir / "summary.csv",
                       [&](std::ostream &os) { write_summary_csv(os, r); });
    detail::write_file(dir / "histogram.csv",
                       [&](std::ostream &os) { write_histogram_csv(os, r); });
    detail::write_file(dir / "pairs.csv",
                       [&](std::ostream &os) { write_pairs_csv(os, r); });
}

/// All tables: runs.csv, params.txt and the summary files.
inline void write_report_files(const std::filesystem::path &dir,
                               const EnsembleReport &r) {
    std::filesystem::create_directories(dir);
    detail::write_file(dir / "runs.csv",
                       [&](std::ostream &os) { write_runs_csv(os, r); });
    detail::write_file(dir / "params.txt",
                       [&](std::ostream &os) { write_params(os, r); });
    write_summary_files(dir, r);
}

} // namespace lhzqaoa
