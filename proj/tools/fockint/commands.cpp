#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>

#include "fockint/bell.hpp"
#include "fockint/fock.hpp"
#include "fockint/ghom.hpp"
#include "fockint/oracle.hpp"
#include "fockint/parallel.hpp"
#include "fockint/run_record.hpp"

namespace fockint::cli {

namespace {

std::string utc_now_iso8601() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

int emit(const GlobalOptions& g, RunRecord rec) {
    if (g.stamp) rec.timestamp = utc_now_iso8601();
    const std::string text = g.format == Format::kJson ? rec.to_json() : rec.to_csv();
    if (g.out_path.empty()) {
        std::cout << text;
        return std::cout ? 0 : 1;
    }
    std::ofstream file(g.out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        std::cerr << "fockint: cannot open output file " << g.out_path << "\n";
        return 1;
    }
    file << text;
    return file ? 0 : 1;
}

}  // namespace

int cmd_ghom_dist(const GlobalOptions& g, int na, int nb, double t) {
    const auto dist = ghom::outcome_distribution(FockPair(na, nb), Splitter(t));
    RunRecord rec;
    rec.command = "ghom dist";
    rec.parameters = {{"na", std::int64_t{na}}, {"nb", std::int64_t{nb}}, {"t", t}};
    rec.columns = {"m1", "m2", "p"};
    for (const auto& [m, p] : dist.entries)
        rec.rows.push_back({std::int64_t{m.counts[0]}, std::int64_t{m.counts[1]}, p});
    return emit(g, std::move(rec));
}

int cmd_ghom_scan(const GlobalOptions& g, int na, int nb, double t_min, double t_max,
                  int steps) {
    if (!(t_min >= 0.0 && t_min <= t_max && t_max <= 1.0))
        throw std::domain_error("ghom scan: need 0 <= tmin <= tmax <= 1");
    if (steps < 1) throw std::domain_error("ghom scan: steps must be >= 1");

    std::vector<double> grid;
    if (t_min == t_max) {
        grid.push_back(t_min);
    } else {
        grid.reserve(steps + 1);
        for (int i = 0; i <= steps; ++i)
            grid.push_back(t_min + (t_max - t_min) * static_cast<double>(i) / steps);
    }
    const auto rows = ghom::parity_scan(FockPair(na, nb), grid, g.threads);

    RunRecord rec;
    rec.command = "ghom scan";
    rec.parameters = {{"na", std::int64_t{na}},
                      {"nb", std::int64_t{nb}},
                      {"tmin", t_min},
                      {"tmax", t_max},
                      {"steps", std::int64_t{steps}}};
    rec.columns = {"t", "parity"};
    for (const auto& r : rows) rec.rows.push_back({r.t, r.parity});
    return emit(g, std::move(rec));
}

int cmd_bell_surface(const GlobalOptions& g, int n_total, int steps) {
    if (n_total <= 0 || n_total % 2 != 0)
        throw std::domain_error("bell surface: n must be even and positive");
    if (steps < 2) throw std::domain_error("bell surface: steps must be >= 2");

    const std::int64_t cells = static_cast<std::int64_t>(steps) * steps;
    std::vector<double> ab(static_cast<std::size_t>(cells));
    parallel_for_index(cells, g.threads, [&](std::int64_t idx) {
        const int i = static_cast<int>(idx / steps);
        const int j = static_cast<int>(idx % steps);
        const double t1 = static_cast<double>(i) / (steps - 1);
        const double t2 = static_cast<double>(j) / (steps - 1);
        ab[static_cast<std::size_t>(idx)] =
            bell::parity_correlator(n_total, Splitter(t1), Splitter(t2));
    });

    RunRecord rec;
    rec.command = "bell surface";
    rec.parameters = {{"n", std::int64_t{n_total}}, {"steps", std::int64_t{steps}}};
    rec.columns = {"t1", "t2", "ab"};
    for (std::int64_t idx = 0; idx < cells; ++idx) {
        const int i = static_cast<int>(idx / steps);
        const int j = static_cast<int>(idx % steps);
        rec.rows.push_back({static_cast<double>(i) / (steps - 1),
                            static_cast<double>(j) / (steps - 1),
                            ab[static_cast<std::size_t>(idx)]});
    }
    return emit(g, std::move(rec));
}

namespace {

void fill_chsh_scalars(RunRecord& rec, const bell::ChshResult& r) {
    rec.scalars = {{"q", r.q},
                   {"t1", r.settings.t1},
                   {"t2", r.settings.t2},
                   {"t1_prime", r.settings.t1_prime},
                   {"t2_prime", r.settings.t2_prime},
                   {"ab", r.correlators[0]},
                   {"ab_prime", r.correlators[1]},
                   {"a_prime_b", r.correlators[2]},
                   {"a_prime_b_prime", r.correlators[3]},
                   {"evaluations", r.evaluations},
                   {"ansatz_deviation", r.ansatz_deviation}};
}

}  // namespace

int cmd_chsh(const GlobalOptions& g, int n_total, const std::vector<double>& settings,
             bool optimize, std::int64_t budget) {
    if (n_total <= 0 || n_total % 2 != 0)
        throw std::domain_error("chsh: n must be even and positive");
    if (optimize == !settings.empty())
        throw std::domain_error("chsh: pass exactly one of --settings or --optimize");

    RunRecord rec;
    rec.command = "chsh";
    rec.parameters = {{"n", std::int64_t{n_total}}};
    bell::ChshResult result;
    if (optimize) {
        bell::OptimizeOptions opts;
        opts.budget = budget;
        opts.seed = g.seed;
        opts.threads = g.threads;
        result = bell::optimize_chsh(n_total, opts);
        rec.parameters.emplace("optimize", true);
        rec.parameters.emplace("budget", std::int64_t{budget});
        rec.parameters.emplace("seed", std::int64_t(g.seed));
    } else {
        if (settings.size() != 4)
            throw std::domain_error("chsh: --settings needs four comma-separated values");
        result = bell::chsh_q(
            n_total, bell::BellSettings(settings[0], settings[1], settings[2], settings[3]));
        rec.parameters.emplace("settings_t1", settings[0]);
        rec.parameters.emplace("settings_t2", settings[1]);
        rec.parameters.emplace("settings_t1_prime", settings[2]);
        rec.parameters.emplace("settings_t2_prime", settings[3]);
    }
    fill_chsh_scalars(rec, result);
    return emit(g, std::move(rec));
}

int cmd_qcurve(const GlobalOptions& g, int n_min, int n_max, int step, std::int64_t budget,
               bool emit_c) {
    if (n_min <= 0 || n_min % 2 != 0 || n_max % 2 != 0 || n_max < n_min)
        throw std::domain_error("qcurve: endpoints must be even, positive, ordered");
    if (step <= 0 || step % 2 != 0) throw std::domain_error("qcurve: step must be even");

    std::vector<int> ns;
    for (int n = n_min; n <= n_max; n += step) ns.push_back(n);
    bell::OptimizeOptions opts;
    opts.budget = budget;
    opts.seed = g.seed;
    opts.threads = g.threads;
    const auto rows = bell::q_vs_n_curve(ns, opts);

    RunRecord rec;
    rec.command = "qcurve";
    rec.parameters = {{"nmin", std::int64_t{n_min}},   {"nmax", std::int64_t{n_max}},
                      {"step", std::int64_t{step}},    {"budget", std::int64_t{budget}},
                      {"seed", std::int64_t(g.seed)},  {"emit_c", emit_c}};
    rec.columns = {"n", "q", "t1", "t2", "t1_prime", "t2_prime"};
    if (emit_c) {
        rec.columns.push_back("c1");
        rec.columns.push_back("c2");
    }
    for (const auto& row : rows) {
        const auto& s = row.result.settings;
        std::vector<RecordValue> cells = {std::int64_t{row.n_total}, row.result.q,
                                          s.t1, s.t2, s.t1_prime, s.t2_prime};
        if (emit_c) {
            cells.emplace_back(0.5 * (s.t2 - s.t1));
            cells.emplace_back(0.5 * (s.t1_prime - s.t2_prime));
        }
        rec.rows.push_back(std::move(cells));
    }
    return emit(g, std::move(rec));
}

int cmd_oracle_check(const GlobalOptions& g, int max_n) {
    if (max_n < 0 || max_n > 12)
        throw std::domain_error("oracle check: max-n must be in [0, 12]");
    constexpr double kThreshold = 1e-12;
    const double t_values[] = {0.0, 0.25, 0.5, 0.66, 1.0};

    double ghom_worst = 0.0;
    for (int na = 0; na <= max_n; ++na) {
        for (int nb = 0; nb <= max_n; ++nb) {
            if (na + nb > 12) continue;
            for (double t : t_values) {
                const FockPair src(na, nb);
                const auto reference = oracle::distribution_from_expansion(
                    oracle::expand_state(src, ghom_mode_map(Splitter(t))), src);
                const auto dist = ghom::outcome_distribution(src, Splitter(t));
                for (const auto& [m, p] : dist.entries)
                    ghom_worst = std::max(ghom_worst, std::abs(p - reference.probability(m)));
            }
        }
    }

    const std::pair<double, double> settings[] = {
        {0.5, 0.5}, {0.57, 0.43}, {0.06, 0.94}, {0.3, 0.8}, {0.486, 0.504}};
    double bell_joint_worst = 0.0;
    double bell_corr_worst = 0.0;
    for (int n = 2; n <= std::min(max_n, 8); n += 2) {
        const FockPair src(n / 2, n / 2);
        for (const auto& [t1, t2] : settings) {
            const auto poly =
                oracle::expand_state(src, bell_mode_map(Splitter(t1), Splitter(t2)));
            const auto reference = oracle::distribution_from_expansion(poly, src);
            for (const auto& [m, p_ref] : reference.entries) {
                const double p = bell::joint_probability(n, Splitter(t1), Splitter(t2), m);
                bell_joint_worst = std::max(bell_joint_worst, std::abs(p - p_ref));
            }
            const double corr_ref = oracle::parity_from_expansion(poly, src, {2, 4});
            bell_corr_worst = std::max(
                bell_corr_worst,
                std::abs(bell::parity_correlator(n, Splitter(t1), Splitter(t2)) - corr_ref));
        }
    }

    const bool pass = ghom_worst < kThreshold && bell_joint_worst < kThreshold &&
                      bell_corr_worst < kThreshold;
    RunRecord rec;
    rec.command = "oracle check";
    rec.parameters = {{"max_n", std::int64_t{max_n}}};
    rec.scalars = {{"ghom_max_residual", ghom_worst},
                   {"bell_joint_max_residual", bell_joint_worst},
                   {"bell_correlator_max_residual", bell_corr_worst},
                   {"threshold", kThreshold},
                   {"pass", pass}};
    const int rc = emit(g, std::move(rec));
    if (rc != 0) return rc;
    return pass ? 0 : 1;
}

}  // namespace fockint::cli
