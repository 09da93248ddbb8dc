#include "quenchfloq/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "quenchfloq/analysis.hpp"
#include "quenchfloq/floquet.hpp"

namespace quenchfloq::cli {

namespace {

const char* parity(std::size_t n) { return n % 2 == 0 ? "even" : "odd"; }

std::string index_cell(std::size_t n) { return std::to_string(n); }

void append_rows(CsvTable& table, const std::vector<std::vector<std::vector<std::string>>>& blocks) {
    for (const auto& block : blocks) {
        for (const auto& row : block) table.add_row(row);
    }
}

std::string wrote(const OutputFile& f, std::size_t rows) {
    return "wrote " + f.name.string() + " (" + std::to_string(rows) + " rows)\n";
}

ModelPair pair_for_correlator(const SweepConfig& c) {
    auto pair = c.build_pair();
    if (!pair.observable_sx) {
        throw ConfigError("correlator: model '" + c.model_name() + "' has no Sx observable");
    }
    return pair;
}

// Correlator rows for one t0/T value; shared by the full sweep and the slices.
std::vector<std::vector<std::string>> correlator_rows(const ModelPair& pair, double period, double x) {
    const auto sol = floquet_solve({pair, x * period, period});
    const auto f = two_time_correlator(sol, *pair.observable_sx);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t n = 0; n < sol.size(); ++n) {
        rows.push_back({format_number(x), index_cell(n),
                        format_number((sol.quasienergies[n] - sol.quasienergies[0]) / pair.frequency),
                        format_number(f.values[n].real())});
    }
    return rows;
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};

    auto work = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                body(i);
            } catch (...) {
                errors[i] = std::current_exception();
                failed = true;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::vector<double> unit_grid(int points) {
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = static_cast<double>(k) / (points - 1);
    return grid;
}

std::string slice_file_name(double t0_over_period) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "correlator_slice_%g.csv", t0_over_period);
    return buf;
}

CommandResult cmd_static(const SweepConfig& c) {
    const auto pair = c.build_pair();
    const auto xs = unit_grid(c.points);
    std::vector<std::vector<std::vector<std::string>>> blocks(xs.size());
    parallel_for(xs.size(), c.threads, [&](std::size_t k) {
        const auto e = static_spectrum(pair, xs[k]);
        for (std::size_t n = 0; n < e.size(); ++n) {
            blocks[k].push_back({format_number(xs[k]), index_cell(n), parity(n),
                                 format_number((e[n] - e[0]) / pair.frequency)});
        }
    });
    CsvTable table(kStaticHeader);
    append_rows(table, blocks);

    CommandResult out;
    out.files.push_back({"static.csv", table.text()});
    out.report = wrote(out.files.back(), table.rows());
    return out;
}

CommandResult cmd_floquet(const SweepConfig& c) {
    const auto pair = c.build_pair();
    const double period = c.period / pair.frequency;
    const auto xs = unit_grid(c.points);
    std::vector<std::vector<std::vector<std::string>>> blocks(xs.size());
    parallel_for(xs.size(), c.threads, [&](std::size_t k) {
        const auto sol = floquet_solve({pair, xs[k] * period, period});
        auto eps = sol.quasienergies;
        if (c.zone == ZonePolicy::extended) {
            const auto spec = eig_hermitian(static_hamiltonian(pair, xs[k]));
            const auto partner = pair_by_overlap(spec.eigenvectors, sol.modes0);
            for (std::size_t j = 0; j < eps.size(); ++j) {
                eps[j] = unfold_quasienergy(eps[j], spec.eigenvalues[partner[j]], period);
            }
        }
        for (std::size_t n = 0; n < sol.size(); ++n) {
            blocks[k].push_back({format_number(xs[k]), index_cell(n), parity(n),
                                 format_number((eps[n] - eps[0]) / pair.frequency),
                                 format_number((sol.mean_energies[n] - sol.mean_energies[0]) / pair.frequency),
                                 format_number(sol.geometric_phases[n])});
        }
    });
    CsvTable table(kFloquetHeader);
    append_rows(table, blocks);

    CommandResult out;
    out.files.push_back({"floquet.csv", table.text()});
    out.report = wrote(out.files.back(), table.rows());
    return out;
}

CommandResult cmd_correlator(const SweepConfig& c) {
    const auto pair = pair_for_correlator(c);
    const double period = c.period / pair.frequency;
    const auto xs = unit_grid(c.points);
    std::vector<std::vector<std::vector<std::string>>> blocks(xs.size());
    parallel_for(xs.size(), c.threads, [&](std::size_t k) { blocks[k] = correlator_rows(pair, period, xs[k]); });
    CsvTable table(kCorrelatorHeader);
    append_rows(table, blocks);

    CommandResult out;
    out.files.push_back({"correlator.csv", table.text()});
    out.report = wrote(out.files.back(), table.rows());

    std::vector<std::vector<std::vector<std::string>>> slice_rows(c.slices.size());
    std::vector<EsqptResult> separatrix(c.slices.size());
    parallel_for(c.slices.size(), c.threads, [&](std::size_t k) {
        slice_rows[k] = correlator_rows(pair, period, c.slices[k]);
        separatrix[k] = esqpt_locate(pair, period, c.slices[k] * period);
    });
    for (std::size_t k = 0; k < c.slices.size(); ++k) {
        CsvTable slice(kCorrelatorHeader);
        for (const auto& row : slice_rows[k]) slice.add_row(row);
        out.files.push_back({slice_file_name(c.slices[k]), slice.text()});
        out.report += wrote(out.files.back(), slice.rows());
        char line[160];
        if (separatrix[k].detected) {
            std::snprintf(line, sizeof line, "  t0/T = %g: separatrix near eps_n - eps_0 = %.6f hbar*Omega (n* = %zu)\n",
                          c.slices[k], *separatrix[k].critical_excitation / pair.frequency, separatrix[k].n_star);
        } else {
            std::snprintf(line, sizeof line, "  t0/T = %g: no separatrix detected%s\n", c.slices[k],
                          separatrix[k].smooth ? ", Re f_n smooth" : "");
        }
        out.report += line;
    }
    return out;
}

CommandResult cmd_deviation(const SweepConfig& c) {
    const auto pair = c.build_pair();
    const auto ct = characteristic_times(pair);
    if (!std::isfinite(ct.t_c)) throw ConfigError("deviation: T_c is infinite for this model (flat spectrum)");

    std::vector<double> periods(static_cast<std::size_t>(c.t_points));
    for (int k = 0; k < c.t_points; ++k) {
        const double s = static_cast<double>(k) / (c.t_points - 1);
        periods[static_cast<std::size_t>(k)] =
            c.log_spacing ? c.t_min * std::pow(c.t_max / c.t_min, s) : c.t_min + s * (c.t_max - c.t_min);
    }
    periods.back() = c.t_max;

    std::vector<DeviationSummary> results(periods.size());
    parallel_for(periods.size(), c.threads, [&](std::size_t k) {
        const double period = periods[k] / pair.frequency;
        results[k] = deviation_summary(pair, period, uniform_t0_grid(period, c.t0_points));
    });

    CsvTable table(kDeviationHeader);
    for (std::size_t k = 0; k < periods.size(); ++k) {
        const double f = pair.frequency;
        table.add_row({format_number(periods[k] / f / ct.t_c), format_number(results[k].quasi_restricted / f),
                       format_number(results[k].quasi_extended / f), format_number(results[k].mean / f)});
    }

    const double tc = ct.t_c * pair.frequency;  // in 1/Omega
    nlohmann::ordered_json meta;
    meta["model"] = c.model_name();
    meta["t_c"] = tc;
    meta["t_c_prime"] = ct.t_c_prime * pair.frequency;
    meta["t_min"] = c.t_min;
    meta["t_max"] = c.t_max;
    meta["t_points"] = c.t_points;
    meta["spacing"] = c.log_spacing ? "log" : "linear";
    meta["t0_points"] = c.t0_points;
    meta["markers"] = nlohmann::ordered_json::array({
        {{"label", "T_c/4"}, {"T", tc / 4.0}, {"T_over_Tc", 0.25}},
        {{"label", "pi*T_c/4"}, {"T", std::numbers::pi * tc / 4.0}, {"T_over_Tc", std::numbers::pi / 4.0}},
        {{"label", "T_c"}, {"T", tc}, {"T_over_Tc", 1.0}},
    });

    CommandResult out;
    out.files.push_back({"deviation.csv", table.text()});
    out.report = wrote(out.files.back(), table.rows());
    out.files.push_back({"deviation_meta.json", meta.dump(2) + "\n"});
    out.report += "wrote deviation_meta.json\n";
    return out;
}

CommandResult cmd_info(const SweepConfig& c) {
    const auto pair = c.build_pair();
    const auto ct = characteristic_times(pair);
    const double tc = ct.t_c * pair.frequency;
    const double tcp = ct.t_c_prime * pair.frequency;
    const double ratio = c.period / tc;
    const double ratio_prime = c.period / tcp;
    const bool zone_ok = ratio_prime <= std::numbers::pi;

    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "model      %s (dim %lld)\n"
                  "T_c        %.12g / Omega\n"
                  "T_c'       %.12g / Omega\n"
                  "T          %.12g / Omega\n"
                  "T/T_c      %.12g\n"
                  "T/T_c'     %.12g\n"
                  "T/T_c' <= pi: %s\n",
                  c.model_name().c_str(), static_cast<long long>(pair.dim), tc, tcp, c.period, ratio, ratio_prime,
                  zone_ok ? "pass" : "FAIL");

    nlohmann::ordered_json summary;
    summary["model"] = c.model_name();
    summary["dim"] = pair.dim;
    summary["t_c"] = tc;
    summary["t_c_prime"] = tcp;
    summary["period"] = c.period;
    summary["T_over_Tc"] = ratio;
    summary["T_over_Tc_prime"] = ratio_prime;
    summary["first_zone_condition"] = zone_ok;
    summary["seed"] = c.seed;

    CommandResult out;
    out.report = buf;
    out.files.push_back({"info.json", summary.dump(2) + "\n"});
    if (!zone_ok) {
        std::snprintf(buf, sizeof buf,
                      "T/T_c' = %.6g exceeds pi; static energies leave the first Brillouin zone", ratio_prime);
        out.warnings.emplace_back(buf);
    }
    return out;
}

}  // namespace quenchfloq::cli
