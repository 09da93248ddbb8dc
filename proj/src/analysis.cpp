#include "quenchfloq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quenchfloq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_grid(const std::vector<double>& grid, double period, const char* what) {
    if (grid.empty()) throw std::invalid_argument(std::string(what) + ": t0 grid is empty");
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument(std::string(what) + ": period must be positive and finite");
    }
    for (double t0 : grid) {
        if (!(t0 >= 0.0 && t0 <= period)) {
            throw std::invalid_argument(std::string(what) + ": t0 sample " + std::to_string(t0) + " outside [0, T]");
        }
    }
}

const HermitianOperator& require_observable(const ModelPair& pair, const char* what) {
    if (!pair.observable_sx) {
        throw std::invalid_argument(std::string(what) + ": model '" + pair.label + "' has no Sx observable");
    }
    return *pair.observable_sx;
}

struct GridPointComparison {
    RealVector static_energies;
    ComplexMatrix static_vectors;
    FloquetSolution floquet;
};

GridPointComparison compare_at(const ModelPair& pair, double period, double t0) {
    const double xi = std::clamp(t0 / period, 0.0, 1.0);
    auto spec = eig_hermitian(static_hamiltonian(pair, xi));
    return {std::move(spec.eigenvalues), std::move(spec.eigenvectors), floquet_solve({pair, t0, period})};
}

}  // namespace

CharacteristicTimes characteristic_times(const ModelPair& pair) {
    const auto e1 = eig_hermitian(pair.h1).eigenvalues;
    const auto e2 = eig_hermitian(pair.h2).eigenvalues;

    CharacteristicTimes ct;
    ct.e1_min = e1.front();
    ct.e1_max = e1.back();
    ct.e2_min = e2.front();
    ct.e2_max = e2.back();

    const double spread_product = (ct.e1_max - ct.e1_min) * (ct.e2_max - ct.e2_min);
    ct.t_c = spread_product > 0.0 ? 4.0 / std::sqrt(spread_product) : kInf;

    const double largest = std::max({std::abs(ct.e1_max), std::abs(ct.e1_min), std::abs(ct.e2_max),
                                     std::abs(ct.e2_min)});
    ct.t_c_prime = largest > 0.0 ? 1.0 / largest : kInf;
    return ct;
}

ComplexMatrix bch_delta(const ModelPair& pair, double t0, double period) {
    if (!(t0 >= 0.0 && t0 <= period)) {
        throw std::invalid_argument("bch_delta: t0 = " + std::to_string(t0) + " outside [0, T]");
    }
    const double prefactor = -(period - t0) * t0 / 2.0;
    return prefactor * commutator(pair.h1.matrix(), pair.h2.matrix());
}

BchBoundReport bch_bound_check(const ModelPair& pair, double period, const std::vector<double>& t0_grid) {
    require_grid(t0_grid, period, "bch_bound_check");
    const auto ct = characteristic_times(pair);

    BchBoundReport report;
    report.period = period;
    report.bound = std::isinf(ct.t_c) ? 0.0 : (period / ct.t_c) * (period / ct.t_c);

    // The optimal identity shifts center each spectrum; they leave Delta unchanged.
    const auto n = pair.dim;
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);
    const double shift1 = 0.5 * (ct.e1_max + ct.e1_min);
    const double shift2 = 0.5 * (ct.e2_max + ct.e2_min);
    const double norm1 = spectral_norm(pair.h1.matrix() - shift1 * id);
    const double norm2 = spectral_norm(pair.h2.matrix() - shift2 * id);
    report.bound_from_shifted_norms = period * period * norm1 * norm2 / 4.0;

    const double slack_tol = 1e-12 * std::max(1.0, report.bound) + 1e-15;
    for (double t0 : t0_grid) {
        const double norm = spectral_norm(bch_delta(pair, t0, period));
        if (norm > report.max_norm) {
            report.max_norm = norm;
            report.argmax_t0 = t0;
        }
        if (norm > report.bound + slack_tol) report.violations.push_back(t0);
    }
    return report;
}

std::string_view to_string(DeviationMode mode) {
    return mode == DeviationMode::quasienergy ? "quasienergy" : "mean_energy";
}

std::string_view to_string(ZonePolicy policy) {
    return policy == ZonePolicy::restricted ? "restricted" : "extended";
}

std::vector<std::size_t> pair_by_overlap(const ComplexMatrix& static_vectors, const ComplexMatrix& modes) {
    if (static_vectors.rows() != modes.rows() || static_vectors.cols() != modes.cols()) {
        throw std::invalid_argument("pair_by_overlap: basis shapes differ");
    }
    const auto d = modes.cols();
    Eigen::MatrixXd weight = (static_vectors.adjoint() * modes).cwiseAbs2();

    std::vector<std::size_t> partner(static_cast<std::size_t>(d), 0);
    for (Eigen::Index round = 0; round < d; ++round) {
        Eigen::Index best_n = -1;
        Eigen::Index best_j = -1;
        double best = -1.0;
        for (Eigen::Index n = 0; n < d; ++n) {
            for (Eigen::Index j = 0; j < d; ++j) {
                if (weight(n, j) > best) {
                    best = weight(n, j);
                    best_n = n;
                    best_j = j;
                }
            }
        }
        partner[static_cast<std::size_t>(best_j)] = static_cast<std::size_t>(best_n);
        weight.row(best_n).setConstant(-2.0);
        weight.col(best_j).setConstant(-2.0);
    }
    return partner;
}

double unfold_quasienergy(double quasienergy, double reference, double period) {
    const double width = 2.0 * std::numbers::pi / period;
    const double k = std::round((reference - quasienergy) / width);
    return quasienergy + k * width;
}

DeviationReport deviation_metric(const ModelPair& pair, double period, const std::vector<double>& t0_grid,
                                 DeviationMode mode, ZonePolicy policy) {
    require_grid(t0_grid, period, "deviation_metric");

    DeviationReport report;
    report.period = period;
    report.mode = mode;
    report.zone_policy = policy;

    for (double t0 : t0_grid) {
        const auto cmp = compare_at(pair, period, t0);
        const auto& sol = cmp.floquet;
        const std::size_t d = sol.size();

        std::vector<std::size_t> partner(d);
        if (policy == ZonePolicy::restricted) {
            for (std::size_t j = 0; j < d; ++j) partner[j] = j;
        } else {
            partner = pair_by_overlap(cmp.static_vectors, sol.modes0);
        }

        for (std::size_t j = 0; j < d; ++j) {
            const double reference = cmp.static_energies[partner[j]];
            double value = mode == DeviationMode::quasienergy ? sol.quasienergies[j] : sol.mean_energies[j];
            if (mode == DeviationMode::quasienergy && policy == ZonePolicy::extended) {
                value = unfold_quasienergy(value, reference, period);
            }
            const double diff = std::abs(value - reference);
            if (diff > report.d_value) {
                report.d_value = diff;
                report.argmax_state = partner[j];
                report.argmax_t0 = t0;
            }
        }
    }
    return report;
}

DeviationSummary deviation_summary(const ModelPair& pair, double period, const std::vector<double>& t0_grid) {
    require_grid(t0_grid, period, "deviation_summary");
    DeviationSummary out;
    for (double t0 : t0_grid) {
        const auto cmp = compare_at(pair, period, t0);
        const auto& sol = cmp.floquet;
        const auto partner = pair_by_overlap(cmp.static_vectors, sol.modes0);
        for (std::size_t j = 0; j < sol.size(); ++j) {
            out.quasi_restricted =
                std::max(out.quasi_restricted, std::abs(sol.quasienergies[j] - cmp.static_energies[j]));
            const double reference = cmp.static_energies[partner[j]];
            out.quasi_extended = std::max(
                out.quasi_extended, std::abs(unfold_quasienergy(sol.quasienergies[j], reference, period) - reference));
            out.mean = std::max(out.mean, std::abs(sol.mean_energies[j] - reference));
        }
    }
    return out;
}

std::vector<double> uniform_t0_grid(double period, int points) {
    if (points < 2) throw std::invalid_argument("uniform_t0_grid: need at least 2 points");
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) grid[static_cast<std::size_t>(k)] = period * k / (points - 1);
    grid.back() = period;
    return grid;
}

std::vector<GsqptPoint> gsqpt_scan(const ModelPair& pair, double period, const std::vector<double>& t0_grid) {
    const auto& sx = require_observable(pair, "gsqpt_scan");
    require_grid(t0_grid, period, "gsqpt_scan");

    std::vector<GsqptPoint> scan;
    scan.reserve(t0_grid.size());
    for (double t0 : t0_grid) {
        const auto sol = floquet_solve({pair, t0, period});
        const auto f = two_time_correlator(sol, sx);
        scan.push_back({t0 / period, f.values.front().real()});
    }
    return scan;
}

std::optional<double> gsqpt_transition(const std::vector<GsqptPoint>& scan, double rel_threshold) {
    if (scan.empty()) return std::nullopt;
    double peak = 0.0;
    for (const auto& p : scan) peak = std::max(peak, std::abs(p.re_f0));
    const double threshold = rel_threshold * peak;
    if (std::abs(scan.front().re_f0) >= threshold) return std::nullopt;

    for (std::size_t k = 1; k < scan.size(); ++k) {
        const double hi = std::abs(scan[k].re_f0);
        if (hi < threshold) continue;
        const double lo = std::abs(scan[k - 1].re_f0);
        const double frac = (threshold - lo) / (hi - lo);
        return scan[k - 1].t0_over_period + frac * (scan[k].t0_over_period - scan[k - 1].t0_over_period);
    }
    return std::nullopt;
}

EsqptResult esqpt_locate(const ModelPair& pair, double period, double t0) {
    const auto& sx = require_observable(pair, "esqpt_locate");
    const auto sol = floquet_solve({pair, t0, period});
    const auto f = two_time_correlator(sol, sx);
    const std::size_t d = sol.size();

    EsqptResult out;
    out.excitation.resize(d);
    out.re_correlator.resize(d);
    double peak = 0.0;
    for (std::size_t n = 0; n < d; ++n) {
        out.excitation[n] = sol.quasienergies[n] - sol.quasienergies[0];
        out.re_correlator[n] = f.values[n].real();
        peak = std::max(peak, std::abs(out.re_correlator[n]));
    }
    for (std::size_t n = 1; n + 1 < d; ++n) {
        const double second = out.re_correlator[n + 1] - 2.0 * out.re_correlator[n] + out.re_correlator[n - 1];
        out.max_second_difference = std::max(out.max_second_difference, std::abs(second));
    }
    out.smooth = out.max_second_difference <= 0.05 * peak;

    if (d < 5) return out;
    std::size_t last_even = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t n = 0; n + 2 < d; n += 2) {
        const double spacing = sol.quasienergies[n + 2] - sol.quasienergies[n];
        if (spacing < best) {
            best = spacing;
            out.n_star = n;
        }
        last_even = n;
    }
    if (out.n_star != 0 && out.n_star != last_even) {
        out.detected = true;
        out.critical_excitation = out.excitation[out.n_star + 2];
    }
    return out;
}

}  // namespace quenchfloq
