#include "quenchfloq/floquet.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace quenchfloq {

namespace {

void require_time_in_period(double t, double period, const char* what) {
    if (!(t >= 0.0 && t <= period)) {
        throw std::invalid_argument(std::string(what) + ": time " + std::to_string(t) + " outside [0, " +
                                    std::to_string(period) + "]");
    }
}

void require_mode_index(const FloquetSolution& sol, std::size_t j, const char* what) {
    if (j >= sol.size()) {
        throw std::out_of_range(std::string(what) + ": mode index " + std::to_string(j) + " out of range (dim " +
                                std::to_string(sol.size()) + ")");
    }
}

// Uniform nodes k T / steps with t0 inserted when it falls strictly inside a cell.
std::vector<double> quench_partition(double t0, double period, int steps) {
    std::vector<double> nodes;
    nodes.reserve(static_cast<std::size_t>(steps) + 2);
    const double h = period / steps;
    const double snap = 1e-12 * period;
    for (int k = 0; k <= steps; ++k) {
        const double a = k * h;
        if (k > 0) {
            const double prev = nodes.back();
            if (t0 > prev + snap && t0 < a - snap) nodes.push_back(t0);
        }
        nodes.push_back(k == steps ? period : a);
    }
    return nodes;
}

const HermitianOperator& hamiltonian_at(const QuenchProtocol& q, double t) {
    return t < q.t0 ? q.pair.h2 : q.pair.h1;
}

}  // namespace

void QuenchProtocol::validate() const {
    if (!(period > 0.0) || !std::isfinite(period)) {
        throw std::invalid_argument("QuenchProtocol: period must be positive and finite");
    }
    if (!(t0 >= 0.0 && t0 <= period)) {
        throw std::invalid_argument("QuenchProtocol: quench time t0 = " + std::to_string(t0) + " outside [0, T]");
    }
    if (pair.h1.dim() != pair.h2.dim() || pair.h1.dim() < 1) {
        throw std::invalid_argument("QuenchProtocol: H1 and H2 dimensions differ");
    }
}

PiecewisePropagator::PiecewisePropagator(const QuenchProtocol& q)
    : t0_(q.t0), period_(q.period), h1_(eig_hermitian(q.pair.h1)), h2_(eig_hermitian(q.pair.h2)),
      first_leg_(expm_i_hermitian(h2_, q.t0)) {
    q.validate();
}

UnitaryOperator PiecewisePropagator::at(double t) const {
    require_time_in_period(t, period_, "propagator");
    if (t < t0_) return expm_i_hermitian(h2_, t);
    return expm_i_hermitian(h1_, t - t0_) * first_leg_;
}

UnitaryOperator PiecewisePropagator::monodromy() const {
    return expm_i_hermitian(h1_, period_ - t0_) * first_leg_;
}

UnitaryOperator propagator(const QuenchProtocol& q, double t) {
    q.validate();
    return PiecewisePropagator(q).at(t);
}

UnitaryOperator monodromy(const QuenchProtocol& q) {
    q.validate();
    return PiecewisePropagator(q).monodromy();
}

double fold_to_first_zone(double energy, double period) {
    const double width = 2.0 * std::numbers::pi / period;
    double e = energy - width * std::floor((energy + 0.5 * width) / width);
    if (e >= 0.5 * width) e -= width;
    if (e < -0.5 * width) e += width;
    return e;
}

FloquetSolution floquet_solve(const QuenchProtocol& q) {
    q.validate();
    auto prop = std::make_shared<const PiecewisePropagator>(q);
    const auto decomposition = eig_unitary(prop->monodromy());

    const double period = q.period;
    const auto dim = static_cast<std::size_t>(decomposition.eigenvalues.size());

    FloquetSolution sol;
    sol.protocol = q;
    sol.modes0 = decomposition.eigenvectors;
    sol.quasienergies.resize(dim);
    sol.mean_energies.resize(dim);
    sol.geometric_phases.resize(dim);

    // Eigenvalues arrive sorted by -arg(lambda) on [-pi, pi), so eps_j = key / T is already ascending.
    for (std::size_t j = 0; j < dim; ++j) {
        sol.quasienergies[j] = phase_key(decomposition.eigenvalues[j]) / period;
    }

    const ComplexMatrix& h1 = q.pair.h1.matrix();
    const ComplexMatrix& h2 = q.pair.h2.matrix();
    const ComplexMatrix evolved = prop->first_leg().matrix() * sol.modes0;
    const double w2 = q.t0 / period;
    const double w1 = (period - q.t0) / period;
    for (std::size_t j = 0; j < dim; ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        const double e2 = sol.modes0.col(col).dot(h2 * sol.modes0.col(col)).real();
        const double e1 = evolved.col(col).dot(h1 * evolved.col(col)).real();
        sol.mean_energies[j] = w2 * e2 + w1 * e1;
        sol.geometric_phases[j] = (sol.mean_energies[j] - sol.quasienergies[j]) * period;
    }
    sol.propagator = std::move(prop);
    return sol;
}

ComplexVector floquet_mode_at(const FloquetSolution& sol, std::size_t j, double t) {
    require_mode_index(sol, j, "floquet_mode_at");
    require_time_in_period(t, sol.protocol.period, "floquet_mode_at");
    const cplx phase = std::polar(1.0, t * sol.quasienergies[j]);
    return phase * (sol.propagator->at(t).matrix() * sol.modes0.col(static_cast<Eigen::Index>(j)));
}

double mean_energy_quadrature_check(const FloquetSolution& sol, std::size_t j, int steps) {
    require_mode_index(sol, j, "mean_energy_quadrature_check");
    if (steps < 2) throw std::invalid_argument("mean_energy_quadrature_check: steps must be >= 2");
    const auto& q = sol.protocol;
    const auto nodes = quench_partition(q.t0, q.period, steps);

    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        const double a = nodes[k];
        const double b = nodes[k + 1];
        const double mid = 0.5 * (a + b);
        const ComplexVector phi = floquet_mode_at(sol, j, mid);
        const double value = phi.dot(hamiltonian_at(q, mid).matrix() * phi).real();
        integral += (b - a) * value;
    }
    return integral / q.period;
}

double geometric_phase_quadrature_check(const FloquetSolution& sol, std::size_t j, int steps) {
    require_mode_index(sol, j, "geometric_phase_quadrature_check");
    if (steps < 8) throw std::invalid_argument("geometric_phase_quadrature_check: steps must be >= 8");
    const auto& q = sol.protocol;
    const auto nodes = quench_partition(q.t0, q.period, steps);

    const ComplexVector start = sol.modes0.col(static_cast<Eigen::Index>(j));
    ComplexVector previous = start;
    double total_arg = 0.0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
        // Closing the loop on |Phi_j(0)> keeps the sum gauge invariant.
        const ComplexVector current = k + 1 == nodes.size() ? start : floquet_mode_at(sol, j, nodes[k]);
        const cplx overlap = previous.dot(current);
        if (std::abs(overlap) < 1e-6) {
            throw NumericalError("geometric_phase_quadrature_check: overlap " + std::to_string(std::abs(overlap)) +
                                 " at node " + std::to_string(k) + " is below 1e-6; partition too coarse");
        }
        total_arg += std::arg(overlap);
        previous = current;
    }
    return -total_arg;
}

CorrelatorResult two_time_correlator(const FloquetSolution& sol, const HermitianOperator& observable) {
    if (observable.dim() != static_cast<Eigen::Index>(sol.size())) {
        throw std::invalid_argument("two_time_correlator: observable dim " + std::to_string(observable.dim()) +
                                    " does not match state dim " + std::to_string(sol.size()));
    }
    const ComplexMatrix u = sol.propagator->monodromy().matrix();
    const ComplexMatrix& o = observable.matrix();
    const ComplexMatrix heisenberg = u.adjoint() * o * u;
    const ComplexMatrix chain = heisenberg * o * sol.modes0;

    CorrelatorResult out;
    out.values.resize(sol.size());
    for (std::size_t j = 0; j < sol.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        out.values[j] = sol.modes0.col(col).dot(chain.col(col));
    }
    return out;
}

}  // namespace quenchfloq
