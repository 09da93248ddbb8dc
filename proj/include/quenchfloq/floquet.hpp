#pragma once

#include <memory>
#include <vector>

#include "quenchfloq/linalg.hpp"
#include "quenchfloq/models.hpp"

namespace quenchfloq {

/// Periodic two-step quench: H2 on [0, t0), H1 on [t0, T), repeated with period T.
struct QuenchProtocol {
    ModelPair pair;
    double t0 = 0.0;
    double period = 1.0;

    void validate() const;
    double quench_fraction() const { return t0 / period; }
};

/// Cached spectral data of H1 and H2 for repeated propagator evaluation.
class PiecewisePropagator {
public:
    explicit PiecewisePropagator(const QuenchProtocol& q);

    /// U(t, 0) for t in [0, T].
    UnitaryOperator at(double t) const;
    /// U(T, 0) = exp(-i (T - t0) H1) exp(-i t0 H2).
    UnitaryOperator monodromy() const;
    /// exp(-i t0 H2).
    const UnitaryOperator& first_leg() const { return first_leg_; }

private:
    double t0_;
    double period_;
    SpectralDecomposition h1_;
    SpectralDecomposition h2_;
    UnitaryOperator first_leg_;
};

struct FloquetSolution {
    RealVector quasienergies;      // ascending, inside [-pi/T, pi/T)
    ComplexMatrix modes0;          // column j is |Phi_j(0)>
    RealVector mean_energies;
    RealVector geometric_phases;   // (mean_energy - quasienergy) * T
    QuenchProtocol protocol;
    std::shared_ptr<const PiecewisePropagator> propagator;

    std::size_t size() const { return quasienergies.size(); }
};

struct CorrelatorResult {
    std::vector<cplx> values;  // f_j, index-aligned with FloquetSolution
};

UnitaryOperator propagator(const QuenchProtocol& q, double t);
UnitaryOperator monodromy(const QuenchProtocol& q);

/// Folds an energy into the first Brillouin zone [-pi/T, pi/T).
double fold_to_first_zone(double energy, double period);

FloquetSolution floquet_solve(const QuenchProtocol& q);

/// exp(i t eps_j) U(t, 0) |Phi_j(0)>.
ComplexVector floquet_mode_at(const FloquetSolution& sol, std::size_t j, double t);

/// Composite midpoint rule for the time-averaged energy of mode j, with
/// `steps` uniform cells over [0, T] and an extra node at t0.
double mean_energy_quadrature_check(const FloquetSolution& sol, std::size_t j, int steps);

/// Discrete Berry phase -sum arg <Phi_j(t_k)|Phi_j(t_k+1)> over the same
/// partition as mean_energy_quadrature_check, closed at t = T.
double geometric_phase_quadrature_check(const FloquetSolution& sol, std::size_t j, int steps);

/// f_j = <Phi_j(0)| U(T,0)^dagger O U(T,0) O |Phi_j(0)>.
CorrelatorResult two_time_correlator(const FloquetSolution& sol, const HermitianOperator& observable);

}  // namespace quenchfloq
