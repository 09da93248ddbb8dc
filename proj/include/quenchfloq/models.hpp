#pragma once

#include <optional>
#include <string>

#include "quenchfloq/linalg.hpp"

namespace quenchfloq {

// Natural units throughout: hbar = 1, energies in units of hbar*Omega when
// the model frequency constant is 1.

/// LMG model in the maximal collective-spin sector S = N/2.
struct LmgParams {
    int n = 20;           // particle number, even and >= 2
    double omega = 1.0;   // frequency constant Omega > 0

    void validate() const;
};

/// Two-level atom/diatomic-molecule boson model with conserved M = n_a + 2 n_b.
struct AtomDiatomParams {
    int m = 20;            // total atom number, even and >= 2
    double omega0 = 2.0;   // atomic frequency omega_0
    double omega = 1.0;    // molecular frequency omega
    double coupling = 1.0; // coupling strength Omega > 0

    void validate() const;
    int dim() const { return m / 2 + 1; }
};

struct ModelPair {
    HermitianOperator h1;
    HermitianOperator h2;
    Eigen::Index dim = 0;
    std::optional<HermitianOperator> observable_sx;
    std::string label;
    /// Frequency constant used to express energies in hbar*Omega and times in 1/Omega.
    double frequency = 1.0;
};

struct SpinOperators {
    HermitianOperator sx;
    HermitianOperator sy;
    HermitianOperator sz;
};

/// Collective spin matrices for S = n/2 in the basis m = -S, ..., S (ascending).
SpinOperators collective_spin_ops(int n);

/// H1 = Omega Sz / (2S), H2 = -Omega Sx^2 / S^2, observable Sx.
ModelPair lmg_pair(const LmgParams& p);

/// Basis |n_b> for n_b = 0..M/2 with n_a = M - 2 n_b.
ModelPair atom_diatom_pair(const AtomDiatomParams& p);

/// xi * H2 + (1 - xi) * H1; xi must lie in [0, 1].
HermitianOperator static_hamiltonian(const ModelPair& pair, double xi);

/// Eigenvalues of static_hamiltonian, ascending.
RealVector static_spectrum(const ModelPair& pair, double xi);

}  // namespace quenchfloq
