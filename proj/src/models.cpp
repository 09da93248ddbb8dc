#include "quenchfloq/models.hpp"

#include <cmath>
#include <stdexcept>

namespace quenchfloq {

void LmgParams::validate() const {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("lmg: particle number N must be even and >= 2, got " + std::to_string(n));
    }
    if (!(omega > 0.0) || !std::isfinite(omega)) {
        throw std::invalid_argument("lmg: omega must be a positive finite frequency");
    }
}

void AtomDiatomParams::validate() const {
    if (m < 2 || m % 2 != 0) {
        throw std::invalid_argument("atom_diatom: atom number M must be even and >= 2, got " + std::to_string(m));
    }
    if (!std::isfinite(omega0) || !std::isfinite(omega)) {
        throw std::invalid_argument("atom_diatom: omega0 and omega must be finite");
    }
    if (!(coupling > 0.0) || !std::isfinite(coupling)) {
        throw std::invalid_argument("atom_diatom: coupling must be a positive finite frequency");
    }
}

SpinOperators collective_spin_ops(int n) {
    if (n < 1) throw std::invalid_argument("collective_spin_ops: N must be >= 1, got " + std::to_string(n));
    const Eigen::Index dim = n + 1;
    const double s = 0.5 * n;

    ComplexMatrix sz = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix raise = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const double m = -s + static_cast<double>(k);
        sz(k, k) = m;
        if (k + 1 < dim) raise(k + 1, k) = std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix lower = raise.adjoint();

    return SpinOperators{
        HermitianOperator(0.5 * (raise + lower)),
        HermitianOperator((raise - lower) / cplx(0.0, 2.0)),
        HermitianOperator(sz),
    };
}

ModelPair lmg_pair(const LmgParams& p) {
    p.validate();
    const double s = 0.5 * p.n;
    const auto spin = collective_spin_ops(p.n);
    const ComplexMatrix& sx = spin.sx.matrix();

    ModelPair pair;
    pair.h1 = HermitianOperator(spin.sz.matrix() * (p.omega / (2.0 * s)));
    pair.h2 = HermitianOperator(sx * sx * (-p.omega / (s * s)));
    pair.dim = p.n + 1;
    pair.observable_sx = spin.sx;
    pair.label = "lmg";
    pair.frequency = p.omega;
    return pair;
}

ModelPair atom_diatom_pair(const AtomDiatomParams& p) {
    p.validate();
    const Eigen::Index dim = p.dim();
    const double mm = static_cast<double>(p.m);
    const double norm = p.coupling / std::pow(mm, 1.5);

    ComplexMatrix h1 = ComplexMatrix::Zero(dim, dim);
    ComplexMatrix h2 = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index nb = 0; nb < dim; ++nb) {
        const double na = mm - 2.0 * static_cast<double>(nb);
        h1(nb, nb) = (p.omega0 * na + 2.0 * p.omega * static_cast<double>(nb)) / (2.0 * mm);
        if (nb + 1 < dim) {
            // b^dagger a a raises n_b by one and lowers n_a by two.
            const double amp = norm * std::sqrt((static_cast<double>(nb) + 1.0) * na * (na - 1.0));
            h2(nb + 1, nb) = amp;
            h2(nb, nb + 1) = amp;
        }
    }

    ModelPair pair;
    pair.h1 = HermitianOperator(h1);
    pair.h2 = HermitianOperator(h2);
    pair.dim = dim;
    pair.label = "atom_diatom";
    pair.frequency = p.coupling;
    return pair;
}

HermitianOperator static_hamiltonian(const ModelPair& pair, double xi) {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::invalid_argument("static_hamiltonian: xi must lie in [0, 1], got " + std::to_string(xi));
    }
    if (xi == 0.0) return pair.h1;
    if (xi == 1.0) return pair.h2;
    return HermitianOperator(xi * pair.h2.matrix() + (1.0 - xi) * pair.h1.matrix());
}

RealVector static_spectrum(const ModelPair& pair, double xi) {
    return eig_hermitian(static_hamiltonian(pair, xi)).eigenvalues;
}

}  // namespace quenchfloq
