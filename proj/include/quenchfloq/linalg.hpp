#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace quenchfloq {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = std::vector<double>;

/// Raised when an iterative or decomposition step cannot meet its accuracy contract.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what, long iterations = -1)
        : std::runtime_error(what), iterations_(iterations) {}

    /// Iteration count at which the failure was detected, or -1 when not applicable.
    long iterations() const noexcept { return iterations_; }

private:
    long iterations_;
};

/// Dense Hermitian operator. Construction validates finiteness and Hermiticity
/// (max |A_ij - conj(A_ji)| <= 1e-12 * max(1, ||A||_F)) and stores the exactly
/// symmetrized matrix.
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;

private:
    ComplexMatrix m_;
};

/// Dense unitary operator; construction checks ||U^dagger U - I||_2 <= 1e-10.
class UnitaryOperator {
public:
    UnitaryOperator() = default;
    explicit UnitaryOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Eigen::Index dim() const noexcept { return m_.rows(); }

    UnitaryOperator operator*(const UnitaryOperator& o) const;
    UnitaryOperator adjoint() const;

private:
    struct Unchecked {};
    UnitaryOperator(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

struct SpectralDecomposition {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // orthonormal columns, index-aligned
};

struct UnitaryEigenDecomposition {
    std::vector<cplx> eigenvalues;  // unit modulus, ascending in -arg(lambda) on [-pi, pi)
    ComplexMatrix eigenvectors;
};

/// Eigendecomposition of a Hermitian operator. Eigenvalues ascending; within
/// exactly degenerate clusters the columns are ordered by the first component
/// of modulus above 1e-8 and every column is phase-fixed so that component is
/// real positive.
SpectralDecomposition eig_hermitian(const HermitianOperator& h);

/// exp(-i c H) built from the spectral decomposition of H.
UnitaryOperator expm_i_hermitian(const HermitianOperator& h, double c);
UnitaryOperator expm_i_hermitian(const SpectralDecomposition& spec, double c);

/// Eigendecomposition of a unitary operator.
///
/// The Hermitian part (U + U^dagger)/2 is diagonalized first. Eigenvalue
/// clusters of that part (consecutive gaps <= 1e-8 * dim) are then resolved
/// by diagonalizing the projected (U - U^dagger)/(2i) inside the cluster.
/// Eigenvalues are recovered as normalized Rayleigh quotients and sorted
/// ascending in the key -arg(lambda) folded to [-pi, pi).
UnitaryEigenDecomposition eig_unitary(const UnitaryOperator& u);

/// sqrt(lambda_max(A^dagger A)).
double spectral_norm(const ComplexMatrix& a);

/// AB - BA. Throws std::invalid_argument on shape mismatch.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

/// -arg(lambda) folded into [-pi, pi).
double phase_key(cplx lambda);

/// Max entry deviation from Hermiticity, max |A_ij - conj(A_ji)|.
double hermiticity_defect(const ComplexMatrix& a);

/// ||U^dagger U - I||_2.
double unitarity_defect(const ComplexMatrix& u);

}  // namespace quenchfloq
