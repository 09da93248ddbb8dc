#include "quenchfloq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

namespace quenchfloq {

namespace {

constexpr double kHermitianTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kPivotFloor = 1e-8;
constexpr double kResidualTol = 1e-9;

bool all_finite(const ComplexMatrix& m) {
    return m.allFinite();
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() < 1 || m.rows() != m.cols()) {
        throw std::invalid_argument(std::string(what) + ": matrix must be square with dim >= 1, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) {
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    }
}

Eigen::Index pivot_index(const ComplexVector& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > kPivotFloor) return i;
    }
    return v.size();
}

void fix_phase(Eigen::Ref<ComplexVector> v) {
    const auto p = pivot_index(v);
    if (p == v.size()) return;
    const cplx z = v(p);
    v *= std::conj(z) / std::abs(z);
    v(p) = cplx(v(p).real(), 0.0);
}

// Deterministic ordering of columns [begin, end) that span a degenerate subspace.
void canonicalize_block(ComplexMatrix& vecs, Eigen::Index begin, Eigen::Index end) {
    for (auto c = begin; c < end; ++c) fix_phase(vecs.col(c));
    if (end - begin < 2) return;

    std::vector<Eigen::Index> order(static_cast<std::size_t>(end - begin));
    std::iota(order.begin(), order.end(), begin);
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const auto pa = pivot_index(vecs.col(a));
        const auto pb = pivot_index(vecs.col(b));
        if (pa != pb) return pa < pb;
        const double ma = pa < vecs.rows() ? std::abs(vecs(pa, a)) : 0.0;
        const double mb = pb < vecs.rows() ? std::abs(vecs(pb, b)) : 0.0;
        return ma > mb;
    });
    ComplexMatrix block(vecs.rows(), end - begin);
    for (std::size_t k = 0; k < order.size(); ++k) block.col(static_cast<Eigen::Index>(k)) = vecs.col(order[k]);
    vecs.middleCols(begin, end - begin) = block;
}

}  // namespace

double hermiticity_defect(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_defect(const ComplexMatrix& u) {
    const auto n = u.rows();
    return spectral_norm(u.adjoint() * u - ComplexMatrix::Identity(n, n));
}

HermitianOperator::HermitianOperator(ComplexMatrix m) {
    require_square(m, "HermitianOperator");
    const double scale = std::max(1.0, m.norm());
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol * scale) {
        throw std::invalid_argument("HermitianOperator: input is not Hermitian (max |A - A^dagger| = " +
                                    std::to_string(defect) + ")");
    }
    m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("HermitianOperator: dimension mismatch in sum");
    return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const {
    return HermitianOperator(m_ * s);
}

UnitaryOperator::UnitaryOperator(ComplexMatrix m) {
    require_square(m, "UnitaryOperator");
    const double defect = unitarity_defect(m);
    if (defect > kUnitaryTol) {
        throw std::invalid_argument("UnitaryOperator: input is not unitary (||U^dagger U - I||_2 = " +
                                    std::to_string(defect) + ")");
    }
    m_ = std::move(m);
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& o) const {
    if (dim() != o.dim()) throw std::invalid_argument("UnitaryOperator: dimension mismatch in product");
    return UnitaryOperator(m_ * o.m_, Unchecked{});
}

UnitaryOperator UnitaryOperator::adjoint() const {
    return UnitaryOperator(m_.adjoint(), Unchecked{});
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h) {
    const auto n = h.dim();
    if (n < 1) throw std::invalid_argument("eig_hermitian: empty operator");

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        // Eigen caps the implicit QL sweeps at 30 per eigenvalue.
        throw NumericalError("eig_hermitian: tridiagonal QR did not converge", 30L * static_cast<long>(n));
    }

    SpectralDecomposition out;
    const auto& vals = solver.eigenvalues();
    out.eigenvalues.assign(vals.data(), vals.data() + n);
    out.eigenvectors = solver.eigenvectors();

    double scale = 1.0;
    for (double v : out.eigenvalues) scale = std::max(scale, std::abs(v));
    const double cluster_tol = kHermitianTol * scale;

    Eigen::Index begin = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const bool split = k == n || out.eigenvalues[static_cast<std::size_t>(k)] -
                                             out.eigenvalues[static_cast<std::size_t>(k - 1)] >
                                         cluster_tol;
        if (split) {
            canonicalize_block(out.eigenvectors, begin, k);
            begin = k;
        }
    }
    return out;
}

UnitaryOperator expm_i_hermitian(const SpectralDecomposition& spec, double c) {
    if (!std::isfinite(c)) throw std::invalid_argument("expm_i_hermitian: non-finite time factor");
    const auto n = static_cast<Eigen::Index>(spec.eigenvalues.size());
    ComplexVector phases(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        phases(k) = std::polar(1.0, -c * spec.eigenvalues[static_cast<std::size_t>(k)]);
    }
    const auto& v = spec.eigenvectors;
    return UnitaryOperator(v * phases.asDiagonal() * v.adjoint());
}

UnitaryOperator expm_i_hermitian(const HermitianOperator& h, double c) {
    return expm_i_hermitian(eig_hermitian(h), c);
}

double phase_key(cplx lambda) {
    double key = -std::arg(lambda);
    if (key >= std::numbers::pi) key -= 2.0 * std::numbers::pi;
    return key;
}

UnitaryEigenDecomposition eig_unitary(const UnitaryOperator& u) {
    const auto n = u.dim();
    const ComplexMatrix& m = u.matrix();
    const ComplexMatrix herm = 0.5 * (m + m.adjoint());
    const ComplexMatrix anti = (m - m.adjoint()) / cplx(0.0, 2.0);

    auto cos_part = eig_hermitian(HermitianOperator(herm));
    ComplexMatrix vecs = cos_part.eigenvectors;
    const double cluster_tol = 1e-8 * static_cast<double>(n);

    Eigen::Index begin = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const bool split = k == n || cos_part.eigenvalues[static_cast<std::size_t>(k)] -
                                             cos_part.eigenvalues[static_cast<std::size_t>(k - 1)] >
                                         cluster_tol;
        if (!split) continue;
        const auto width = k - begin;
        if (width > 1) {
            const ComplexMatrix q = vecs.middleCols(begin, width);
            ComplexMatrix projected = q.adjoint() * anti * q;
            projected = 0.5 * (projected + projected.adjoint());
            const auto sin_part = eig_hermitian(HermitianOperator(projected));
            vecs.middleCols(begin, width) = q * sin_part.eigenvectors;
        }
        begin = k;
    }

    std::vector<cplx> lambdas(static_cast<std::size_t>(n));
    for (Eigen::Index j = 0; j < n; ++j) {
        const cplx rq = vecs.col(j).dot(m * vecs.col(j));
        const double mod = std::abs(rq);
        if (mod < 0.5) {
            throw NumericalError("eig_unitary: cluster orthogonalization failed (Rayleigh quotient modulus " +
                                 std::to_string(mod) + ")");
        }
        const cplx lambda = rq / mod;
        const double residual = (m * vecs.col(j) - lambda * vecs.col(j)).norm();
        if (residual > kResidualTol) {
            throw NumericalError("eig_unitary: eigenvector residual " + std::to_string(residual) +
                                 " exceeds tolerance in column " + std::to_string(j));
        }
        lambdas[static_cast<std::size_t>(j)] = lambda;
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return phase_key(lambdas[static_cast<std::size_t>(a)]) < phase_key(lambdas[static_cast<std::size_t>(b)]);
    });

    UnitaryEigenDecomposition out;
    out.eigenvalues.resize(static_cast<std::size_t>(n));
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto src = order[static_cast<std::size_t>(k)];
        out.eigenvalues[static_cast<std::size_t>(k)] = lambdas[static_cast<std::size_t>(src)];
        out.eigenvectors.col(k) = vecs.col(src);
    }

    begin = 0;
    for (Eigen::Index k = 1; k <= n; ++k) {
        const bool split = k == n || phase_key(out.eigenvalues[static_cast<std::size_t>(k)]) -
                                             phase_key(out.eigenvalues[static_cast<std::size_t>(k - 1)]) >
                                         kHermitianTol;
        if (split) {
            canonicalize_block(out.eigenvectors, begin, k);
            begin = k;
        }
    }
    return out;
}

double spectral_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    if (!all_finite(a)) throw std::invalid_argument("spectral_norm: non-finite entries");
    const ComplexMatrix gram = a.adjoint() * a;
    const auto spec = eig_hermitian(HermitianOperator(0.5 * (gram + gram.adjoint())));
    return std::sqrt(std::max(0.0, spec.eigenvalues.back()));
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument("commutator: dimension mismatch (" + std::to_string(a.rows()) + "x" +
                                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                                    std::to_string(b.cols()) + ")");
    }
    return a * b - b * a;
}

}  // namespace quenchfloq
