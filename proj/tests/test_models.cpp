#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "quenchfloq/analysis.hpp"
#include "quenchfloq/models.hpp"

using namespace quenchfloq;

namespace {
double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_SUITE("models") {

TEST_CASE("spin-1/2 matrices") {
    const auto s = collective_spin_ops(1);
    ComplexMatrix sx(2, 2), sz(2, 2);
    sx << 0.0, 0.5, 0.5, 0.0;
    sz << -0.5, 0.0, 0.0, 0.5;
    CHECK(max_abs(s.sx.matrix() - sx) < 1e-15);
    CHECK(max_abs(s.sz.matrix() - sz) < 1e-15);
    CHECK_THROWS_AS(collective_spin_ops(0), std::invalid_argument);
}

TEST_CASE("collective spin algebra and traces up to N=50") {
    const cplx i(0.0, 1.0);
    for (int n = 1; n <= 50; ++n) {
        const auto s = collective_spin_ops(n);
        const auto& x = s.sx.matrix();
        const auto& y = s.sy.matrix();
        const auto& z = s.sz.matrix();
        CHECK(max_abs(commutator(x, y) - i * z) < 1e-12);
        CHECK(max_abs(commutator(y, z) - i * x) < 1e-12);
        CHECK(max_abs(commutator(z, x) - i * y) < 1e-12);
        CHECK(std::abs(z.trace()) < 1e-12);
        CHECK(std::abs(x.trace()) < 1e-12);
        CHECK(hermiticity_defect(x) < 1e-12);
        CHECK(hermiticity_defect(y) < 1e-12);
    }
}

TEST_CASE("spin matrices agree with the entrywise ladder construction") {
    for (int n : {2, 5, 20}) {
        const auto s = collective_spin_ops(n);
        const auto ref = oracle::explicit_spin(n);
        CHECK(max_abs(s.sx.matrix() - ref.sx) < 1e-14);
        CHECK(max_abs(s.sy.matrix() - ref.sy) < 1e-14);
        CHECK(max_abs(s.sz.matrix() - ref.sz) < 1e-14);
    }
}

TEST_CASE("LMG N=20 spectra") {
    const auto pair = lmg_pair({20, 1.0});
    CHECK(pair.dim == 21);
    REQUIRE(pair.observable_sx.has_value());

    const auto e1 = eig_hermitian(pair.h1).eigenvalues;
    for (std::size_t n = 0; n < e1.size(); ++n) {
        CHECK(e1[n] - e1[0] == doctest::Approx(0.05 * static_cast<double>(n)).epsilon(1e-12));
    }
    const auto e2 = eig_hermitian(pair.h2).eigenvalues;
    CHECK(e1.back() - e1.front() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e2.back() - e2.front() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("LMG N=4 H2 closed form before sorting") {
    const auto pair = lmg_pair({4, 1.0});
    const auto spin = collective_spin_ops(4);
    // In the Sx eigenbasis (m = -2..2) H2 = -m^2 / S^2.
    const auto sx_basis = eig_hermitian(spin.sx).eigenvectors;
    const ComplexMatrix rotated = sx_basis.adjoint() * pair.h2.matrix() * sx_basis;
    const double expected[] = {-1.0, -0.25, 0.0, -0.25, -1.0};
    for (int k = 0; k < 5; ++k) CHECK(rotated(k, k).real() == doctest::Approx(expected[k]).epsilon(1e-12));
}

TEST_CASE("LMG traces against direct summation") {
    for (int n : {2, 4, 10, 20, 50}) {
        const auto pair = lmg_pair({n, 1.3});
        const double s = 0.5 * n;
        double sum = 0.0;
        for (int k = 0; k <= n; ++k) {
            const double m = -s + k;
            sum += -1.3 * m * m / (s * s);
        }
        CHECK(std::abs(pair.h1.matrix().trace()) < 1e-12);
        CHECK(pair.h2.matrix().trace().real() == doctest::Approx(sum).epsilon(1e-12));
    }
}

TEST_CASE("LMG parameter validation") {
    CHECK_THROWS_AS(lmg_pair({3, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lmg_pair({0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lmg_pair({4, -1.0}), std::invalid_argument);
}

TEST_CASE("atom-diatom M=20 construction") {
    const auto pair = atom_diatom_pair({20, 2.0, 1.0, 1.0});
    CHECK(pair.dim == 11);
    CHECK_FALSE(pair.observable_sx.has_value());
    const auto& h1 = pair.h1.matrix();
    const auto& h2 = pair.h2.matrix();
    for (int nb = 0; nb <= 10; ++nb) CHECK(h1(nb, nb).real() == doctest::Approx(1.0 - nb / 20.0).epsilon(1e-14));
    CHECK(h1.diagonal().real().maxCoeff() - h1.diagonal().real().minCoeff() == doctest::Approx(0.5));
    // Diagonal H1, bandwidth-one H2.
    for (int r = 0; r <= 10; ++r) {
        for (int c = 0; c <= 10; ++c) {
            if (r != c) CHECK(h1(r, c) == cplx(0.0));
            if (std::abs(r - c) > 1) CHECK(h2(r, c) == cplx(0.0));
        }
        CHECK(h2(r, r) == cplx(0.0));
    }
    const double amp = std::sqrt(1.0 * 20.0 * 19.0) / std::pow(20.0, 1.5);
    CHECK(h2(1, 0).real() == doctest::Approx(amp).epsilon(1e-14));
}

TEST_CASE("atom-diatom M=2 smallest sector") {
    const auto pair = atom_diatom_pair({2, 2.0, 1.0, 1.0});
    CHECK(pair.dim == 2);
    CHECK(pair.h2.matrix()(1, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("atom-diatom characteristic time") {
    const auto ct = characteristic_times(atom_diatom_pair({20, 2.0, 1.0, 1.0}));
    CHECK(std::abs(ct.t_c - 5.4695) < 1e-3);
    CHECK(ct.t_c_prime == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(atom_diatom_pair({5, 2.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("static_hamiltonian endpoints, affinity and range") {
    const auto pair = lmg_pair({20, 1.0});
    CHECK(max_abs(static_hamiltonian(pair, 0.0).matrix() - pair.h1.matrix()) == 0.0);
    CHECK(max_abs(static_hamiltonian(pair, 1.0).matrix() - pair.h2.matrix()) == 0.0);
    CHECK_THROWS_AS(static_hamiltonian(pair, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(static_hamiltonian(pair, 1.5), std::invalid_argument);

    for (auto [a, b] : {std::pair{0.1, 0.3}, std::pair{0.25, 0.5}, std::pair{0.6, 0.4}}) {
        const ComplexMatrix lhs = static_hamiltonian(pair, a).matrix() + static_hamiltonian(pair, b).matrix();
        const ComplexMatrix rhs = static_hamiltonian(pair, a + b).matrix() + static_hamiltonian(pair, 0.0).matrix();
        CHECK(max_abs(lhs - rhs) < 1e-14);
    }
}

TEST_CASE("static_spectrum at xi = 0.5 against an independent Jacobi eigensolver") {
    const auto pair = lmg_pair({20, 1.0});
    const auto ours = static_spectrum(pair, 0.5);
    const auto ref = oracle::jacobi_eigenvalues(0.5 * (pair.h1.matrix() + pair.h2.matrix()));
    REQUIRE(ours.size() == ref.size());
    for (std::size_t k = 0; k < ref.size(); ++k) CHECK(std::abs(ours[k] - ref[k]) < 1e-10);
}

TEST_CASE("static_spectrum at xi = 0 is equally spaced") {
    const auto e = static_spectrum(lmg_pair({20, 1.0}), 0.0);
    for (std::size_t n = 0; n < e.size(); ++n) CHECK(e[n] - e[0] == doctest::Approx(0.05 * n).epsilon(1e-12));
}

TEST_CASE("static_spectrum flattens toward pairwise degeneracy past xi = 0.2") {
    const auto pair = lmg_pair({20, 1.0});
    const auto below = static_spectrum(pair, 0.1);
    const auto above = static_spectrum(pair, 0.6);
    // Broken phase: the lowest doublet collapses relative to the symmetric phase.
    CHECK((above[1] - above[0]) < 1e-3 * (below[1] - below[0]));
}

}  // TEST_SUITE
