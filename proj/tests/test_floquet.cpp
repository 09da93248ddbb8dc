#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "quenchfloq/floquet.hpp"

using namespace quenchfloq;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

ModelPair diagonal_pair(std::vector<double> d1, std::vector<double> d2) {
    const auto n = static_cast<Eigen::Index>(d1.size());
    ComplexMatrix h1 = ComplexMatrix::Zero(n, n), h2 = ComplexMatrix::Zero(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        h1(k, k) = d1[static_cast<std::size_t>(k)];
        h2(k, k) = d2[static_cast<std::size_t>(k)];
    }
    ModelPair pair;
    pair.h1 = HermitianOperator(h1);
    pair.h2 = HermitianOperator(h2);
    pair.dim = n;
    pair.label = "diagonal";
    return pair;
}

double wrap_to_zone(double x, double width) {
    return x - width * std::round(x / width);
}

}  // namespace

TEST_SUITE("floquet") {

TEST_CASE("propagator branches") {
    const auto pair = lmg_pair({4, 1.0});
    const QuenchProtocol q{pair, 0.5, 1.0};
    CHECK(max_abs(propagator(q, 0.0).matrix() - ComplexMatrix::Identity(5, 5)) < 1e-14);

    const QuenchProtocol static_h1{pair, 0.0, 1.0};
    for (double t : {0.2, 0.7, 1.0}) {
        const auto expected = oracle::taylor_expm(-kI * t * pair.h1.matrix());
        CHECK(max_abs(propagator(static_h1, t).matrix() - expected) < 1e-12);
    }

    const ComplexMatrix expected = oracle::taylor_expm(-kI * 0.5 * pair.h1.matrix()) *
                          oracle::taylor_expm(-kI * 0.5 * pair.h2.matrix());
    CHECK(max_abs(propagator(q, 1.0).matrix() - expected) < 1e-10);
    const auto early = oracle::taylor_expm(-kI * 0.3 * pair.h2.matrix());
    CHECK(max_abs(propagator(q, 0.3).matrix() - early) < 1e-10);

    CHECK_THROWS_AS(propagator(q, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(propagator(q, 1.1), std::invalid_argument);
    CHECK_THROWS_AS(floquet_solve({pair, 1.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(floquet_solve({pair, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("monodromy endpoints, commuting pair and determinant") {
    const auto pair = lmg_pair({6, 1.0});
    const double period = 1.3;
    CHECK(max_abs(monodromy({pair, 0.0, period}).matrix() -
                  oracle::taylor_expm(-kI * period * pair.h1.matrix())) < 1e-12);
    CHECK(max_abs(monodromy({pair, period, period}).matrix() -
                  oracle::taylor_expm(-kI * period * pair.h2.matrix())) < 1e-12);

    const auto diag = diagonal_pair({0.3, -0.2, 0.9}, {1.0, 0.5, -0.7});
    const double t0 = 0.4;
    const auto u = monodromy({diag, t0, 1.0});
    const ComplexMatrix hs = (1.0 - t0) * diag.h1.matrix() + t0 * diag.h2.matrix();
    CHECK(max_abs(u.matrix() - oracle::taylor_expm(-kI * hs)) < 1e-14);

    for (double x : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const auto m = monodromy({pair, x * period, period}).matrix();
        const double phase = (period - x * period) * pair.h1.matrix().trace().real() +
                             x * period * pair.h2.matrix().trace().real();
        CHECK(std::abs(m.determinant() - std::polar(1.0, -phase)) < 1e-10);
    }
}

TEST_CASE("floquet_solve at t0 = 0 reproduces the H1 spectrum with zero geometric phase") {
    const auto pair = lmg_pair({20, 1.0});
    const auto sol = floquet_solve({pair, 0.0, 1.0});
    const auto e1 = eig_hermitian(pair.h1).eigenvalues;
    for (std::size_t j = 0; j < sol.size(); ++j) {
        CHECK(std::abs(sol.quasienergies[j] - e1[j]) < 1e-10);
        CHECK(std::abs(sol.mean_energies[j] - e1[j]) < 1e-10);
        CHECK(std::abs(sol.geometric_phases[j]) < 1e-9);
    }
}

TEST_CASE("floquet_solve on a commuting diagonal pair folds H_s eigenvalues") {
    const auto diag = diagonal_pair({0.0, 2.0, 4.0, -1.0}, {1.0, 3.0, -3.5, 0.0});
    const double period = 2.0;
    const double width = 2.0 * kPi / period;
    for (double x : {0.0, 0.3, 0.75, 1.0}) {
        const auto sol = floquet_solve({diag, x * period, period});
        std::vector<double> expected;
        for (int k = 0; k < 4; ++k) {
            const double hs = (1.0 - x) * diag.h1.matrix()(k, k).real() + x * diag.h2.matrix()(k, k).real();
            expected.push_back(fold_to_first_zone(hs, period));
        }
        std::sort(expected.begin(), expected.end());
        for (std::size_t j = 0; j < 4; ++j) {
            CHECK(std::abs(sol.quasienergies[j] - expected[j]) < 1e-12);
            CHECK(sol.quasienergies[j] >= -kPi / period);
            CHECK(sol.quasienergies[j] < kPi / period);
            // Mean energies are unfolded; phases are multiples of 2 pi.
            CHECK(std::abs(wrap_to_zone(sol.mean_energies[j] - sol.quasienergies[j], width)) < 1e-12);
            CHECK(std::abs(wrap_to_zone(sol.geometric_phases[j], 2.0 * kPi)) < 1e-12);
        }
    }
}

TEST_CASE("fold_to_first_zone maps onto the half-open zone") {
    const double period = 1.0;
    CHECK(fold_to_first_zone(kPi, period) == doctest::Approx(-kPi));
    CHECK(fold_to_first_zone(-kPi, period) == doctest::Approx(-kPi));
    CHECK(fold_to_first_zone(0.5, period) == doctest::Approx(0.5));
    CHECK(fold_to_first_zone(7.0, period) == doctest::Approx(7.0 - 2.0 * kPi));
    for (double e = -20.0; e < 20.0; e += 0.37) {
        const double f = fold_to_first_zone(e, 0.8);
        CHECK(f >= -kPi / 0.8);
        CHECK(f < kPi / 0.8);
        CHECK(std::abs(wrap_to_zone(f - e, 2.0 * kPi / 0.8)) < 1e-12);
    }
}

TEST_CASE("FloquetSolution invariants across the quench grid") {
    const auto pair = lmg_pair({10, 1.0});
    const double period = 1.0;
    const double trace1 = pair.h1.matrix().trace().real();
    const double trace2 = pair.h2.matrix().trace().real();
    for (double x = 0.0; x <= 1.0 + 1e-12; x += 0.05) {
        const double t0 = std::min(x, 1.0) * period;
        const auto sol = floquet_solve({pair, t0, period});
        const auto d = static_cast<Eigen::Index>(sol.size());
        double sum = 0.0;
        for (std::size_t j = 0; j < sol.size(); ++j) {
            sum += sol.quasienergies[j];
            CHECK(sol.quasienergies[j] >= -kPi / period);
            CHECK(sol.quasienergies[j] < kPi / period);
            if (j > 0) CHECK(sol.quasienergies[j] >= sol.quasienergies[j - 1]);
            CHECK(sol.geometric_phases[j] == (sol.mean_energies[j] - sol.quasienergies[j]) * period);
        }
        const double expected = (1.0 - t0 / period) * trace1 + (t0 / period) * trace2;
        CHECK(std::abs(wrap_to_zone(sum - expected, 2.0 * kPi / period)) < 1e-9);
        CHECK(spectral_norm(sol.modes0.adjoint() * sol.modes0 - ComplexMatrix::Identity(d, d)) <= 1e-10);
    }
}

TEST_CASE("floquet_solve matches the Taylor and QR-Schur oracle pipeline") {
    for (int n : {2, 4, 10}) {
        const auto pair = lmg_pair({n, 1.0});
        for (double x : {0.1, 0.35, 0.6, 0.85}) {
            const auto sol = floquet_solve({pair, x, 1.0});
            const auto ref = oracle::floquet(pair.h1.matrix(), pair.h2.matrix(), x, 1.0);
            for (std::size_t j = 0; j < sol.size(); ++j) {
                CHECK(std::abs(sol.quasienergies[j] - ref.quasienergies[j]) < 1e-9);
            }
        }
    }
}

TEST_CASE("floquet_mode_at periodicity and the static limit") {
    const auto pair = lmg_pair({8, 1.0});
    const auto sol = floquet_solve({pair, 0.4, 1.0});
    for (std::size_t j = 0; j < sol.size(); ++j) {
        const auto col = sol.modes0.col(static_cast<Eigen::Index>(j));
        CHECK((floquet_mode_at(sol, j, 0.0) - col).norm() < 1e-14);
        CHECK((floquet_mode_at(sol, j, 1.0) - col).norm() < 1e-10);
        CHECK(std::abs(floquet_mode_at(sol, j, 0.63).norm() - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(floquet_mode_at(sol, sol.size(), 0.5), std::out_of_range);
    CHECK_THROWS_AS(floquet_mode_at(sol, 0, 1.5), std::invalid_argument);

    const auto still = floquet_solve({pair, 0.0, 1.0});
    for (double t : {0.1, 0.5, 0.9}) {
        CHECK((floquet_mode_at(still, 3, t) - still.modes0.col(3)).norm() < 1e-12);
    }
}

TEST_CASE("mean energy quadrature") {
    const auto pair = lmg_pair({10, 1.0});
    const auto still = floquet_solve({pair, 0.0, 1.0});
    const auto e1 = eig_hermitian(pair.h1).eigenvalues;
    for (int steps : {2, 7, 64}) CHECK(std::abs(mean_energy_quadrature_check(still, 4, steps) - e1[4]) < 1e-12);

    const auto diag = diagonal_pair({0.3, -0.2, 0.9}, {1.0, 0.5, -0.7});
    const auto sol_d = floquet_solve({diag, 0.35, 1.0});
    for (std::size_t j = 0; j < 3; ++j) {
        // Identify the basis state carried by mode j.
        Eigen::Index k = 0;
        sol_d.modes0.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff(&k);
        const double expected = 0.65 * diag.h1.matrix()(k, k).real() + 0.35 * diag.h2.matrix()(k, k).real();
        CHECK(std::abs(mean_energy_quadrature_check(sol_d, j, 16) - expected) < 1e-14);
    }

    // Richardson extrapolation over step doubling approaches the closed form.
    const auto sol = floquet_solve({pair, 0.3, 1.0});
    for (std::size_t j : {0u, 5u, 10u}) {
        const double coarse = mean_energy_quadrature_check(sol, j, 512);
        const double fine = mean_energy_quadrature_check(sol, j, 1024);
        const double extrapolated = (4.0 * fine - coarse) / 3.0;
        CHECK(std::abs(extrapolated - sol.mean_energies[j]) < 1e-8);
    }
    CHECK_THROWS_AS(mean_energy_quadrature_check(sol, 0, 1), std::invalid_argument);
}

TEST_CASE("geometric phase quadrature") {
    const auto pair20 = lmg_pair({20, 1.0});
    const auto still = floquet_solve({pair20, 0.0, 1.0});
    for (std::size_t j : {0u, 7u, 20u}) CHECK(std::abs(geometric_phase_quadrature_check(still, j, 16)) < 1e-12);

    const auto diag = diagonal_pair({0.3, -0.2, 0.9}, {1.0, 0.5, -0.7});
    const auto sol_d = floquet_solve({diag, 0.35, 1.0});
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(geometric_phase_quadrature_check(sol_d, j, 8)) < 1e-12);

    const auto sol = floquet_solve({pair20, 0.5, 1.0});
    CHECK(std::abs(geometric_phase_quadrature_check(sol, 0, 4096) - sol.geometric_phases[0]) < 1e-6);
    CHECK_THROWS_AS(geometric_phase_quadrature_check(sol, 0, 4), std::invalid_argument);
}

TEST_CASE("geometric phase quadrature rejects a partition that is too coarse") {
    // H2 = 4 pi sx turns full circle over [0, t0), so the modes are the sz basis;
    // with 8 cells each H2 step is a quarter turn onto an orthogonal state.
    ComplexMatrix sz(2, 2), sx(2, 2);
    sz << 1.0, 0.0, 0.0, -1.0;
    sx << 0.0, 1.0, 1.0, 0.0;
    ModelPair pair;
    pair.h1 = HermitianOperator(sz);
    pair.h2 = HermitianOperator(4.0 * kPi * sx);
    pair.dim = 2;
    const auto sol = floquet_solve({pair, 0.5, 1.0});
    CHECK_THROWS_AS(geometric_phase_quadrature_check(sol, 0, 8), NumericalError);
    CHECK_THROWS_AS(geometric_phase_quadrature_check(sol, 1, 8), NumericalError);
    CHECK_NOTHROW(geometric_phase_quadrature_check(sol, 0, 12));
}

TEST_CASE("two-time correlator") {
    const auto pair = lmg_pair({10, 1.0});
    const auto& sx = *pair.observable_sx;

    const auto still = floquet_solve({pair, 0.0, 1.0});
    const auto f = two_time_correlator(still, sx);
    const auto u = monodromy({pair, 0.0, 1.0}).matrix();
    const cplx expected = oracle::correlator_by_loops(u, sx.matrix(), still.modes0.col(0));
    CHECK(std::abs(f.values[0] - expected) < 1e-12);

    const auto sol = floquet_solve({pair, 0.45, 1.0});
    const auto fs = two_time_correlator(sol, sx);
    const double bound = std::pow(spectral_norm(sx.matrix()), 2);
    const auto um = monodromy({pair, 0.45, 1.0}).matrix();
    for (std::size_t j = 0; j < sol.size(); ++j) {
        CHECK(std::abs(fs.values[j]) <= bound + 1e-12);
        const cplx loops = oracle::correlator_by_loops(um, sx.matrix(), sol.modes0.col(static_cast<Eigen::Index>(j)));
        CHECK(std::abs(fs.values[j] - loops) < 1e-12);
    }

    const HermitianOperator scaled(1.7 * ComplexMatrix::Identity(11, 11));
    for (auto v : two_time_correlator(sol, scaled).values) CHECK(std::abs(v - 1.7 * 1.7) < 1e-12);

    CHECK_THROWS_AS(two_time_correlator(sol, HermitianOperator(ComplexMatrix::Identity(3, 3))),
                    std::invalid_argument);
}

}  // TEST_SUITE
