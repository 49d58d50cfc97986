#include "pnsqkd/qmath.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace pnsqkd;
using Catch::Approx;

namespace {

CMatrix random_hermitian(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
    return (a + a.adjoint()) / 2.0;
}

StateVector random_state(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> g;
    CVector v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(g(rng), g(rng));
    return StateVector(v).normalized();
}

Operator random_density(std::mt19937_64& rng, int n) {
    CMatrix a = random_hermitian(rng, n);
    CMatrix rho = a * a.adjoint();
    return Operator(rho / rho.trace());
}

}  // namespace

TEST_CASE("eigenvalues agree with Eigen's self-adjoint solver") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 16;
        const CMatrix a = random_hermitian(rng, n);
        const auto ours = eig_hermitian(Operator(a));
        Eigen::SelfAdjointEigenSolver<CMatrix> ref(a);
        const double scale = std::max(1.0, a.norm());
        for (int k = 0; k < n; ++k) REQUIRE(ours.values[k] == Approx(ref.eigenvalues()[k]).margin(1e-11 * scale));
        // A v = lambda v column by column
        const CMatrix resid = a * ours.vectors - ours.vectors * Eigen::VectorXd::Map(ours.values.data(), n).cast<cplx>().asDiagonal();
        REQUIRE(resid.norm() < 1e-10 * scale);
        REQUIRE((ours.vectors.adjoint() * ours.vectors - CMatrix::Identity(n, n)).norm() < 1e-10);
    }
}

TEST_CASE("eigen solver handles degenerate and diagonal input") {
    const auto e = eig_hermitian(Operator::identity(4));
    for (double v : e.values) CHECK(v == Approx(1.0));
    CMatrix d = CMatrix::Zero(3, 3);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    const auto f = eig_hermitian(Operator(d));
    CHECK(f.values == std::vector<double>{-1.0, 2.0, 3.0});
    CHECK(max_eigenvalue(Operator(d)) == 3.0);
    CHECK(min_eigenvalue(Operator(d)) == -1.0);
}

TEST_CASE("trace norm and square root against Eigen") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + trial % 6;
        const CMatrix a = random_hermitian(rng, n);
        Eigen::SelfAdjointEigenSolver<CMatrix> ref(a);
        CHECK(trace_norm(Operator(a)) == Approx(ref.eigenvalues().cwiseAbs().sum()).epsilon(1e-10));
        const Operator rho = random_density(rng, n);
        const Operator r = sqrt_psd(rho);
        CHECK((r.mat() * r.mat() - rho.mat()).norm() < 1e-10);
    }
}

TEST_CASE("tensor products and named states") {
    const auto s = tensor(kets::zero(), kets::one());
    CHECK(s.dim() == 4);
    CHECK(std::abs(s[1] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(kets::phi_plus().inner(kets::psi_minus())) < 1e-15);
    CHECK(std::abs(kets::plus_x().inner(kets::equatorial(0.0))) == Approx(1.0));
    CHECK(std::abs(kets::plus_y().inner(kets::equatorial(kPi / 2))) == Approx(1.0));
    CHECK(tensor_power(kets::plus_x(), 3).dim() == 8);
    CHECK(tensor(paulis::x(), paulis::z()).dim() == 4);
    // Pauli algebra: XY = iZ
    CHECK(((paulis::x() * paulis::y()).mat() - cplx(0, 1) * paulis::z().mat()).norm() < 1e-15);
}

TEST_CASE("partial trace of product states returns the factors") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_state(rng, 2), b = random_state(rng, 2), c = random_state(rng, 2);
        const auto abc = tensor(tensor(a, b), c);
        const Operator full = Operator::projector(abc);
        CHECK((partial_trace(full, 3, {1}).mat() - Operator::projector(b).mat()).norm() < 1e-12);
        CHECK((partial_trace(full, 3, {0, 2}).mat() - tensor(Operator::projector(a), Operator::projector(c)).mat()).norm() < 1e-12);
        CHECK((reduced_state(abc, 3, {2}).mat() - Operator::projector(c).mat()).norm() < 1e-12);
    }
}

TEST_CASE("partial trace preserves trace and positivity") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const Operator rho = random_density(rng, 8);
        for (const std::vector<int>& keep : {std::vector<int>{0}, {1}, {2}, {0, 1}, {1, 2}}) {
            const Operator r = partial_trace(rho, 3, keep);
            CHECK(r.is_density(1e-10));
        }
        const auto psi = random_state(rng, 8);
        CHECK((reduced_state(psi, 3, {0, 2}).mat() - partial_trace(Operator::projector(psi), 3, {0, 2}).mat()).norm() < 1e-12);
    }
}

TEST_CASE("Bell state marginals are maximally mixed") {
    const Operator r = reduced_state(kets::psi_minus(), 2, {0});
    CHECK((r.mat() - 0.5 * CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("project_qubit picks out the branch") {
    const auto s = tensor(kets::plus_x(), kets::one());
    const auto p = project_qubit(s, 2, 1, kets::one());
    CHECK(std::abs(p.inner(kets::plus_x())) == Approx(1.0));
    CHECK(project_qubit(s, 2, 1, kets::zero()).norm() < 1e-15);
}

TEST_CASE("Dicke coordinates match the tensor power") {
    std::mt19937_64 rng(5);
    for (int n = 1; n <= 8; ++n) {
        const auto basis = symmetric_basis(n);
        REQUIRE(static_cast<int>(basis.size()) == n + 1);
        const auto q = random_state(rng, 2);
        const auto full = tensor_power(q, n);
        const CVector c = dicke_coordinates(q, n);
        for (int k = 0; k <= n; ++k) CHECK(std::abs(basis[k].inner(full) - c[k]) < 1e-12);
        CHECK(c.norm() == Approx(1.0));
    }
}

TEST_CASE("Helstrom error limits and mixed-state consistency") {
    CHECK(helstrom_error_pure(0.0) == Approx(0.0).margin(1e-15));
    CHECK(helstrom_error_pure(1.0) == Approx(0.5));
    CHECK(helstrom_error_pure(1 / std::sqrt(2.0)) == Approx(0.14644660940672624));
    const Operator a = Operator::projector(kets::zero()), b = Operator::projector(kets::one());
    CHECK(helstrom_error(a, b) == Approx(0.0).margin(1e-15));
    CHECK(helstrom_error(a, a) == Approx(0.5));
    CHECK(helstrom_error(a, b, 0.9) == Approx(0.0).margin(1e-15));
    CHECK(helstrom_error(a, a, 0.9) == Approx(0.1));
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 50; ++trial) {
        const Operator r0 = random_density(rng, 3), r1 = random_density(rng, 3);
        const double p = helstrom_error(r0, r1);
        CHECK(p >= 0.0);
        CHECK(p <= 0.5);
        CHECK(p == Approx(helstrom_error(r1, r0)).margin(1e-12));
    }
}

TEST_CASE("binary information") {
    CHECK(binary_information(0.0) == 1.0);
    CHECK(binary_information(1.0) == 1.0);
    CHECK(binary_information(0.5) == Approx(0.0).margin(1e-15));
    CHECK(binary_information(0.11) == Approx(1 - (-0.11 * std::log2(0.11) - 0.89 * std::log2(0.89))));
    CHECK_THROWS_AS(binary_information(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(binary_information(1.1), std::invalid_argument);
    // symmetric about 1/2
    for (int k = 0; k <= 50; ++k) CHECK(binary_information(k / 100.0) == Approx(binary_information(1 - k / 100.0)));
}

TEST_CASE("generalized measurements") {
    const auto m = GeneralizedMeasurement({{"0", Operator::projector(kets::zero())}, {"1", Operator::projector(kets::one())}});
    CHECK(m.completeness_error() < 1e-15);
    const auto res = apply_measurement(m, Operator::projector(kets::plus_x()));
    REQUIRE(res.size() == 2);
    CHECK(res[0].probability == Approx(0.5));
    CHECK(res[0].post_state->is_density());
    CHECK_THROWS_AS(GeneralizedMeasurement({{"0", Operator::projector(kets::zero())}}), std::invalid_argument);
    CHECK_THROWS(m.op("nope"));
}

TEST_CASE("two-mode number states") {
    for (int n : {0, 1, 5, 40, 300}) {
        const auto s = two_mode_number_state(n, 0.3, 0.01);
        CHECK(s.norm() == Approx(1.0).epsilon(1e-12));
        CHECK(s.dim() == n + 1);
    }
    // the relative phase only enters through the first mode
    const auto a = two_mode_number_state(7, 0.0, 0.2), b = two_mode_number_state(7, kPi, 0.2);
    CHECK(std::abs(a.inner(b)) == Approx(std::pow(0.8 / 1.2, 7)));
}
