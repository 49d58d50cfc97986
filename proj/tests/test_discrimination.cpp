#include "pnsqkd/discrimination.hpp"

#include <catch_amalgamated.hpp>

#include <random>

using namespace pnsqkd;
using Catch::Approx;

namespace {

double prob(const GeneralizedMeasurement& m, const std::string& label, const StateVector& s) {
    return m.effect(label).expectation(s);
}

}  // namespace

TEST_CASE("state sets have the advertised overlaps") {
    for (double eta : {0.3, kPi / 4, kPi / 3, 1.2}) {
        const auto a = b92_states(eta);
        CHECK(std::abs(a.states[0].inner(a.states[1])) == Approx(std::cos(eta)));
        const auto b = fourtwo_set_b(eta);
        CHECK(std::abs(b.states[0].inner(b.states[1])) == Approx(std::cos(eta)));
        const auto r = resistant_set_b(eta);
        CHECK(std::abs(r.states[0].inner(r.states[1])) == Approx(std::cos(eta)));
        for (const auto& s : r.states) CHECK(s.is_normalized());
    }
    const auto e = equatorial_states(3);
    REQUIRE(e.states.size() == 6);
    CHECK(std::abs(e.states[0].inner(e.states[3])) < 1e-15);
    CHECK(std::abs(e.states[0].inner(e.states[1])) == Approx(std::cos(kPi / 6)));
}

TEST_CASE("B92 POVM is unambiguous with the optimal conclusive rate") {
    for (int k = 1; k <= 40; ++k) {
        const double eta = (kPi / 2) * k / 40.0;
        const auto m = b92_povm(eta);
        const auto s = b92_states(eta).states;
        CHECK(m.completeness_error() < 1e-12);
        CHECK(prob(m, "1", s[0]) < 1e-14);
        CHECK(prob(m, "0", s[1]) < 1e-14);
        // Ivanovic-Dieks-Peres limit 1 - |<a|b>|
        CHECK(prob(m, "0", s[0]) == Approx(1 - std::cos(eta)).margin(1e-12));
        CHECK(prob(m, "1", s[1]) == Approx(1 - std::cos(eta)).margin(1e-12));
        for (const auto& o : m.outcomes()) CHECK(min_eigenvalue(m.effect(o.label)) > -1e-12);
    }
}

TEST_CASE("filter succeeds with 1 - cos eta and orthogonalizes set a") {
    for (int k = 1; k <= 40; ++k) {
        const double eta = (kPi / 2) * k / 40.0;
        const auto f = b92_filter(eta);
        const auto s = b92_states(eta).states;
        CHECK(f.completeness_error() < 1e-12);
        const StateVector x = f.op("ok").apply(s[0]), y = f.op("ok").apply(s[1]);
        CHECK(x.norm() * x.norm() == Approx(1 - std::cos(eta)).margin(1e-12));
        CHECK(std::abs(x.inner(y)) < 1e-12);
    }
}

TEST_CASE("filtered overlap: closed form matches the operator computation") {
    for (int k = 1; k <= 200; ++k) {
        const double eta = (kPi / 2) * k / 201.0;
        const auto f = filtered_overlap_bound(eta);
        const auto g = measured_filtered_overlap(eta);
        CHECK(f.overlap == Approx(g.overlap).margin(1e-12));
        CHECK(f.p_b == Approx(g.p_b).margin(1e-12));
        CHECK(f.p_a == Approx(1 - std::cos(eta)));
        CHECK(f.overlap >= std::cos(eta));
        CHECK(f.overlap <= 1.0);
    }
    // orthogonal input stays orthogonal
    CHECK(filtered_overlap_bound(kPi / 2).overlap == Approx(0.0).margin(1e-15));
}

TEST_CASE("linear independence of copies") {
    // N distinct qubit states with N-1 copies are independent
    const auto four = equatorial_states(2).states;
    const auto c = linear_independence_check(four);
    CHECK(c.independent);
    CHECK(c.determinant > 0.0);
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<StateVector> s;
        const int n = 2 + trial % 5;
        for (int i = 0; i < n; ++i) s.push_back(StateVector{cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}.normalized());
        CHECK(linear_independence_check(s).independent);
    }
    CHECK_THROWS_AS(linear_independence_check({kets::zero(), cplx(0, 1) * kets::zero()}), std::invalid_argument);
}

TEST_CASE("USD conclusive probability follows n_b / 4^(n_b-1)") {
    for (int nb = 1; nb <= 8; ++nb) CHECK(usd_optimal_pok(nb) == Approx(nb / std::pow(4.0, nb - 1)).margin(1e-12));
    CHECK_THROWS(usd_optimal_pok(0));
    CHECK_THROWS(usd_optimal_pok(9));
}

TEST_CASE("four-state USD measurement on three copies") {
    const auto states = equatorial_states(2).states;
    const auto u = usd_multicopy_povm(states, 3);
    CHECK(u.p_ok == Approx(0.5));
    CHECK(u.measurement.completeness_error() < 1e-12);
    for (double w : u.weights) CHECK(w == Approx(2.0 / 3.0));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double p = u.weights[j] * std::norm(u.perp[j].dot(u.copies[i]));
            if (i == j)
                CHECK(p == Approx(0.5));
            else
                CHECK(p < 1e-14);
        }
    }
    for (const auto& o : u.measurement.outcomes()) CHECK(min_eigenvalue(u.measurement.effect(o.label)) > -1e-12);
}

TEST_CASE("too few copies leave the states dependent") {
    CHECK_THROWS(usd_multicopy_povm(equatorial_states(2).states, 2));
}

TEST_CASE("projective measurement") {
    const auto m = projective_measurement({kets::plus_x(), kets::minus_x()}, {"+", "-"});
    CHECK(m.completeness_error() < 1e-14);
    CHECK(prob(m, "+", kets::plus_y()) == Approx(0.5));
}
