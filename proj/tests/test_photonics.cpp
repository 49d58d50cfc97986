#include "pnsqkd/photonics.hpp"

#include <catch_amalgamated.hpp>

#include <numeric>

using namespace pnsqkd;
using Catch::Approx;

TEST_CASE("Poisson distribution sums to one and has mean mu") {
    for (double mu : {1e-4, 0.025, 0.1, 0.2, 1.0, 2.618, 10.51, 50.0}) {
        const auto p = poisson_distribution(mu);
        double s = 0.0, m = 0.0;
        for (std::size_t n = 0; n < p.size(); ++n) {
            s += p[n];
            m += n * p[n];
        }
        CHECK(std::abs(1.0 - s) < 1e-12);
        CHECK(m == Approx(mu).epsilon(1e-11));
    }
    CHECK(poisson_pmf(0, 0.0) == 1.0);
    CHECK(poisson_pmf(3, 0.0) == 0.0);
    CHECK(poisson_pmf(2, 0.1) == Approx(std::exp(-0.1) * 0.01 / 2));
    CHECK_THROWS(poisson_pmf(-1, 0.1));
}

TEST_CASE("multiphoton tails against explicit sums") {
    for (double mu : {1e-5, 1e-3, 0.009, 0.011, 0.1, 0.2, 1.0, 5.0}) {
        const auto p = poisson_distribution(mu);
        double f2 = 0.0, p2 = 0.0, f3 = 0.0;
        for (std::size_t n = 2; n < p.size(); ++n) {
            f2 += p[n] * (n - 1.0);
            p2 += p[n];
            if (n >= 3) f3 += p[n] * (n - 2.0);
        }
        CHECK(multiphoton_forward_rate(mu) == Approx(f2).epsilon(1e-10));
        CHECK(multiphoton_probability(mu) == Approx(p2).epsilon(1e-10));
        CHECK(three_photon_forward_rate(mu) == Approx(f3).epsilon(1e-10));
    }
}

TEST_CASE("attenuation and distance conversions") {
    CHECK(transmittance(0.0) == 1.0);
    CHECK(transmittance(10.0) == Approx(0.1));
    CHECK(transmittance(30.0) == Approx(1e-3));
    CHECK(distance_to_attenuation(52.6, 0.25) == Approx(13.15));
    CHECK(attenuation_to_distance(25.0, 0.25) == Approx(100.0));
    CHECK_THROWS(attenuation_to_distance(1.0, 0.0));
    for (double km = 0; km < 300; km += 7.3) CHECK(attenuation_to_distance(distance_to_attenuation(km, 0.2), 0.2) == Approx(km));
}

TEST_CASE("detection probability") {
    const auto p = poisson_distribution(0.2);
    // with perfect detectors this is 1 - p0
    CHECK(detection_probability(1.0, p) == Approx(1 - std::exp(-0.2)));
    // with efficiency eta the click probability of a Poisson pulse is 1 - exp(-eta mu)
    CHECK(detection_probability(0.1, p) == Approx(1 - std::exp(-0.02)).epsilon(1e-12));
    // offset removes photons: one kept photon of a single-photon pulse leaves nothing
    CHECK(detection_probability(1.0, p, 1) == Approx(1 - std::exp(-0.2) * 1.2));
    CHECK_THROWS(detection_probability(0.1, p, -1));
}

TEST_CASE("QBER grows with attenuation and I_AB falls") {
    const SourceChannelModel m{0.2, 0.25, 0.1, 1e-5, 0.01};
    CHECK(qber_total(m, 0.0) == Approx(0.01 + 0.5 * 1e-5 / (1e-5 + 0.02)));
    double prev_q = 0.0, prev_i = 1.0;
    for (double d = 0.0; d <= 80.0; d += 0.5) {
        const double q = qber_total(m, d), i = information_ab(m, d);
        CHECK(q >= prev_q);
        CHECK(i <= prev_i);
        prev_q = q;
        prev_i = i;
    }
    // far out only dark counts remain
    CHECK(qber_total(m, 200.0) == Approx(0.51).epsilon(1e-9));
    CHECK(information_ab(m, 200.0) == Approx(0.0).margin(1e-15));
    CHECK(bob_raw_rate(m, 10.0) == Approx(0.02));
}

TEST_CASE("model validation") {
    SourceChannelModel m;
    CHECK_NOTHROW(m.validate());
    m.mu = 0.0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = {};
    m.eta_det = 1.5;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = {};
    m.qber_opt = 0.5;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
