#include "pnsqkd/attacks.hpp"

#include <catch_amalgamated.hpp>

using namespace pnsqkd;
using Catch::Approx;

namespace {

std::vector<double> grid(double lo, double hi, double step) {
    std::vector<double> g;
    for (double x = lo; x <= hi + 1e-9; x += step) g.push_back(x);
    return g;
}

}  // namespace

TEST_CASE("BB84 critical attenuation closed form") {
    for (double mu : {0.05, 0.1, 0.2, 0.5}) {
        const double expect = 10 * std::log10(mu / (mu - 1 + std::exp(-mu)));
        CHECK(bb84_critical_attenuation(mu) == Approx(expect).margin(1e-5));
    }
    CHECK(bb84_critical_attenuation(0.1) / 0.25 == Approx(52.6).margin(0.1));
}

TEST_CASE("BB84 PNS curve: rate matched, monotone, full information past the critical point") {
    const auto g = grid(0, 30, 0.25);
    for (auto v : {PnsVariant::ForwardAllButOne, PnsVariant::SplitAllMultiphoton}) {
        const auto r = bb84_pns_curve(0.1, g, 0.25, v);
        double prev = -1.0;
        for (const auto& p : r.points) {
            CHECK(std::abs(p.rate_residual) < 1e-12);
            CHECK(p.i_eve >= prev - 1e-12);
            CHECK(p.q_passed >= 0.0);
            CHECK(p.q_passed <= 1.0);
            prev = p.i_eve;
            if (p.delta_db > r.critical_delta_db + 1e-6) CHECK(p.i_eve == Approx(1.0));
        }
        CHECK(r.critical_delta_db == Approx(13.1539).margin(1e-3));
    }
    CHECK(bb84_pns(0.1, 0.0).i_eve == Approx(0.0).margin(1e-12));
}

TEST_CASE("4+2 protocol critical distances stay close to BB84") {
    const double a = fourtwo_critical_attenuation(kPi / 6) / 0.25;
    const double b = fourtwo_critical_attenuation(kPi / 4) / 0.25;
    const double c = fourtwo_critical_attenuation(kPi / 3) / 0.25;
    for (double km : {a, b, c}) {
        CHECK(km > 52.0);
        CHECK(km < 57.0);
    }
    CHECK(std::max({a, b, c}) - std::min({a, b, c}) < 4.0);
    CHECK(c == Approx(53.2).margin(1.5));
    // the conclusive rate matches BB84 at mu = 0.1
    for (double eta : {0.3, 1.0}) CHECK(fourtwo_mu(eta) * (1 - std::cos(eta)) == Approx(0.1));
}

TEST_CASE("B92 weak pulses are broken at short distance") {
    for (double eta : {kPi / 6, kPi / 3}) {
        const double dc = b92_weakpulse_critical_attenuation(eta);
        CHECK(dc > 0.0);
        CHECK(dc < bb84_critical_attenuation(0.1));
        CHECK(b92_weakpulse(eta, dc + 0.5).i_eve == Approx(1.0));
        const auto rep = b92_weakpulse_analysis(eta, grid(0, 20, 0.5));
        double prev = -1.0;
        for (const auto& p : rep.points) {
            CHECK(p.i_eve >= prev - 1e-12);
            prev = p.i_eve;
        }
    }
}

TEST_CASE("strong reference pulse overlap limit") {
    for (double mu : {0.025, 0.1, 0.25}) {
        const double mp = 1e6;
        CHECK(reference_pulse_overlap(mu / mp, mp) == Approx(std::exp(-2 * mu)).epsilon(1e-6));
        const auto far = strongpulse_b92(200.0, mu);
        CHECK(far.i_eve == Approx(strongpulse_asymptotic_information(mu)).epsilon(1e-6));
    }
    // information rises with distance
    double prev = -1.0;
    for (double d = 0; d <= 60; d += 2) {
        const double i = strongpulse_b92(d, 0.25).i_eve;
        CHECK(i >= prev - 1e-12);
        prev = i;
    }
    CHECK(strongpulse_asymptotic_information(0.25) == Approx(0.5232).margin(1e-4));
    CHECK_THROWS(strongpulse_b92(10.0, 1.5));
}

TEST_CASE("four-state IRUD and storing attacks") {
    CHECK(fourstate_irud_critical(0.2) == Approx(25.2012).margin(1e-3));
    const auto s = storing_attack_info(kets::plus_x(), kets::plus_y());
    CHECK(s.p_e == Approx(0.5 - std::sqrt(2.0) / 4).margin(1e-12));
    CHECK(s.i_eve == Approx(0.399124).margin(1e-6));
    CHECK(storing_info_copies(1 / std::sqrt(2.0), 1).i_eve == Approx(s.i_eve));
    // more copies help Eve
    double prev = 0.0;
    for (int c = 1; c <= 6; ++c) {
        const double i = storing_info_copies(std::cos(kPi / 8), c).i_eve;
        CHECK(i > prev);
        prev = i;
    }
}

TEST_CASE("combined four-state attack dominates both pure strategies") {
    const auto g = grid(0, 40, 0.5);
    const auto rep = fourstate_combined_curve(0.2, g);
    double prev = -1.0;
    for (const auto& p : rep.points) {
        CHECK(p.i_eve >= fourstate_storing_only(0.2, p.delta_db) - 1e-9);
        CHECK(p.i_eve >= fourstate_irud_only(0.2, p.delta_db) - 1e-9);
        CHECK(p.i_eve >= prev - 1e-12);
        CHECK(p.i_eve <= 1.0 + 1e-12);
        CHECK(std::abs(p.rate_residual) < 1e-10);
        CHECK(p.irud_fraction >= 0.0);
        CHECK(p.irud_fraction <= 1.0);
        prev = p.i_eve;
    }
    CHECK(rep.points.back().i_eve == Approx(1.0));
}

TEST_CASE("n_b generalization") {
    const SourceChannelModel m;
    CHECK(nb_mu(2) == Approx(0.2));
    CHECK_THROWS(nb_mu(1));
    for (int nb = 2; nb <= 5; ++nb) {
        const double d1 = nb_critical_usd(nb, m), d2 = nb_storing_crossing(nb, m);
        CHECK(d2 < d1);
        // the envelope is non-decreasing in attenuation and bounded by 1
        const StoringEnvelope env(nb, m);
        double prev = -1.0;
        for (double d = 0; d <= 80; d += 1) {
            const auto v = env.evaluate(d);
            CHECK(v.info >= prev - 1e-12);
            CHECK(v.info <= 1.0 + 1e-12);
            CHECK(v.passed >= 0.0);
            CHECK(v.passed <= 1.0 + 1e-12);
            prev = v.info;
        }
        // envelope dominates every single-n_s strategy past its critical point
        for (int ns = 1; ns <= 3; ++ns) {
            const double dc = nb_storing_critical(nb, ns, m);
            CHECK(env.information(dc + 0.01) >= nb_stored_information(nb, ns) - 1e-9);
        }
    }
    CHECK(nb_critical_usd(2, m, RateForm::Linear) == Approx(fourstate_irud_critical(0.2)).margin(1e-4));
}

TEST_CASE("attacks reject bad input") {
    CHECK_THROWS(bb84_pns(0.1, -1.0));
    CHECK_THROWS(fourstate_irud_critical(-0.1));
    CHECK_THROWS(fourstate_irud_critical(0.2, 0.0));
}
