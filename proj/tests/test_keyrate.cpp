#include "pnsqkd/keyrate.hpp"

#include "pnsqkd/attacks.hpp"

#include <catch_amalgamated.hpp>

using namespace pnsqkd;
using Catch::Approx;

TEST_CASE("security condition uses the weaker of Eve's two informations") {
    CHECK(secure(0.7, 0.8, 0.6));
    CHECK_FALSE(secure(0.5, 0.6, 0.55));
    CHECK(secure(0.71, 0.47));
    CHECK_FALSE(secure(0.3, 0.3));
    CHECK_THROWS(secure(1.2, 0.1));
    CHECK_THROWS(secure(0.5, -0.1, 0.2));
}

TEST_CASE("protocol configuration") {
    CHECK(ProtocolConfig{}.sifting_factor() == Approx(0.25));
    const auto c = ProtocolConfig::with_auto_mu(3);
    CHECK(c.mu == Approx(nb_mu(3)));
    CHECK(c.sifting_factor() == Approx(0.25 / 3));
    CHECK_THROWS(ProtocolConfig{1, 0.1}.validate());
    CHECK_THROWS(ProtocolConfig{2, 0.0}.validate());
}

TEST_CASE("key rate") {
    CHECK(key_rate(0.2, 10.0, 0.0) == Approx(0.25 * 0.2 * 0.1));
    CHECK(key_rate(0.2, 10.0, 1.0) == 0.0);
    CHECK_THROWS(key_rate(0.2, 10.0, 1.5));
    // past the IRUD point the combined attack leaves nothing
    CHECK(combined_key_rate(0.2, 30.0) == Approx(0.0).margin(1e-15));
}

TEST_CASE("optimal mu decreases with distance and is a local maximum") {
    double prev = 10.0;
    for (double d : {12.0, 15.0, 20.0, 25.0, 30.0}) {
        const auto o = optimal_mu(d);
        CHECK(o.mu < prev);
        CHECK(o.mu >= kMuMin);
        CHECK_FALSE(o.at_cap);
        for (double f : {0.5, 0.9, 1.1, 2.0}) CHECK(combined_key_rate(o.mu * f, d) <= o.rate * (1 + 1e-9));
        prev = o.mu;
    }
    const auto o = optimal_mu(20.0);
    CHECK(o.mu > 0.1);
    CHECK(o.mu < 0.35);
    CHECK(optimal_mu(0.0).at_cap);
    CHECK_THROWS(optimal_mu(-1.0));
}

TEST_CASE("n_b summary") {
    const SourceChannelModel m;
    const auto s = nb_security_summary(2, m);
    CHECK(s.mu == Approx(0.2));
    CHECK(s.p_ok == Approx(0.5));
    CHECK(s.critical_db == Approx(std::min(s.delta1_db, s.delta2_db)));
    CHECK(s.critical_km == Approx(s.critical_db / 0.25));
    // critical distance grows with the number of bases
    double prev = 0.0;
    for (int nb = 2; nb <= 8; ++nb) {
        const double km = nb_security_summary(nb, m).critical_km;
        CHECK(km > prev);
        prev = km;
    }
}

TEST_CASE("Geneva-Lausanne case study") {
    const auto c = geneva_lausanne_report();
    CHECK(c.delta_db == Approx(16.75));
    CHECK(c.i_ab == Approx(0.7136).margin(1e-3));
    CHECK(c.i_eve_pns < 0.5);
    CHECK(c.delta_db >= c.min_delta_db);
    CHECK(c.i_eve_cloning_opt < c.i_eve_cloning_all);
    CHECK(c.secure_optical_only);
    CHECK(c.secure_full_error);
}
