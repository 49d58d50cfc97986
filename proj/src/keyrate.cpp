#include "pnsqkd/keyrate.hpp"

#include "pnsqkd/attacks.hpp"
#include "pnsqkd/cloning.hpp"
#include "pnsqkd/discrimination.hpp"
#include "pnsqkd/numerics.hpp"
#include "pnsqkd/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnsqkd {

ProtocolConfig ProtocolConfig::with_auto_mu(int n_bases) { return {n_bases, nb_mu(n_bases)}; }

double ProtocolConfig::sifting_factor() const {
    const double s = std::sin(kPi / (2.0 * n_bases));
    return s * s / n_bases;
}

void ProtocolConfig::validate() const {
    if (n_bases < 2) throw std::invalid_argument("at least two bases are needed");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
}

bool secure(double i_ab, double i_ae, double i_be) {
    for (double v : {i_ab, i_ae, i_be})
        if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("information values must lie in [0,1]");
    return i_ab > std::min(i_ae, i_be);
}

bool secure(double i_ab, double i_eve) { return secure(i_ab, i_eve, i_eve); }

double key_rate(double mu, double delta_db, double i_eve, double sifting) {
    if (!(i_eve >= 0.0 && i_eve <= 1.0)) throw std::invalid_argument("i_eve must lie in [0,1]");
    return sifting * mu * transmittance(delta_db) * (1.0 - i_eve);
}

double combined_key_rate(double mu, double delta_db) {
    return key_rate(mu, delta_db, fourstate_combined_point(mu, delta_db).i_eve);
}

OptimalMu optimal_mu(double delta_db) {
    if (!(delta_db >= 0.0)) throw std::invalid_argument("attenuation must be non-negative");
    // log-spaced scan brackets the peak, golden section refines it
    const int n = 80;
    std::vector<double> grid(n + 1);
    for (int k = 0; k <= n; ++k) grid[k] = kMuMin * std::pow(kMuCap / kMuMin, static_cast<double>(k) / n);
    int best = 0;
    double best_rate = -1.0;
    for (int k = 0; k <= n; ++k) {
        const double r = combined_key_rate(grid[k], delta_db);
        if (r > best_rate) {
            best_rate = r;
            best = k;
        }
    }
    double mu = grid[best];
    if (best > 0 && best < n) {
        const auto m = golden_section_max([&](double x) { return combined_key_rate(x, delta_db); },
                                          grid[best - 1], grid[best + 1], 1e-9);
        if (m.value > best_rate) {
            mu = m.x;
            best_rate = m.value;
        }
    }
    return {mu, best_rate, fourstate_combined_point(mu, delta_db).i_eve, best == n};
}

NbSummary nb_security_summary(int n_b, const SourceChannelModel& m) {
    NbSummary s;
    s.n_b = n_b;
    s.mu = nb_mu(n_b);
    s.p_ok = usd_optimal_pok(n_b);
    s.delta1_db = nb_critical_usd(n_b, m);
    s.delta2_db = nb_storing_crossing(n_b, m);
    s.critical_db = std::min(s.delta1_db, s.delta2_db);
    s.dist1_km = s.delta1_db / m.alpha;
    s.dist2_km = s.delta2_db / m.alpha;
    s.critical_km = s.critical_db / m.alpha;
    return s;
}

CaseStudy geneva_lausanne_report() {
    CaseStudy c;
    c.mu = 0.2;
    c.distance_km = 67.0;
    c.delta_db = distance_to_attenuation(c.distance_km, 0.25);
    c.qber_dark = 0.04;
    c.qber_optical = 0.01;
    c.qber = c.qber_dark + c.qber_optical;
    c.i_ab = binary_information(c.qber);
    c.i_eve_pns = fourstate_combined_point(c.mu, c.delta_db).i_eve;
    c.min_delta_db = pns_cloning_min_attenuation(c.mu);
    auto cloning = [](double q) {
        return std::max(sifted_point_at_qber(Family23::NGs, q).i_eve, sifted_point_at_qber(Family23::Cerf, q).i_eve);
    };
    c.i_eve_cloning_opt = cloning(c.qber_optical);
    c.i_eve_cloning_all = cloning(c.qber);
    c.secure_optical_only = secure(c.i_ab, c.i_eve_pns) && secure(c.i_ab, c.i_eve_cloning_opt);
    c.secure_full_error = secure(c.i_ab, c.i_eve_pns) && secure(c.i_ab, c.i_eve_cloning_all);
    return c;
}

}  // namespace pnsqkd
