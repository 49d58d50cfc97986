#include "pnsqkd/attacks.hpp"

#include "pnsqkd/discrimination.hpp"
#include "pnsqkd/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnsqkd {

namespace {

constexpr double kMaxDelta = 300.0;

double pulse_weighted_info(double q, double s) {
    const double num = (1.0 - q) * s;
    const double den = q + num;
    return den > 0.0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
}

// Eve attacks a fraction 1-q of the pulses; attacked pulses deliver `attacked_rate`
// and carry `attacked_weight` in the pulse-weighted information formula.
AttackPoint rate_matched(double mu, double delta_db, double alpha, double attacked_rate,
                         double attacked_weight) {
    AttackPoint p;
    p.delta_db = delta_db;
    p.distance_km = alpha > 0.0 ? delta_db / alpha : 0.0;
    const double expected = mu * transmittance(delta_db);
    double achieved;
    if (expected >= mu) {
        p.q_passed = 1.0;
        achieved = mu;
        p.i_eve = 0.0;
    } else if (expected > attacked_rate) {
        p.q_passed = (expected - attacked_rate) / (mu - attacked_rate);
        achieved = p.q_passed * mu + (1.0 - p.q_passed) * attacked_rate;
        p.i_eve = pulse_weighted_info(p.q_passed, attacked_weight);
    } else {
        // every pulse attacked, extra blocking brings the rate down
        p.q_passed = 0.0;
        achieved = attacked_rate * (expected / attacked_rate);
        p.i_eve = 1.0;
    }
    p.rate_residual = achieved - expected;
    return p;
}

void check_delta(double delta_db) {
    if (!(delta_db >= 0.0)) throw std::invalid_argument("attenuation must be non-negative");
}

}  // namespace

// --- BB84 ---

AttackPoint bb84_pns(double mu, double delta_db, double alpha, PnsVariant variant) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    check_delta(delta_db);
    const double r = multiphoton_forward_rate(mu);
    const double s = multiphoton_probability(mu);
    AttackPoint p = rate_matched(mu, delta_db, alpha, r, s);
    if (variant == PnsVariant::SplitAllMultiphoton) {
        const double expected = mu * transmittance(delta_db);
        const double p1 = mu * std::exp(-mu);
        if (expected > r && expected <= r + p1) {
            const double q1 = (expected - r) / p1;
            p.q_passed = q1;
            p.i_eve = s / (s + q1 * p1);
            p.rate_residual = (r + q1 * p1) - expected;
        }
    }
    return p;
}

double bb84_critical_attenuation(double mu) {
    const double r = multiphoton_forward_rate(mu);
    return bisect_boundary([&](double d) { return mu * transmittance(d) > r; }, 0.0, kMaxDelta);
}

AttackReport bb84_pns_curve(double mu, std::span<const double> delta_grid, double alpha,
                            PnsVariant variant) {
    AttackReport rep;
    for (double d : delta_grid) rep.points.push_back(bb84_pns(mu, d, alpha, variant));
    rep.critical_delta_db = bb84_critical_attenuation(mu);
    rep.critical_distance_km = rep.critical_delta_db / alpha;
    return rep;
}

// --- B92 ---

AttackPoint b92_weakpulse(double eta, double delta_db, double alpha) {
    if (!(eta > 0.0 && eta <= kPi / 2 + 1e-15)) throw std::invalid_argument("eta out of range");
    check_delta(delta_db);
    // rates in units of mu: the conclusive USD fraction plays the role of R
    const double pc = 1.0 - std::cos(eta);
    return rate_matched(1.0, delta_db, alpha, pc, pc);
}

double b92_weakpulse_critical_attenuation(double eta) {
    if (!(eta > 0.0 && eta <= kPi / 2 + 1e-15)) throw std::invalid_argument("eta out of range");
    return -10.0 * std::log10(1.0 - std::cos(eta));
}

AttackReport b92_weakpulse_analysis(double eta, std::span<const double> delta_grid, double alpha) {
    AttackReport rep;
    for (double d : delta_grid) rep.points.push_back(b92_weakpulse(eta, d, alpha));
    rep.critical_delta_db = b92_weakpulse_critical_attenuation(eta);
    rep.critical_distance_km = rep.critical_delta_db / alpha;
    return rep;
}

// --- 4+2 ---

double fourtwo_mu(double eta) {
    if (!(eta > 0.0 && eta <= kPi / 2 + 1e-15)) throw std::invalid_argument("eta out of range");
    return 0.1 / (1.0 - std::cos(eta));
}

AttackPoint fourtwo_pns(double eta, double delta_db, double alpha) {
    check_delta(delta_db);
    const double mu = fourtwo_mu(eta);
    const double pc = 1.0 - std::cos(eta);
    return rate_matched(mu, delta_db, alpha, pc * multiphoton_forward_rate(mu),
                        pc * multiphoton_probability(mu));
}

double fourtwo_critical_attenuation(double eta) {
    const double mu = fourtwo_mu(eta);
    const double eve = (1.0 - std::cos(eta)) * multiphoton_forward_rate(mu);
    return bisect_boundary([&](double d) { return mu * transmittance(d) > eve; }, 0.0, kMaxDelta);
}

// --- strong reference pulse ---

double reference_pulse_overlap(double t, double n) {
    if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("intensity ratio must lie in (0,1)");
    return std::exp(n * (std::log1p(-t) - std::log1p(t)));
}

StrongPulsePoint strongpulse_b92(double delta_db, double mu, double bob_floor) {
    if (!(mu > 0.0 && mu < 1.0)) throw std::invalid_argument("strong-pulse model needs 0 < mu < 1");
    check_delta(delta_db);
    StrongPulsePoint p;
    p.delta_db = delta_db;
    p.mu = mu;
    p.mu_prime = bob_floor * std::pow(10.0, delta_db / 10.0);
    p.t = mu / p.mu_prime;
    p.overlap = reference_pulse_overlap(p.t, std::max(0.0, p.mu_prime - bob_floor));
    p.p_e = helstrom_error_pure(p.overlap);
    p.i_eve = binary_information(p.p_e);
    return p;
}

double strongpulse_asymptotic_information(double mu) {
    return binary_information(helstrom_error_pure(std::exp(-2.0 * mu)));
}

// --- four-state protocol ---

double fourstate_irud_critical(double mu, double p_ok) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!(p_ok > 0.0 && p_ok <= 1.0)) throw std::invalid_argument("p_ok must lie in (0,1]");
    const double eve = p_ok * three_photon_forward_rate(mu);
    return bisect_boundary([&](double d) { return mu * transmittance(d) > eve; }, 0.0, 1000.0);
}

StoringInfo storing_attack_info(const StateVector& a, const StateVector& b) {
    const double pe = helstrom_error(Operator::projector(a.normalized()),
                                     Operator::projector(b.normalized()), 0.5);
    return {pe, binary_information(pe)};
}

StoringInfo storing_info_copies(double overlap, int copies) {
    if (copies < 0) throw std::invalid_argument("negative copy number");
    const double pe = helstrom_error_pure(std::pow(std::abs(overlap), copies));
    return {pe, binary_information(pe)};
}

namespace {

struct Allocation {
    double info;
    double q;
    double achieved;
};

struct CombinedRates {
    double mu, r2, r3, i_s;
    CombinedRates(double mu_, double p_ok)
        : mu(mu_),
          r2(multiphoton_forward_rate(mu_)),
          r3(p_ok * three_photon_forward_rate(mu_)),
          i_s(storing_attack_info(kets::plus_x(), kets::plus_y()).i_eve) {}

    // f: share of attacked pulses sent to IRUD, the rest to storing
    Allocation eval(double f, double expected) const {
        const double rf = f * r3 + (1.0 - f) * r2;
        const double nf = f * r3 + (1.0 - f) * r2 * i_s;
        if (expected >= mu) return {0.0, 1.0, mu};
        if (expected >= rf) {
            const double q = (expected - rf) / (mu - rf);
            return {std::clamp((1.0 - q) * nf / expected, 0.0, 1.0), q, q * mu + (1.0 - q) * rf};
        }
        return {std::clamp(nf / rf, 0.0, 1.0), 0.0, expected};
    }
};

}  // namespace

AttackPoint fourstate_combined_point(double mu, double delta_db, double alpha, double p_ok) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    check_delta(delta_db);
    const CombinedRates c(mu, p_ok);
    const double expected = mu * transmittance(delta_db);
    auto info = [&](double f) { return c.eval(f, expected).info; };

    // piecewise linear-fractional in f: scan, refine, and add the breakpoints
    double best_f = 0.0, best = info(0.0);
    auto consider = [&](double f) {
        f = std::clamp(f, 0.0, 1.0);
        const double v = info(f);
        if (v > best) {
            best = v;
            best_f = f;
        }
    };
    for (int k = 0; k <= 100; ++k) consider(k / 100.0);
    const double lo = std::max(0.0, best_f - 0.01), hi = std::min(1.0, best_f + 0.01);
    consider(golden_section_max(info, lo, hi, 1e-12).x);
    consider(1.0);
    if (c.r2 != c.r3) consider((c.r2 - expected) / (c.r2 - c.r3));

    const Allocation a = c.eval(best_f, expected);
    AttackPoint p;
    p.delta_db = delta_db;
    p.distance_km = alpha > 0.0 ? delta_db / alpha : 0.0;
    p.i_eve = a.info;
    p.q_passed = a.q;
    p.rate_residual = a.achieved - expected;
    p.irud_fraction = best_f;
    return p;
}

AttackReport fourstate_combined_curve(double mu, std::span<const double> delta_grid, double alpha,
                                      double p_ok) {
    AttackReport rep;
    for (double d : delta_grid) rep.points.push_back(fourstate_combined_point(mu, d, alpha, p_ok));
    rep.critical_delta_db = fourstate_irud_critical(mu, p_ok);
    rep.critical_distance_km = rep.critical_delta_db / alpha;
    return rep;
}

double fourstate_storing_only(double mu, double delta_db) {
    return CombinedRates(mu, 0.5).eval(0.0, mu * transmittance(delta_db)).info;
}

double fourstate_irud_only(double mu, double delta_db, double p_ok) {
    return CombinedRates(mu, p_ok).eval(1.0, mu * transmittance(delta_db)).info;
}

// --- n_b bases ---

double nb_mu(int n_b) {
    if (n_b < 2 || n_b > 8) throw std::invalid_argument("n_b must be in 2..8");
    const double s = std::sin(kPi / (2.0 * n_b));
    return n_b / (20.0 * s * s);
}

double nb_expected_clicks(int n_b, const SourceChannelModel& m, double delta_db) {
    return -std::expm1(-nb_mu(n_b) * transmittance(delta_db) * m.eta_det);
}

double nb_critical_usd(int n_b, const SourceChannelModel& m, RateForm form) {
    const double mu = nb_mu(n_b);
    const int ne = 2 * n_b - 1;
    const double pok = usd_optimal_pok(n_b);
    const auto dist = poisson_distribution(mu);
    if (form == RateForm::Linear) {
        double eve = 0.0;
        for (int k = ne; k < static_cast<int>(dist.size()); ++k) eve += dist[k] * (k - ne + 1);
        eve *= pok;
        return bisect_boundary([&](double d) { return mu * transmittance(d) > eve; }, 0.0, kMaxDelta);
    }
    const double eve = pok * detection_probability(m.eta_det, dist, ne - 1);
    return bisect_boundary([&](double d) { return nb_expected_clicks(n_b, m, d) > eve; }, 0.0,
                           kMaxDelta);
}

double nb_storing_rate(int n_b, int n_s, const SourceChannelModel& m) {
    if (n_s < 1) throw std::invalid_argument("n_s must be at least 1");
    return detection_probability(m.eta_det, poisson_distribution(nb_mu(n_b)), n_s);
}

double nb_storing_critical(int n_b, int n_s, const SourceChannelModel& m) {
    const double eve = nb_storing_rate(n_b, n_s, m);
    return bisect_boundary([&](double d) { return nb_expected_clicks(n_b, m, d) > eve; }, 0.0,
                           kMaxDelta);
}

double nb_stored_information(int n_b, int n_s) {
    return storing_info_copies(std::cos(kPi / (2.0 * n_b)), n_s).i_eve;
}

StoringEnvelope::StoringEnvelope(int n_b, const SourceChannelModel& m) : n_b_(n_b), model_(m) {
    const auto dist = poisson_distribution(nb_mu(n_b));
    std::vector<Vertex> pts{{0.0, 0.0}, {nb_expected_clicks(n_b, m, 0.0), 0.0}};
    for (int ns = 1; ns < static_cast<int>(dist.size()); ++ns) {
        const double r = detection_probability(m.eta_det, dist, ns);
        if (r < 1e-300) break;
        pts.push_back({r, r * nb_stored_information(n_b, ns)});
    }
    std::sort(pts.begin(), pts.end(), [](const Vertex& a, const Vertex& b) { return a.rate < b.rate; });
    for (const auto& p : pts) {
        while (hull_.size() >= 2) {
            const Vertex& a = hull_[hull_.size() - 2];
            const Vertex& b = hull_.back();
            const double cross =
                (b.rate - a.rate) * (p.info_rate - a.info_rate) - (b.info_rate - a.info_rate) * (p.rate - a.rate);
            if (cross >= 0.0)
                hull_.pop_back();
            else
                break;
        }
        hull_.push_back(p);
    }
}

StoringEnvelope::Value StoringEnvelope::evaluate(double delta_db) const {
    const double r = nb_expected_clicks(n_b_, model_, delta_db);
    if (r <= 0.0) return {std::clamp(hull_[1].info_rate / hull_[1].rate, 0.0, 1.0), 0.0};
    for (std::size_t k = 1; k < hull_.size(); ++k) {
        const Vertex& a = hull_[k - 1];
        const Vertex& b = hull_[k];
        if (r <= b.rate) {
            const double lam = (r - a.rate) / (b.rate - a.rate);
            const double y = a.info_rate + lam * (b.info_rate - a.info_rate);
            const bool to_idle = k + 1 == hull_.size();
            return {std::clamp(y / r, 0.0, 1.0), to_idle ? lam * b.rate / r : 0.0};
        }
    }
    return {0.0, 1.0};
}

AttackReport nb_storing_curve(int n_b, const SourceChannelModel& m, std::span<const double> delta_grid) {
    const StoringEnvelope env(n_b, m);
    SourceChannelModel mm = m;
    mm.mu = nb_mu(n_b);
    AttackReport rep;
    for (double d : delta_grid) {
        check_delta(d);
        AttackPoint p;
        p.delta_db = d;
        p.distance_km = m.alpha > 0.0 ? d / m.alpha : 0.0;
        const auto v = env.evaluate(d);
        p.i_eve = v.info;
        p.i_ab = information_ab(mm, d);
        p.q_passed = v.passed;
        rep.points.push_back(p);
    }
    rep.critical_delta_db = nb_storing_crossing(n_b, m);
    rep.critical_distance_km = m.alpha > 0.0 ? rep.critical_delta_db / m.alpha : 0.0;
    return rep;
}

double nb_storing_crossing(int n_b, const SourceChannelModel& m) {
    const StoringEnvelope env(n_b, m);
    SourceChannelModel mm = m;
    mm.mu = nb_mu(n_b);
    return bisect_boundary([&](double d) { return information_ab(mm, d) > env.information(d); }, 0.0,
                           kMaxDelta);
}

}  // namespace pnsqkd
