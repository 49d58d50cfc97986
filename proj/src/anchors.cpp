#include "pnsqkd/anchors.hpp"

#include "pnsqkd/attacks.hpp"
#include "pnsqkd/cloning.hpp"
#include "pnsqkd/discrimination.hpp"
#include "pnsqkd/keyrate.hpp"
#include "pnsqkd/photonics.hpp"
#include "pnsqkd/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace pnsqkd {

Check near(std::string name, double measured, double expected, double tolerance, std::string note) {
    const bool ok = std::abs(measured - expected) <= tolerance;
    return {std::move(name), measured, expected, tolerance, ok, std::move(note)};
}

Check within(std::string name, double measured, double lo, double hi, std::string note) {
    const bool ok = measured >= lo && measured <= hi;
    return {std::move(name), measured, 0.5 * (lo + hi), 0.5 * (hi - lo), ok, std::move(note)};
}

Check holds(std::string name, bool condition, double measured, std::string note) {
    return {std::move(name), measured, 0.0, 0.0, condition, std::move(note)};
}

bool Criterion::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

StateVector random_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return StateVector{cplx(n(rng), n(rng)), cplx(n(rng), n(rng))}.normalized();
}

double fidelity_at(const CloningMachine& m, const StateVector& in, int clone_index) {
    return clone_reduced_states(m, in)[clone_index].fidelity;
}

double max_positivity_violation(const GeneralizedMeasurement& m) {
    double worst = 0.0;
    for (const auto& o : m.outcomes()) worst = std::min(worst, min_eigenvalue(m.effect(o.label)));
    return -worst;
}

// --- property suites shared by criterion 12 and validate ---

Check povm_suite() {
    double completeness = 0.0, positivity = 0.0, ambiguity = 0.0;
    for (int k = 1; k <= 50; ++k) {
        const double eta = (kPi / 2) * k / 50.0;
        for (const auto& m : {b92_povm(eta), b92_filter(eta)}) {
            completeness = std::max(completeness, m.completeness_error());
            positivity = std::max(positivity, max_positivity_violation(m));
        }
        const auto pov = b92_povm(eta);
        const auto st = b92_states(eta).states;
        ambiguity = std::max({ambiguity, pov.effect("1").expectation(st[0]), pov.effect("0").expectation(st[1])});
    }
    for (int nb = 2; nb <= 8; ++nb) {
        const auto u = usd_multicopy_povm(equatorial_states(nb).states, 2 * nb - 1);
        completeness = std::max(completeness, u.measurement.completeness_error());
        positivity = std::max(positivity, max_positivity_violation(u.measurement));
        for (int i = 0; i < 2 * nb; ++i)
            for (int j = 0; j < 2 * nb; ++j)
                if (i != j) {
                    const CVector& c = u.copies[j];
                    ambiguity = std::max(ambiguity, std::norm(u.perp[i].dot(c)) * u.weights[i]);
                }
    }
    const bool ok = completeness < 1e-10 && positivity < 1e-10 && ambiguity < 1e-12;
    return holds("POVM completeness, positivity and unambiguity", ok, std::max({completeness, positivity, ambiguity}),
                 "completeness " + fmt(completeness) + ", positivity " + fmt(positivity) + ", cross " + fmt(ambiguity));
}

Check isometry_suite() {
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double g = (kPi / 2) * k / 49.0;
        const double x = (1.0 / std::sqrt(8.0)) * k / 49.0;
        for (const auto& m : {make_ng12(g), make_cerf12((1 + std::cos(g)) / 2), make_ng23(g), make_ngs23(g), make_cerf23(x)})
            worst = std::max(worst, m.isometry_error());
    }
    return holds("isometry V^dagger V = 1 for all machines", worst < 1e-12, worst);
}

Check covariance_suite() {
    double worst_var = 0.0;
    for (double g : {0.2, kPi / 4, 1.1}) {
        for (const auto& m : {make_ng12(g), make_cerf12((1 + std::cos(g)) / 2), make_ng23(g), make_ngs23(g)}) {
            for (int c = 0; c < static_cast<int>(m.clone_positions().size()); ++c) {
                std::vector<double> f;
                for (int k = 0; k < 32; ++k) f.push_back(fidelity_at(m, kets::equatorial(2 * kPi * k / 32), c));
                double mean = 0.0, var = 0.0;
                for (double v : f) mean += v / f.size();
                for (double v : f) var += (v - mean) * (v - mean) / f.size();
                worst_var = std::max(worst_var, var);
            }
        }
    }
    std::mt19937_64 rng(7);
    double worst_dev = 0.0;
    for (double x : {0.05, 1.0 / std::sqrt(24.0), 0.3}) {
        const auto m = make_cerf23(x);
        const auto ref = clone_reduced_states(m, kets::zero());
        for (int k = 0; k < 32; ++k) {
            const auto r = clone_reduced_states(m, random_qubit(rng));
            for (std::size_t c = 0; c < r.size(); ++c)
                worst_dev = std::max(worst_dev, std::abs(r[c].fidelity - ref[c].fidelity));
        }
    }
    return holds("phase covariance (equator) and universality (Cerf 2->3)", worst_var < 1e-20 && worst_dev < 1e-10,
                 std::max(worst_var, worst_dev), "variance " + fmt(worst_var) + ", universal deviation " + fmt(worst_dev));
}

Check filtered_overlap_suite() {
    double worst = 0.0;
    bool inequality = true;
    for (int k = 1; k <= 1000; ++k) {
        const double eta = (kPi / 2) * k / 1001.0;
        const auto f = filtered_overlap_bound(eta);
        const auto g = measured_filtered_overlap(eta);
        inequality = inequality && f.overlap >= std::cos(eta) - 1e-15;
        worst = std::max({worst, std::abs(f.overlap - g.overlap), std::abs(f.p_b - g.p_b)});
    }
    return holds("filtered overlap never decreases (1000 eta values)", inequality && worst < 1e-10, worst,
                 "max formula-vs-operator gap " + fmt(worst));
}

Check independence_suite() {
    std::mt19937_64 rng(11);
    int failures = 0;
    for (int draw = 0; draw < 1000; ++draw) {
        std::vector<StateVector> s;
        for (int i = 0; i < 5; ++i) s.push_back(random_qubit(rng));
        if (!linear_independence_check(s).independent) ++failures;
    }
    return holds("N=5 random states with 4 copies are independent (1000 draws)", failures == 0, failures);
}

Check poisson_suite() {
    double worst = 0.0;
    for (double mu : {1e-3, 0.025, 0.1, 0.2, 1.0, 2.618, 10.51, 50.0}) {
        double s = 0.0;
        for (double p : poisson_distribution(mu)) s += p;
        worst = std::max(worst, std::abs(1.0 - s));
    }
    return holds("Poisson truncation leaves < 1e-12", worst < 1e-12, worst);
}

}  // namespace

std::vector<Criterion> acceptance_criteria() {
    std::vector<Criterion> out;
    const SourceChannelModel model;  // eta_det 0.1, p_d 1e-5, 1% optical

    {
        Criterion c{1, "BB84 PNS critical point", {}};
        const double d = bb84_critical_attenuation(0.1);
        c.checks.push_back(near("delta_c [dB]", d, 13.15, 0.01));
        c.checks.push_back(near("d_c [km]", d / 0.25, 52.6, 0.1));
        c.checks.push_back(near("closed form agreement", d, 10 * std::log10(0.1 / (0.1 - 1 + std::exp(-0.1))), 1e-6));
        out.push_back(c);
    }
    {
        Criterion c{2, "Four-state IRUD critical point", {}};
        const double pok = usd_optimal_pok(2);
        c.checks.push_back(near("p_ok from eigenproblem", pok, 0.5, 1e-9));
        c.checks.push_back(near("d_c [km] at mu=0.2", fourstate_irud_critical(0.2, pok) / 0.25, 100.0, 1.0));
        out.push_back(c);
    }
    {
        Criterion c{3, "USD conclusive probability n_b/4^(n_b-1)", {}};
        for (int nb = 2; nb <= 8; ++nb)
            c.checks.push_back(near("p_ok(n_b=" + std::to_string(nb) + ")", usd_optimal_pok(nb), nb / std::pow(4.0, nb - 1), 1e-9));
        out.push_back(c);
    }
    {
        Criterion c{4, "Storing attack", {}};
        const auto s = storing_attack_info(kets::plus_x(), kets::plus_y());
        c.checks.push_back(near("p_e", s.p_e, 0.14645, 1e-4));
        c.checks.push_back(near("I_Eve [bits]", s.i_eve, 0.399, 0.001));
        out.push_back(c);
    }
    {
        Criterion c{5, "Strong-pulse B92", {}};
        const double far = 100.0;  // dB; mu' = 1e11, overlap at its limit
        c.checks.push_back(near("asymptotic I_Eve, mu=0.025", strongpulse_b92(far, 0.025).i_eve, 0.0716, 0.001,
                                "exact limit uses overlap e^-0.05 = 0.951229"));
        c.checks.push_back(near("asymptotic I_Eve, mu=0.25", strongpulse_b92(far, 0.25).i_eve, 0.518, 0.01));
        for (double mu : {0.025, 0.25}) {
            const double mp = 1e4;
            const double ov = reference_pulse_overlap(mu / mp, mp);
            c.checks.push_back(near("overlap limit rel. error, mu=" + fmt(mu), std::abs(ov / std::exp(-2 * mu) - 1.0), 0.0, 1e-3));
        }
        out.push_back(c);
    }
    {
        Criterion c{6, "Cloning fidelity anchors", {}};
        c.checks.push_back(near("NG 1->2 symmetric point", fidelity_at(make_ng12(kPi / 4), kets::plus_x(), 0),
                                (1 + 1 / std::sqrt(2.0)) / 2, 1e-12));
        const double ng23 = (6 + 2 * std::sqrt(2.0) + std::sqrt(6.0)) / 12;
        const auto m23 = make_ng23(kPi / 4);
        c.checks.push_back(near("NG 2->3 F1 at gamma=pi/4", fidelity_at(m23, kets::plus_x(), 0), ng23, 1e-10));
        c.checks.push_back(near("NG 2->3 F3 at gamma=pi/4", fidelity_at(m23, kets::plus_x(), 2), ng23, 1e-10));
        const auto eq = make_cerf23(1 / std::sqrt(24.0));
        c.checks.push_back(near("Cerf 2->3 equal point F1", fidelity_at(eq, kets::plus_x(), 0), 11.0 / 12, 1e-10));
        c.checks.push_back(near("Cerf 2->3 equal point F3", fidelity_at(eq, kets::plus_x(), 2), 11.0 / 12, 1e-10));
        c.checks.push_back(near("Cerf 2->3 F3 at v=3x", fidelity_at(make_cerf23(1 / std::sqrt(17.0)), kets::plus_x(), 2), 1.0,
                                1e-10, "third clone reaches 1 at v=2x instead"));
        c.checks.push_back(near("Cerf 2->3 F3 at v=2x (supplementary)",
                                fidelity_at(make_cerf23(1 / std::sqrt(12.0)), kets::plus_x(), 2), 1.0, 1e-10));
        out.push_back(c);
    }
    {
        Criterion c{7, "Sifted 1->2 cloning attack", {}};
        const auto cerf = crossing12(Family12::Cerf);
        const auto ng = crossing12(Family12::NG);
        c.checks.push_back(near("Cerf crossing, sifted QBER", cerf.qber_sifted, 0.15, 0.01,
                                "disturbance of Bob's clone " + fmt(cerf.disturbance)));
        c.checks.push_back(holds("Cerf crossing lies above NG crossing (information)", cerf.i_eve > ng.i_eve, cerf.i_eve,
                                 "NG crossing at I=" + fmt(ng.i_eve) + ", QBER " + fmt(ng.qber_sifted)));
        const auto ng_same = sifted_point_at_qber(Family12::NG, cerf.qber_sifted);
        c.checks.push_back(holds("Cerf curve above NG at the Cerf crossing QBER", cerf.i_eve > ng_same.i_eve, ng_same.i_eve));
        std::vector<double> grid;
        for (int k = 0; k <= 100; ++k) grid.push_back((kPi / 2) * k / 100);
        const auto cs = sifted_cloning_attack(Family12::Cerf, grid);
        const auto ns = sifted_cloning_attack(Family12::NG, grid);
        double gap = 0.0;
        for (std::size_t k = 0; k < cs.size(); ++k) gap = std::min(gap, cs[k].i_eve - ns[k].i_eve);
        c.checks.push_back(holds("Cerf >= NG pointwise", gap >= -1e-12, gap));
        const auto top = std::max_element(cs.begin(), cs.end(), [](auto& a, auto& b) { return a.i_eve < b.i_eve; });
        const bool interior = top != cs.begin() && top != cs.end() - 1 && top->i_eve > cs.back().i_eve + 1e-3;
        c.checks.push_back(holds("interior maximum of I_Eve", interior, top->i_eve, "at sifted QBER " + fmt(top->qber_sifted)));
        c.checks.push_back(near("I_Eve at D=0.5 endpoint", cs.back().i_eve, binary_information(helstrom_error_pure(1 / std::sqrt(2.0))),
                                1e-6, "D=" + fmt(cs.back().disturbance)));
        out.push_back(c);
    }
    {
        Criterion c{8, "PNS + 2->3 cloning attack", {}};
        const auto ngs = crossing23(Family23::NGs);
        c.checks.push_back(near("symmetrized NG crossing, sifted QBER", ngs.qber_sifted, 0.085, 0.007,
                                "disturbance of Bob's clone " + fmt(ngs.disturbance)));
        for (double q : {0.01, 0.03, 0.05})
            c.checks.push_back(holds("symmetrized NG above Cerf at QBER " + fmt(q),
                                     sifted_point_at_qber(Family23::NGs, q).i_eve > sifted_point_at_qber(Family23::Cerf, q).i_eve,
                                     sifted_point_at_qber(Family23::NGs, q).i_eve));
        out.push_back(c);
    }
    {
        Criterion c{9, "Geneva-Lausanne case study", {}};
        const auto g = geneva_lausanne_report();
        c.checks.push_back(near("I_AB", g.i_ab, 0.7136, 0.001));
        c.checks.push_back(holds("PNS I_Eve at 16.75 dB < 0.5", g.i_eve_pns < 0.5, g.i_eve_pns));
        c.checks.push_back(holds("cloning I_Eve at optical QBER < 0.5", g.i_eve_cloning_opt < 0.5, g.i_eve_cloning_opt));
        c.checks.push_back(holds("secure, optical errors only", g.secure_optical_only));
        c.checks.push_back(holds("secure, full error", g.secure_full_error, g.i_eve_cloning_all));
        out.push_back(c);
    }
    {
        Criterion c{10, "n_b generalization", {}};
        double best = 0.0;
        int best_nb = 0;
        for (int nb = 2; nb <= 8; ++nb) {
            const auto s = nb_security_summary(nb, model);
            if (nb <= 5)
                c.checks.push_back(holds("delta2 < delta1 at n_b=" + std::to_string(nb), s.delta2_db < s.delta1_db, s.delta2_db,
                                         "delta1 " + fmt(s.delta1_db)));
            if (s.critical_km > best) {
                best = s.critical_km;
                best_nb = nb;
            }
        }
        c.checks.push_back(within("best critical distance [km]", best, 130.0, 170.0, "reached at n_b=" + std::to_string(best_nb)));
        out.push_back(c);
    }
    {
        Criterion c{11, "Optimal mean photon number", {}};
        const auto o = optimal_mu(20.0);
        c.checks.push_back(within("argmax mu at 20 dB", o.mu, 0.1, 0.35));
        c.checks.push_back(holds("half and double probes not better",
                                 combined_key_rate(o.mu / 2, 20.0) <= o.rate && combined_key_rate(2 * o.mu, 20.0) <= o.rate, o.rate));
        out.push_back(c);
    }
    {
        Criterion c{12, "Property suites", {}};
        c.checks = {povm_suite(), isometry_suite(), covariance_suite(), filtered_overlap_suite(), independence_suite(), poisson_suite()};
        out.push_back(c);
    }
    return out;
}

std::vector<Check> invariant_checks() {
    std::vector<Check> out;
    std::mt19937_64 rng(3);

    double worst = 0.0;
    for (int k = 0; k < 200; ++k) {
        const auto a = random_qubit(rng), b = random_qubit(rng);
        worst = std::max(worst, std::abs(helstrom_error(Operator::projector(a), Operator::projector(b)) -
                                         helstrom_error_pure(std::abs(a.inner(b)))));
    }
    out.push_back(near("Helstrom matches pure-state closed form", worst, 0.0, 1e-12));

    worst = 0.0;
    for (int n = 0; n <= 200; n += 10) {
        const double t = 0.01 + 0.002 * n;
        const double ov = std::abs(two_mode_number_state(n, kPi, t).inner(two_mode_number_state(n, 0.0, t)));
        worst = std::max(worst, std::abs(ov - std::pow((1 - t) / (1 + t), n)));
    }
    out.push_back(near("two-mode overlap closed form", worst, 0.0, 1e-12));

    const SourceChannelModel m{0.2, 0.25, 0.1, 1e-5, 0.01};
    bool mono = true;
    for (double d = 0; d < 80; d += 0.5) mono = mono && qber_total(m, d + 0.5) >= qber_total(m, d);
    out.push_back(holds("QBER non-decreasing in attenuation", mono));
    out.push_back(near("QBER at 16.75 dB", qber_total(m, 16.75), 0.0216, 1e-4));

    double resid = 0.0;
    bool nondecreasing = true;
    double prev = 0.0;
    for (double d = 0; d <= 30; d += 0.25) {
        const auto p = fourstate_combined_point(0.2, d);
        resid = std::max({resid, std::abs(p.rate_residual), std::abs(bb84_pns(0.1, d).rate_residual)});
        nondecreasing = nondecreasing && p.i_eve >= prev - 1e-12;
        prev = p.i_eve;
    }
    out.push_back(near("rate-constraint residual", resid, 0.0, 1e-10));
    out.push_back(holds("combined I_Eve non-decreasing", nondecreasing));

    const SourceChannelModel nbm;
    out.push_back(near("linear USD form equals IRUD solve (n_b=2)", nb_critical_usd(2, nbm, RateForm::Linear),
                       fourstate_irud_critical(0.2, usd_optimal_pok(2)), 0.05));
    out.push_back(near("4+2 reduces to BB84 for orthogonal sets", fourtwo_critical_attenuation(kPi / 2),
                       bb84_critical_attenuation(0.1), 1e-6));
    return out;
}

}  // namespace pnsqkd
