#pragma once

#include "pnsqkd/photonics.hpp"
#include "pnsqkd/qmath.hpp"

#include <span>
#include <vector>

namespace pnsqkd {

struct AttackPoint {
    double delta_db = 0.0;
    double distance_km = 0.0;
    double i_eve = 0.0;
    double i_ab = 1.0;
    double q_passed = 1.0;       // fraction of pulses left untouched
    double rate_residual = 0.0;  // Eve's simulated rate minus the expected one
    double irud_fraction = 0.0;  // combined four-state attack only
};

struct AttackReport {
    std::vector<AttackPoint> points;
    double critical_delta_db = 0.0;
    double critical_distance_km = 0.0;
};

// --- BB84 ---

enum class PnsVariant {
    ForwardAllButOne,     // attack a fraction of all pulses, forward n-1 photons
    SplitAllMultiphoton,  // attack every multiphoton pulse, pass a fraction of the singles
};

AttackPoint bb84_pns(double mu, double delta_db, double alpha = 0.25,
                     PnsVariant variant = PnsVariant::ForwardAllButOne);
double bb84_critical_attenuation(double mu);
AttackReport bb84_pns_curve(double mu, std::span<const double> delta_grid, double alpha = 0.25,
                            PnsVariant variant = PnsVariant::ForwardAllButOne);

// --- B92 and 4+2 ---

AttackPoint b92_weakpulse(double eta, double delta_db, double alpha = 0.25);
double b92_weakpulse_critical_attenuation(double eta);
AttackReport b92_weakpulse_analysis(double eta, std::span<const double> delta_grid,
                                    double alpha = 0.25);

// mu chosen so that Bob's conclusive rate equals BB84 with mu = 0.1
double fourtwo_mu(double eta);
AttackPoint fourtwo_pns(double eta, double delta_db, double alpha = 0.25);
double fourtwo_critical_attenuation(double eta);

// --- strong reference pulse B92 ---

struct StrongPulsePoint {
    double delta_db;
    double mu;
    double mu_prime;   // reference pulse, mu' 10^(-delta/10) = bob_floor
    double t;          // mu / mu'
    double overlap;
    double p_e;
    double i_eve;
};

StrongPulsePoint strongpulse_b92(double delta_db, double mu, double bob_floor = 10.0);
// ((1-t)/(1+t))^n for real n
double reference_pulse_overlap(double t, double n);
double strongpulse_asymptotic_information(double mu);

// --- four-state protocol ---

double fourstate_irud_critical(double mu, double p_ok = 0.5);

struct StoringInfo {
    double p_e;
    double i_eve;
};

StoringInfo storing_attack_info(const StateVector& a, const StateVector& b);
// Helstrom on n copies of two pure states with the given overlap modulus.
StoringInfo storing_info_copies(double overlap, int copies);

AttackPoint fourstate_combined_point(double mu, double delta_db, double alpha = 0.25,
                                     double p_ok = 0.5);
AttackReport fourstate_combined_curve(double mu, std::span<const double> delta_grid,
                                      double alpha = 0.25, double p_ok = 0.5);
// Pure strategies, for comparison with the combined curve.
double fourstate_storing_only(double mu, double delta_db);
double fourstate_irud_only(double mu, double delta_db, double p_ok = 0.5);

// --- n_b-basis generalization; mu follows the equal-raw-rate rule ---

enum class RateForm {
    DetectorAware,  // click probabilities with detector efficiency
    Linear,         // mean forwarded photon numbers (small-eta limit)
};

double nb_mu(int n_b);
// Bob's expected click probability at attenuation delta.
double nb_expected_clicks(int n_b, const SourceChannelModel& m, double delta_db);
double nb_critical_usd(int n_b, const SourceChannelModel& m, RateForm form = RateForm::DetectorAware);
// Click probability Eve can simulate while keeping n_s photons of every pulse.
double nb_storing_rate(int n_b, int n_s, const SourceChannelModel& m);
double nb_storing_critical(int n_b, int n_s, const SourceChannelModel& m);
double nb_stored_information(int n_b, int n_s);

// Eve's storing information per click: time-sharing over n_s strategies (concave envelope).
class StoringEnvelope {
public:
    StoringEnvelope(int n_b, const SourceChannelModel& m);

    struct Value {
        double info;
        double passed;  // share of Bob's clicks coming from untouched pulses
    };
    Value evaluate(double delta_db) const;
    double information(double delta_db) const { return evaluate(delta_db).info; }
    int n_b() const { return n_b_; }

private:
    struct Vertex {
        double rate;
        double info_rate;
    };
    int n_b_;
    SourceChannelModel model_;
    std::vector<Vertex> hull_;  // ascending rate, starting at (0,0)
};

AttackReport nb_storing_curve(int n_b, const SourceChannelModel& m,
                              std::span<const double> delta_grid);
// Attenuation where I_AB falls to Eve's storing information.
double nb_storing_crossing(int n_b, const SourceChannelModel& m);

}  // namespace pnsqkd
