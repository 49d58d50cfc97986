#pragma once

#include "pnsqkd/photonics.hpp"

namespace pnsqkd {

struct ProtocolConfig {
    int n_bases = 2;
    double mu = 0.2;

    static ProtocolConfig with_auto_mu(int n_bases);
    double sifting_factor() const;  // sin^2(pi/2n_b)/n_b, 1/4 for two bases
    void validate() const;
};

bool secure(double i_ab, double i_ae, double i_be);
bool secure(double i_ab, double i_eve);

double key_rate(double mu, double delta_db, double i_eve, double sifting = 0.25);

struct OptimalMu {
    double mu;
    double rate;
    double i_eve;
    bool at_cap;  // maximum sits on the search boundary
};

inline constexpr double kMuMin = 1e-3;
inline constexpr double kMuCap = 2.0;

// Combined four-state attack.
double combined_key_rate(double mu, double delta_db);
OptimalMu optimal_mu(double delta_db);

struct NbSummary {
    int n_b;
    double mu;
    double p_ok;
    double delta1_db;  // USD attack
    double delta2_db;  // storing attack, I_AB = I_Eve crossing
    double critical_db;
    double dist1_km;
    double dist2_km;
    double critical_km;
};

NbSummary nb_security_summary(int n_b, const SourceChannelModel& m);

struct CaseStudy {
    double mu;
    double distance_km;
    double delta_db;
    double qber;
    double qber_dark;
    double qber_optical;
    double i_ab;
    double i_eve_pns;          // combined four-state PNS attack
    double min_delta_db;       // below this the 2->3 PNS+cloning attack is infeasible
    double i_eve_cloning_opt;  // PNS+cloning attack producing only the optical errors
    double i_eve_cloning_all;  // Eve credited with the whole QBER
    bool secure_optical_only;
    bool secure_full_error;
};

CaseStudy geneva_lausanne_report();

}  // namespace pnsqkd
