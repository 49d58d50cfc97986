#pragma once

#include <span>
#include <vector>

namespace pnsqkd {

struct SourceChannelModel {
    double mu = 0.1;
    double alpha = 0.25;  // dB/km
    double eta_det = 0.1;
    double p_d = 1e-5;
    double qber_opt = 0.01;

    void validate() const;
};

double poisson_pmf(int n, double mu);
// Truncation point N = ceil(mu + 12 sqrt(mu) + 30); the tail beyond it is < 1e-12.
int poisson_cutoff(double mu);
// p(0..N)
std::vector<double> poisson_distribution(double mu);

double transmittance(double delta_db);
double attenuation_to_distance(double delta_db, double alpha = 0.25);
double distance_to_attenuation(double km, double alpha = 0.25);

// mu * 10^(-delta/10); detector efficiency not included.
double bob_raw_rate(const SourceChannelModel& m, double delta_db);

// sum_{n > offset} p(n) (1 - (1-eta)^(n-offset)), where p(n) = distribution[n].
double detection_probability(double eta_det, std::span<const double> distribution, int offset = 0);

double qber_total(const SourceChannelModel& m, double delta_db);
// I_AB from the QBER model, clamped to [0, 0.5] first.
double information_ab(const SourceChannelModel& m, double delta_db);

// Sums of the multiphoton tails used by the PNS attacks.
double multiphoton_forward_rate(double mu);   // sum_{n>=2} p_n (n-1) = mu - 1 + e^-mu
double multiphoton_probability(double mu);    // sum_{n>=2} p_n = 1 - e^-mu (1+mu)
double three_photon_forward_rate(double mu);  // sum_{n>=3} p_n (n-2) = mu - 2 + e^-mu (2+mu)

}  // namespace pnsqkd
