#include "pnsqkd/photonics.hpp"

#include "pnsqkd/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pnsqkd {

void SourceChannelModel::validate() const {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be non-negative");
    if (!(eta_det > 0.0 && eta_det <= 1.0)) throw std::invalid_argument("eta_det must lie in (0,1]");
    if (!(p_d >= 0.0 && p_d < 1.0)) throw std::invalid_argument("p_d must lie in [0,1)");
    if (!(qber_opt >= 0.0 && qber_opt < 0.5)) throw std::invalid_argument("qber_opt must lie in [0,0.5)");
}

double poisson_pmf(int n, double mu) {
    if (n < 0 || mu < 0.0) throw std::invalid_argument("poisson_pmf: invalid arguments");
    if (mu == 0.0) return n == 0 ? 1.0 : 0.0;
    return std::exp(-mu + n * std::log(mu) - std::lgamma(n + 1.0));
}

int poisson_cutoff(double mu) {
    if (mu < 0.0) throw std::invalid_argument("poisson_cutoff: negative mean");
    return static_cast<int>(std::ceil(mu + 12.0 * std::sqrt(mu) + 30.0));
}

std::vector<double> poisson_distribution(double mu) {
    const int n = poisson_cutoff(mu);
    std::vector<double> p(n + 1);
    for (int k = 0; k <= n; ++k) p[k] = poisson_pmf(k, mu);
    return p;
}

double transmittance(double delta_db) { return std::pow(10.0, -delta_db / 10.0); }

double attenuation_to_distance(double delta_db, double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive for distance conversion");
    return delta_db / alpha;
}

double distance_to_attenuation(double km, double alpha) { return km * alpha; }

double bob_raw_rate(const SourceChannelModel& m, double delta_db) {
    if (delta_db < 0.0) throw std::invalid_argument("attenuation must be non-negative");
    return m.mu * transmittance(delta_db);
}

double detection_probability(double eta_det, std::span<const double> distribution, int offset) {
    if (offset < 0) throw std::invalid_argument("detection_probability: negative offset");
    double s = 0.0;
    const double miss = std::log1p(-std::min(eta_det, 1.0 - 1e-300));
    for (int n = offset + 1; n < static_cast<int>(distribution.size()); ++n)
        s += distribution[n] * (eta_det >= 1.0 ? 1.0 : -std::expm1((n - offset) * miss));
    return s;
}

double qber_total(const SourceChannelModel& m, double delta_db) {
    if (delta_db < 0.0) throw std::invalid_argument("attenuation must be non-negative");
    const double signal = m.mu * m.eta_det * transmittance(delta_db);
    const double denom = m.p_d + signal;
    const double dark = denom > 0.0 ? 0.5 * m.p_d / denom : 0.0;
    return dark + m.qber_opt;
}

double information_ab(const SourceChannelModel& m, double delta_db) {
    return binary_information(std::clamp(qber_total(m, delta_db), 0.0, 0.5));
}

double multiphoton_forward_rate(double mu) { return mu + std::expm1(-mu); }

double multiphoton_probability(double mu) { return -std::expm1(-mu) - mu * std::exp(-mu); }

double three_photon_forward_rate(double mu) {
    // series for small mu: the closed form cancels catastrophically
    if (mu < 1e-2) {
        double s = 0.0, term = std::exp(-mu) * mu * mu * mu / 6.0;
        for (int n = 3; n < 40; ++n) {
            s += term * (n - 2);
            term *= mu / (n + 1);
        }
        return s;
    }
    return mu - 2.0 + std::exp(-mu) * (2.0 + mu);
}

}  // namespace pnsqkd
