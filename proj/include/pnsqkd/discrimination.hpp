#pragma once

#include "pnsqkd/qmath.hpp"

#include <vector>

namespace pnsqkd {

struct StateSet {
    std::vector<StateVector> states;
    std::vector<int> bits;
    double eta = 0.0;
};

// (cos eta/2, +-sin eta/2); overlap cos eta.
StateSet b92_states(double eta);
// Second set of the 4+2 protocol: (cos eta/2, +-i sin eta/2).
StateSet fourtwo_set_b(double eta);
// Reflected set b of the PNS-resistant geometry: (sin eta/2, -+cos eta/2).
StateSet resistant_set_b(double eta);
// |k> = (1, e^{i k pi / n_b})/sqrt2, k = 0 .. 2 n_b - 1
StateSet equatorial_states(int n_b);

GeneralizedMeasurement b92_povm(double eta);
GeneralizedMeasurement b92_filter(double eta);
GeneralizedMeasurement projective_measurement(const std::vector<StateVector>& basis,
                                              const std::vector<std::string>& labels);

struct FilteredOverlap {
    double overlap;        // set-b overlap after the set-a filter succeeded
    double p_b;            // filter success probability on the set-b states
    double p_a;            // filter success probability on the set-a states
    double input_overlap;  // cos eta
};

FilteredOverlap filtered_overlap_bound(double eta);
// Applies the explicit set-a filter to the reflected set-b states.
FilteredOverlap measured_filtered_overlap(double eta);

struct IndependenceCheck {
    bool independent;
    double determinant;  // |det| of the copy matrix in Dicke coordinates
    double scale;        // product of the column norms
};

IndependenceCheck linear_independence_check(const std::vector<StateVector>& states);

// USD with equal conclusive probability on the symmetric subspace of c copies
// (Dicke coordinates, dim c+1). Outcomes "0".."N-1" and "?".
// Pi_i = weight_i |psi_i^perp><psi_i^perp| with normalized |psi_i^perp>.
struct UsdMeasurement {
    GeneralizedMeasurement measurement;
    double p_ok;                  // conclusive probability, the same for every state
    std::vector<double> weights;  // all equal for symmetric sets (2/3 for the four-state case)
    std::vector<CVector> perp;
    std::vector<CVector> copies;  // |psi_i>^(x)c
};

UsdMeasurement usd_multicopy_povm(const std::vector<StateVector>& states, int copies);

// Optimal equal-probability USD of the 2 n_b equatorial states with 2 n_b - 1 copies.
double usd_optimal_pok(int n_b);

}  // namespace pnsqkd
