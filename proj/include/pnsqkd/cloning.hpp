#pragma once

#include "pnsqkd/qmath.hpp"

#include <span>
#include <string>
#include <vector>

namespace pnsqkd {

enum class MachineKind { NG12, Cerf12, NG23, NGs23, Cerf23 };

// Isometry from the input space (qubit, or the symmetric two-qubit subspace in Dicke
// coordinates) to the output qubits; the ancilla reference state is absorbed.
class CloningMachine {
public:
    CloningMachine(MachineKind kind, double parameter, CMatrix isometry, int input_copies,
                   std::vector<int> clone_positions);

    MachineKind kind() const { return kind_; }
    std::string name() const;
    double parameter() const { return parameter_; }
    const CMatrix& isometry() const { return v_; }
    int input_copies() const { return input_copies_; }
    int output_qubits() const { return output_qubits_; }
    const std::vector<int>& clone_positions() const { return clones_; }

    int bob_position() const { return bob_; }
    void set_bob_position(int clone_index);  // index into clone_positions
    std::vector<int> eve_positions() const;

    StateVector apply(const StateVector& qubit) const;
    double isometry_error() const;  // max |V^dagger V - 1|

private:
    MachineKind kind_;
    double parameter_;
    CMatrix v_;
    int input_copies_;
    int output_qubits_;
    std::vector<int> clones_;
    int bob_;
};

CloningMachine make_ng12(double gamma);
CloningMachine make_cerf12(double fidelity);
CloningMachine make_ng23(double gamma);
CloningMachine make_ngs23(double gamma);
CloningMachine make_cerf23(double x);

struct CloneState {
    int position;
    Operator rho;
    double fidelity;
};

std::vector<CloneState> clone_reduced_states(const CloningMachine& m, const StateVector& input);

struct SiftedPoint {
    double parameter = 0.0;
    double disturbance = 0.0;  // 1 - F of Bob's clone on equatorial inputs
    double qber_sifted = 0.0;
    double i_ab = 0.0;
    double i_ae = 0.0;
    double i_be = 0.0;
    double i_eve = 0.0;  // min(i_ae, i_be)
};

// One announced pair {first, second}; Bob keeps outcomes that exclude one candidate.
SiftedPoint sifted_point_for_set(const CloningMachine& m, const StateVector& first,
                                 const StateVector& second);
// Average over the four announced pairs of the four-state protocol.
SiftedPoint sifted_point(const CloningMachine& m);

enum class Family12 { NG, Cerf };
enum class Family23 { NG, NGs, Cerf };

// Machines are indexed by gamma in [0, pi/2]; Cerf12 uses F = (1+cos gamma)/2 and
// Cerf23 uses x = sin(gamma)/sqrt(8).
CloningMachine machine12(Family12 f, double gamma);
CloningMachine machine23(Family23 f, double gamma);

std::vector<SiftedPoint> sifted_cloning_attack(Family12 f, std::span<const double> gamma_grid);

// Throws InfeasibleModel when single-photon pulses cannot all be blocked at delta.
std::vector<SiftedPoint> pns_cloning_attack(Family23 f, double mu, double delta_db,
                                            std::span<const double> gamma_grid);
// Smallest attenuation at which every single-photon pulse can be blocked.
double pns_cloning_min_attenuation(double mu);

// First crossing I_AB = I_Eve along gamma.
SiftedPoint crossing12(Family12 f);
SiftedPoint crossing23(Family23 f);

// Machine setting whose sifted QBER equals the target (QBER grows with gamma).
SiftedPoint sifted_point_at_qber(Family12 f, double qber);
SiftedPoint sifted_point_at_qber(Family23 f, double qber);

// Reference curve of BB84 under the optimal individual attack.
double bb84_cloning_information(double disturbance);

}  // namespace pnsqkd
