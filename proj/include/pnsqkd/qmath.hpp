#pragma once

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace pnsqkd {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;

// Pure state (or an unnormalized intermediate) as an amplitude list.
class StateVector {
public:
    StateVector() = default;
    explicit StateVector(CVector amps) : amps_(std::move(amps)) {}
    StateVector(std::initializer_list<cplx> amps);

    static StateVector basis(int dim, int index);

    int dim() const { return static_cast<int>(amps_.size()); }
    const CVector& vec() const { return amps_; }
    cplx operator[](int i) const { return amps_[i]; }

    double norm() const { return amps_.norm(); }
    bool is_normalized(double tol = 1e-12) const;
    StateVector normalized() const;
    cplx inner(const StateVector& other) const { return amps_.dot(other.amps_); }

private:
    CVector amps_;
};

StateVector operator*(cplx s, const StateVector& v);
StateVector operator+(const StateVector& a, const StateVector& b);
StateVector operator-(const StateVector& a, const StateVector& b);

class Operator {
public:
    Operator() = default;
    explicit Operator(CMatrix m) : m_(std::move(m)) {}

    static Operator identity(int dim);
    static Operator zero(int dim);
    static Operator projector(const StateVector& v);  // |v><v|, no normalization

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& mat() const { return m_; }
    cplx operator()(int r, int c) const { return m_(r, c); }

    Operator adjoint() const { return Operator(m_.adjoint()); }
    cplx trace() const { return m_.trace(); }
    bool is_hermitian(double tol = 1e-12) const;
    bool is_density(double tol = 1e-12) const;
    double expectation(const StateVector& v) const;
    StateVector apply(const StateVector& v) const { return StateVector(m_ * v.vec()); }

private:
    CMatrix m_;
};

Operator operator*(const Operator& a, const Operator& b);
Operator operator*(cplx s, const Operator& a);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);

namespace kets {
StateVector zero();
StateVector one();
StateVector plus_x();
StateVector minus_x();
StateVector plus_y();
StateVector minus_y();
// (|0> + e^{i phi}|1>)/sqrt2
StateVector equatorial(double phi);
StateVector bloch(double theta, double phi);
StateVector phi_plus();
StateVector phi_minus();
StateVector psi_plus();
StateVector psi_minus();
}  // namespace kets

namespace paulis {
Operator x();
Operator y();
Operator z();
}  // namespace paulis

// Kronecker product; the left factor is the slow index.
StateVector tensor(const StateVector& a, const StateVector& b);
Operator tensor(const Operator& a, const Operator& b);
StateVector tensor_power(const StateVector& a, int n);

// Normalized Dicke states of n qubits, ordered by excitation number.
std::vector<StateVector> symmetric_basis(int n);

// Coordinates of |psi>^{(x)n} in the Dicke basis: sqrt(C(n,k)) a^(n-k) b^k.
CVector dicke_coordinates(const StateVector& qubit, int n);

// Qubit 0 is the leftmost tensor factor.
Operator partial_trace(const Operator& rho, int num_qubits, const std::vector<int>& keep);
// Reduced state of a pure state; avoids forming the full density operator.
Operator reduced_state(const StateVector& psi, int num_qubits, const std::vector<int>& keep);
// (<bra|_position (x) 1)|psi>; unnormalized state on the remaining qubits.
StateVector project_qubit(const StateVector& psi, int num_qubits, int position,
                          const StateVector& bra);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // columns
};

EigenDecomposition eig_hermitian(const Operator& a);
double max_eigenvalue(const Operator& a);
double min_eigenvalue(const Operator& a);
double trace_norm(const Operator& a);
Operator sqrt_psd(const Operator& a);

class GeneralizedMeasurement {
public:
    struct Outcome {
        std::string label;
        Operator op;
    };

    explicit GeneralizedMeasurement(std::vector<Outcome> outcomes, double tol = 1e-10);

    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    int dim() const { return outcomes_.front().op.dim(); }
    const Operator& op(const std::string& label) const;
    Operator effect(const std::string& label) const;  // A^dagger A
    double completeness_error() const;

private:
    std::vector<Outcome> outcomes_;
};

struct MeasurementResult {
    std::string label;
    double probability;
    std::optional<Operator> post_state;  // empty when unreachable
};

std::vector<MeasurementResult> apply_measurement(const GeneralizedMeasurement& m,
                                                 const Operator& rho);

double helstrom_error(const Operator& rho0, const Operator& rho1, double prior0 = 0.5);
// Pure equiprobable states with overlap modulus c.
double helstrom_error_pure(double overlap);
double binary_information(double p);

// Coefficients over the (n-m, m) splits of n photons between the two modes.
StateVector two_mode_number_state(int n, double phase, double t);

}  // namespace pnsqkd
