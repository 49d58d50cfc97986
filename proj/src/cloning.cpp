#include "pnsqkd/cloning.hpp"

#include "pnsqkd/errors.hpp"
#include "pnsqkd/numerics.hpp"
#include "pnsqkd/photonics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace pnsqkd {

namespace {

StateVector ket(const std::string& bits) {
    StateVector out{1.0};
    for (char b : bits) out = tensor(out, b == '1' ? kets::one() : kets::zero());
    return out;
}

Operator kron_all(std::initializer_list<Operator> ops) {
    Operator out = Operator::identity(1);
    for (const auto& o : ops) out = tensor(out, o);
    return out;
}

// columns = images of the input basis
CMatrix columns(std::initializer_list<StateVector> images) {
    const int rows = images.begin()->dim();
    CMatrix m(rows, static_cast<int>(images.size()));
    int c = 0;
    for (const auto& v : images) m.col(c++) = v.vec();
    return m;
}

void check_gamma(double gamma) {
    if (!(gamma >= 0.0 && gamma <= kPi / 2 + 1e-12)) throw std::invalid_argument("gamma must lie in [0, pi/2]");
}

// symmetric two-qubit input basis in the Dicke ordering
std::vector<StateVector> symmetric_pair_basis() { return symmetric_basis(2); }

}  // namespace

CloningMachine::CloningMachine(MachineKind kind, double parameter, CMatrix isometry, int input_copies,
                               std::vector<int> clone_positions)
    : kind_(kind),
      parameter_(parameter),
      v_(std::move(isometry)),
      input_copies_(input_copies),
      clones_(std::move(clone_positions)),
      bob_(clones_.front()) {
    const int rows = static_cast<int>(v_.rows());
    output_qubits_ = 0;
    while ((1 << output_qubits_) < rows) ++output_qubits_;
    if ((1 << output_qubits_) != rows) throw std::invalid_argument("output dimension is not a power of two");
    if (v_.cols() != input_copies_ + 1) throw std::invalid_argument("input dimension mismatch");
}

std::string CloningMachine::name() const {
    switch (kind_) {
        case MachineKind::NG12: return "ng12";
        case MachineKind::Cerf12: return "cerf12";
        case MachineKind::NG23: return "ng23";
        case MachineKind::NGs23: return "ngs23";
        case MachineKind::Cerf23: return "cerf23";
    }
    return "unknown";
}

void CloningMachine::set_bob_position(int clone_index) {
    if (clone_index < 0 || clone_index >= static_cast<int>(clones_.size()))
        throw std::invalid_argument("clone index out of range");
    bob_ = clones_[clone_index];
}

std::vector<int> CloningMachine::eve_positions() const {
    std::vector<int> out;
    for (int q = 0; q < output_qubits_; ++q)
        if (q != bob_) out.push_back(q);
    return out;
}

StateVector CloningMachine::apply(const StateVector& qubit) const {
    return StateVector(v_ * dicke_coordinates(qubit.normalized(), input_copies_));
}

double CloningMachine::isometry_error() const {
    const int n = static_cast<int>(v_.cols());
    return (v_.adjoint() * v_ - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

CloningMachine make_ng12(double gamma) {
    check_gamma(gamma);
    const double c = std::cos(gamma), s = std::sin(gamma);
    const CMatrix v = columns({ket("00"), cplx(c) * ket("10") + cplx(s) * ket("01")});
    return CloningMachine(MachineKind::NG12, gamma, v, 1, {0, 1});
}

CloningMachine make_cerf12(double f) {
    if (!(f >= 0.5 && f <= 1.0)) throw std::invalid_argument("Cerf fidelity must lie in [1/2, 1]");
    const double g = std::sqrt(f * (1.0 - f));
    const cplx i{0.0, 1.0};
    auto image = [&](const StateVector& psi) {
        return cplx(f) * tensor(psi, kets::phi_plus()) +
               cplx(1.0 - f) * tensor(paulis::z().apply(psi), kets::phi_minus()) +
               cplx(g) * tensor(paulis::x().apply(psi), kets::psi_plus()) +
               (i * g) * tensor(paulis::y().apply(psi), kets::psi_minus());
    };
    const CMatrix v = columns({image(kets::zero()), image(kets::one())});
    // with sigma_y = [[0,-i],[i,0]] the second clone sits on the last ancilla qubit
    return CloningMachine(MachineKind::Cerf12, f, v, 1, {0, 2});
}

namespace {

std::vector<StateVector> ng23_images(double gamma) {
    const double c = std::cos(gamma), s = std::sin(gamma);
    return {ket("000"),
            cplx(1.0 / std::sqrt(1.0 + c * c)) * (cplx(c) * (ket("010") + ket("100")) + cplx(s) * ket("001")),
            cplx(1.0 / std::sqrt(1.0 + s * s)) * (cplx(c) * ket("110") + cplx(s) * (ket("011") + ket("101")))};
}

}  // namespace

CloningMachine make_ng23(double gamma) {
    check_gamma(gamma);
    const auto im = ng23_images(gamma);
    return CloningMachine(MachineKind::NG23, gamma, columns({im[0], im[1], im[2]}), 2, {0, 1, 2});
}

CloningMachine make_ngs23(double gamma) {
    check_gamma(gamma);
    const auto im = ng23_images(gamma);
    const Operator xxx = kron_all({paulis::x(), paulis::x(), paulis::x()});
    // second branch: X^3 U X^2, and X^2 swaps |00> and |11> in the Dicke basis
    const std::vector<StateVector> flipped{xxx.apply(im[2]), xxx.apply(im[1]), xxx.apply(im[0])};
    const cplx h = 1.0 / std::sqrt(2.0);
    std::vector<StateVector> out;
    for (int k = 0; k < 3; ++k)
        out.push_back(h * (tensor(im[k], kets::zero()) + tensor(flipped[k], kets::one())));
    return CloningMachine(MachineKind::NGs23, gamma, columns({out[0], out[1], out[2]}), 2, {0, 1, 2});
}

CloningMachine make_cerf23(double x) {
    if (!(x >= 0.0 && x <= 1.0 / std::sqrt(8.0) + 1e-15)) throw std::invalid_argument("x must lie in [0, 1/sqrt8]");
    const double v = std::sqrt(std::max(0.0, 1.0 - 8.0 * x * x));
    const Operator id = Operator::identity(2);
    auto pair_sum = [&](const Operator& s) { return tensor(s, id) + tensor(id, s); };
    const Operator sx = pair_sum(paulis::x()), sy = pair_sum(paulis::y()), sz = pair_sum(paulis::z());
    const cplx i{0.0, 1.0};
    std::vector<StateVector> out;
    for (const auto& in : symmetric_pair_basis()) {
        out.push_back(cplx(v) * tensor(in, kets::phi_plus()) +
                      cplx(x) * (tensor(sz.apply(in), kets::phi_minus()) + tensor(sx.apply(in), kets::psi_plus()) +
                                 i * tensor(sy.apply(in), kets::psi_minus())));
    }
    // clones: the two input qubits and the second ancilla qubit
    return CloningMachine(MachineKind::Cerf23, x, columns({out[0], out[1], out[2]}), 2, {0, 1, 3});
}

std::vector<CloneState> clone_reduced_states(const CloningMachine& m, const StateVector& input) {
    if (input.dim() != 2) throw std::invalid_argument("clone_reduced_states: input must be a qubit");
    const StateVector psi = input.normalized();
    const StateVector out = m.apply(psi);
    std::vector<CloneState> res;
    for (int pos : m.clone_positions()) {
        Operator rho = reduced_state(out, m.output_qubits(), {pos});
        const double f = rho.expectation(psi);
        res.push_back({pos, std::move(rho), f});
    }
    return res;
}

namespace {

double disturbance_of(const CloningMachine& m) {
    const StateVector in = kets::plus_x();
    const Operator rho = reduced_state(m.apply(in), m.output_qubits(), {m.bob_position()});
    return 1.0 - rho.expectation(in);
}

double helstrom_unnormalized(const Operator& a, const Operator& b) {
    const double n = (a.trace() + b.trace()).real();
    if (n <= 0.0) return 0.5;
    return std::clamp(0.5 * (1.0 - trace_norm(a - b) / n), 0.0, 0.5);
}

StateVector orthogonal(const StateVector& q) { return StateVector{-std::conj(q[1]), std::conj(q[0])}; }

}  // namespace

SiftedPoint sifted_point_for_set(const CloningMachine& m, const StateVector& first, const StateVector& second) {
    const int nq = m.output_qubits();
    const int bob = m.bob_position();
    const std::vector<StateVector> sent{first, second};
    // outcome excluding `first` points to `second` and vice versa
    const std::vector<StateVector> outcomes{orthogonal(first), orthogonal(second)};
    const std::vector<int> inferred{1, 0};

    const int de = 1 << (nq - 1);
    std::vector<Operator> sigma(2, Operator::zero(de)), tau(2, Operator::zero(de));
    double accepted = 0.0, errors = 0.0;
    for (int s = 0; s < 2; ++s) {
        const StateVector out = m.apply(sent[s]);
        for (int b = 0; b < 2; ++b) {
            const StateVector e = project_qubit(out, nq, bob, outcomes[b]);
            const Operator w = cplx(0.5) * Operator::projector(e);  // basis choice 1/2
            sigma[s] = sigma[s] + w;
            tau[b] = tau[b] + w;
            const double p = w.trace().real();
            accepted += p;
            if (inferred[b] != s) errors += p;
        }
    }
    SiftedPoint r;
    r.parameter = m.parameter();
    r.disturbance = disturbance_of(m);
    r.qber_sifted = accepted > 0.0 ? errors / accepted : 0.5;
    r.i_ab = binary_information(std::clamp(r.qber_sifted, 0.0, 0.5));
    r.i_ae = binary_information(helstrom_unnormalized(sigma[0], sigma[1]));
    r.i_be = binary_information(helstrom_unnormalized(tau[0], tau[1]));
    r.i_eve = std::min(r.i_ae, r.i_be);
    return r;
}

SiftedPoint sifted_point(const CloningMachine& m) {
    const std::vector<StateVector> ring{kets::plus_x(), kets::plus_y(), kets::minus_x(), kets::minus_y()};
    SiftedPoint avg;
    for (int k = 0; k < 4; ++k) {
        const SiftedPoint p = sifted_point_for_set(m, ring[k], ring[(k + 1) % 4]);
        avg.parameter = p.parameter;
        avg.disturbance = p.disturbance;
        avg.qber_sifted += p.qber_sifted / 4;
        avg.i_ae += p.i_ae / 4;
        avg.i_be += p.i_be / 4;
    }
    avg.i_ab = binary_information(std::clamp(avg.qber_sifted, 0.0, 0.5));
    avg.i_eve = std::min(avg.i_ae, avg.i_be);
    return avg;
}

CloningMachine machine12(Family12 f, double gamma) {
    check_gamma(gamma);
    return f == Family12::NG ? make_ng12(gamma) : make_cerf12((1.0 + std::cos(gamma)) / 2.0);
}

CloningMachine machine23(Family23 f, double gamma) {
    check_gamma(gamma);
    switch (f) {
        case Family23::NG: return make_ng23(gamma);
        case Family23::NGs: return make_ngs23(gamma);
        case Family23::Cerf: return make_cerf23(std::min(std::sin(gamma), 1.0) / std::sqrt(8.0));
    }
    throw std::invalid_argument("unknown machine family");
}

std::vector<SiftedPoint> sifted_cloning_attack(Family12 f, std::span<const double> gamma_grid) {
    std::vector<SiftedPoint> out;
    for (double g : gamma_grid) out.push_back(sifted_point(machine12(f, g)));
    return out;
}

double pns_cloning_min_attenuation(double mu) {
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be positive");
    return 10.0 * std::log10(mu / multiphoton_forward_rate(mu));
}

std::vector<SiftedPoint> pns_cloning_attack(Family23 f, double mu, double delta_db,
                                            std::span<const double> gamma_grid) {
    if (delta_db < pns_cloning_min_attenuation(mu))
        throw InfeasibleModel("single-photon pulses cannot all be blocked at this attenuation");
    std::vector<SiftedPoint> out;
    for (double g : gamma_grid) out.push_back(sifted_point(machine23(f, g)));
    return out;
}

namespace {

SiftedPoint first_crossing(const std::function<SiftedPoint(double)>& at) {
    auto secure = [&](double g) {
        const SiftedPoint p = at(g);
        return p.i_ab > p.i_eve;
    };
    const int n = 200;
    double prev = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double g = (kPi / 2) * k / n;
        if (!secure(g)) return at(bisect_boundary(secure, prev, g, 1e-12));
        prev = g;
    }
    throw std::domain_error("no crossing found");
}

}  // namespace

SiftedPoint crossing12(Family12 f) {
    return first_crossing([f](double g) { return sifted_point(machine12(f, g)); });
}

SiftedPoint crossing23(Family23 f) {
    return first_crossing([f](double g) { return sifted_point(machine23(f, g)); });
}

namespace {

SiftedPoint at_qber(const std::function<CloningMachine(double)>& make, double qber) {
    if (!(qber >= 0.0 && qber <= 0.5)) throw std::invalid_argument("QBER must lie in [0, 0.5]");
    auto below = [&](double g) { return sifted_point(make(g)).qber_sifted < qber; };
    return sifted_point(make(bisect_boundary(below, 0.0, kPi / 2, 1e-12)));
}

}  // namespace

SiftedPoint sifted_point_at_qber(Family12 f, double qber) {
    return at_qber([f](double g) { return machine12(f, g); }, qber);
}

SiftedPoint sifted_point_at_qber(Family23 f, double qber) {
    return at_qber([f](double g) { return machine23(f, g); }, qber);
}

double bb84_cloning_information(double d) {
    if (!(d >= 0.0 && d <= 0.5)) throw std::invalid_argument("disturbance must lie in [0, 0.5]");
    return binary_information(0.5 - std::sqrt(d * (1.0 - d)));
}

}  // namespace pnsqkd
