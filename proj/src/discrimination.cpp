#include "pnsqkd/discrimination.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pnsqkd {

namespace {

void check_eta(double eta, bool allow_half_pi) {
    const bool ok = eta > 0.0 && (allow_half_pi ? eta <= kPi / 2 + 1e-15 : eta < kPi / 2);
    if (!ok) throw std::invalid_argument("eta out of range");
}

}  // namespace

StateSet b92_states(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta / 2), s = std::sin(eta / 2);
    return {{StateVector{c, s}, StateVector{c, -s}}, {0, 1}, eta};
}

StateSet fourtwo_set_b(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta / 2), s = std::sin(eta / 2);
    const cplx i{0.0, 1.0};
    return {{StateVector{c, i * s}, StateVector{c, -i * s}}, {0, 1}, eta};
}

StateSet resistant_set_b(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta / 2), s = std::sin(eta / 2);
    return {{StateVector{s, -c}, StateVector{s, c}}, {0, 1}, eta};
}

StateSet equatorial_states(int n_b) {
    if (n_b < 1) throw std::invalid_argument("equatorial_states: n_b must be positive");
    StateSet out;
    for (int k = 0; k < 2 * n_b; ++k) {
        out.states.push_back(kets::equatorial(k * kPi / n_b));
        out.bits.push_back(k % 2);
    }
    return out;
}

GeneralizedMeasurement b92_povm(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta / 2), s = std::sin(eta / 2);
    const StateVector psi1_perp{s, c}, psi0_perp{s, -c};
    const double w = 1.0 / std::sqrt(1.0 + std::cos(eta));
    const Operator a0 = cplx(w) * Operator::projector(psi1_perp);
    const Operator a1 = cplx(w) * Operator::projector(psi0_perp);
    const Operator rest = Operator::identity(2) - a0.adjoint() * a0 - a1.adjoint() * a1;
    return GeneralizedMeasurement({{"0", a0}, {"1", a1}, {"?", sqrt_psd(rest)}});
}

GeneralizedMeasurement b92_filter(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta / 2), s = std::sin(eta / 2);
    const StateVector psi1_perp{s, c}, psi0_perp{s, -c};
    const CMatrix aok = (kets::plus_x().vec() * psi1_perp.vec().adjoint() +
                         kets::minus_x().vec() * psi0_perp.vec().adjoint()) /
                        std::sqrt(1.0 + std::cos(eta));
    const Operator ok(aok);
    const Operator rest = Operator::identity(2) - ok.adjoint() * ok;
    return GeneralizedMeasurement({{"ok", ok}, {"?", sqrt_psd(rest)}});
}

GeneralizedMeasurement projective_measurement(const std::vector<StateVector>& basis,
                                              const std::vector<std::string>& labels) {
    if (basis.size() != labels.size()) throw std::invalid_argument("label count mismatch");
    std::vector<GeneralizedMeasurement::Outcome> outs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        outs.push_back({labels[i], Operator::projector(basis[i])});
    return GeneralizedMeasurement(std::move(outs));
}

FilteredOverlap filtered_overlap_bound(double eta) {
    check_eta(eta, true);
    const double c = std::cos(eta);
    FilteredOverlap r;
    r.input_overlap = c;
    r.overlap = 2.0 * c / (1.0 + c * c);
    r.p_a = 1.0 - c;
    r.p_b = (1.0 + c * c) / (1.0 + c);
    if (r.overlap < c - 1e-15) throw std::logic_error("filtered overlap decreased");
    return r;
}

FilteredOverlap measured_filtered_overlap(double eta) {
    const auto filter = b92_filter(eta);
    const Operator& ok = filter.op("ok");
    const auto a = b92_states(eta);
    const auto b = resistant_set_b(eta);
    const StateVector b0 = ok.apply(b.states[0]), b1 = ok.apply(b.states[1]);
    FilteredOverlap r;
    r.input_overlap = std::abs(b.states[0].inner(b.states[1]));
    r.p_a = std::pow(ok.apply(a.states[0]).norm(), 2);
    r.p_b = std::pow(b0.norm(), 2);
    r.overlap = std::abs(b0.normalized().inner(b1.normalized()));
    return r;
}

IndependenceCheck linear_independence_check(const std::vector<StateVector>& states) {
    const int n = static_cast<int>(states.size());
    if (n < 1) throw std::invalid_argument("linear_independence_check: empty state list");
    for (int i = 0; i < n; ++i) {
        if (states[i].dim() != 2) throw std::invalid_argument("linear_independence_check: qubits only");
        for (int j = i + 1; j < n; ++j)
            if (std::abs(states[i].normalized().inner(states[j].normalized())) >= 1.0 - 1e-12)
                throw std::invalid_argument("linear_independence_check: duplicate states");
    }
    CMatrix m(n, n);
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        m.col(i) = dicke_coordinates(states[i].normalized(), n - 1);
        scale *= m.col(i).norm();
    }
    const double det = std::abs(m.determinant());
    return {det > 1e-10 * scale, det, scale};
}

UsdMeasurement usd_multicopy_povm(const std::vector<StateVector>& states, int copies) {
    const int n = static_cast<int>(states.size());
    if (n < 2) throw std::invalid_argument("usd_multicopy_povm: need at least two states");
    if (copies < n - 1) throw std::invalid_argument("usd_multicopy_povm: fewer than N-1 copies");
    const int dim = copies + 1;

    CMatrix v(dim, n);
    for (int i = 0; i < n; ++i) v.col(i) = dicke_coordinates(states[i].normalized(), copies);

    // dual vectors: <dual_i|v_j> = delta_ij, inside span(v)
    const CMatrix gram = v.adjoint() * v;
    const CMatrix dual = v * gram.inverse();
    if (!((dual.adjoint() * v - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-8))
        throw std::invalid_argument("usd_multicopy_povm: states are not linearly independent");

    CMatrix sum = CMatrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) sum += dual.col(i) * dual.col(i).adjoint();

    UsdMeasurement out{GeneralizedMeasurement({{"?", Operator::identity(dim)}}), 0.0, {}, {}, {}};
    out.p_ok = 1.0 / max_eigenvalue(Operator(sum));

    std::vector<GeneralizedMeasurement::Outcome> outcomes;
    CMatrix conclusive = CMatrix::Zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        const double nrm2 = dual.col(i).squaredNorm();
        const CVector perp = dual.col(i) / std::sqrt(nrm2);
        const double w = out.p_ok * nrm2;
        out.weights.push_back(w);
        out.perp.push_back(perp);
        out.copies.push_back(v.col(i));
        const CMatrix proj = perp * perp.adjoint();
        conclusive += w * proj;
        outcomes.push_back({std::to_string(i), Operator(std::sqrt(w) * proj)});
    }
    CMatrix rest = CMatrix::Identity(dim, dim) - conclusive;
    rest = 0.5 * (rest + rest.adjoint());
    outcomes.push_back({"?", sqrt_psd(Operator(rest))});
    out.measurement = GeneralizedMeasurement(std::move(outcomes));
    return out;
}

double usd_optimal_pok(int n_b) {
    if (n_b < 1 || n_b > 8) throw std::invalid_argument("usd_optimal_pok: n_b must be in 1..8");
    return usd_multicopy_povm(equatorial_states(n_b).states, 2 * n_b - 1).p_ok;
}

}  // namespace pnsqkd
