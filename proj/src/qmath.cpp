#include "pnsqkd/qmath.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pnsqkd {

StateVector::StateVector(std::initializer_list<cplx> amps) : amps_(amps.size()) {
    int i = 0;
    for (const auto& a : amps) amps_[i++] = a;
}

StateVector StateVector::basis(int dim, int index) {
    if (index < 0 || index >= dim) throw std::invalid_argument("basis index out of range");
    CVector v = CVector::Zero(dim);
    v[index] = 1.0;
    return StateVector(v);
}

bool StateVector::is_normalized(double tol) const {
    return std::abs(amps_.squaredNorm() - 1.0) < tol;
}

StateVector StateVector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
    return StateVector(amps_ / n);
}

StateVector operator*(cplx s, const StateVector& v) { return StateVector(s * v.vec()); }
StateVector operator+(const StateVector& a, const StateVector& b) {
    return StateVector(a.vec() + b.vec());
}
StateVector operator-(const StateVector& a, const StateVector& b) {
    return StateVector(a.vec() - b.vec());
}

Operator Operator::identity(int dim) { return Operator(CMatrix::Identity(dim, dim)); }
Operator Operator::zero(int dim) { return Operator(CMatrix::Zero(dim, dim)); }
Operator Operator::projector(const StateVector& v) {
    return Operator(v.vec() * v.vec().adjoint());
}

bool Operator::is_hermitian(double tol) const {
    if (m_.rows() != m_.cols()) return false;
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() < tol;
}

bool Operator::is_density(double tol) const {
    if (!is_hermitian(tol)) return false;
    if (std::abs(m_.trace() - cplx(1.0)) > tol) return false;
    return min_eigenvalue(*this) >= -1e-10;
}

double Operator::expectation(const StateVector& v) const {
    return v.vec().dot(m_ * v.vec()).real();
}

Operator operator*(const Operator& a, const Operator& b) { return Operator(a.mat() * b.mat()); }
Operator operator*(cplx s, const Operator& a) { return Operator(s * a.mat()); }
Operator operator+(const Operator& a, const Operator& b) { return Operator(a.mat() + b.mat()); }
Operator operator-(const Operator& a, const Operator& b) { return Operator(a.mat() - b.mat()); }

namespace kets {
namespace {
const double s2 = 1.0 / std::sqrt(2.0);
const cplx I{0.0, 1.0};
}  // namespace
StateVector zero() { return {1.0, 0.0}; }
StateVector one() { return {0.0, 1.0}; }
StateVector plus_x() { return {s2, s2}; }
StateVector minus_x() { return {s2, -s2}; }
StateVector plus_y() { return {s2, I * s2}; }
StateVector minus_y() { return {s2, -I * s2}; }
StateVector equatorial(double phi) { return {s2, s2 * std::polar(1.0, phi)}; }
StateVector bloch(double theta, double phi) {
    return {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
}
StateVector phi_plus() { return {s2, 0.0, 0.0, s2}; }
StateVector phi_minus() { return {s2, 0.0, 0.0, -s2}; }
StateVector psi_plus() { return {0.0, s2, s2, 0.0}; }
StateVector psi_minus() { return {0.0, s2, -s2, 0.0}; }
}  // namespace kets

namespace paulis {
Operator x() {
    CMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator(m);
}
Operator y() {
    CMatrix m(2, 2);
    m << 0, cplx(0, -1), cplx(0, 1), 0;
    return Operator(m);
}
Operator z() {
    CMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator(m);
}
}  // namespace paulis

StateVector tensor(const StateVector& a, const StateVector& b) {
    CVector out(a.dim() * b.dim());
    for (int i = 0; i < a.dim(); ++i)
        out.segment(i * b.dim(), b.dim()) = a[i] * b.vec();
    return StateVector(out);
}

Operator tensor(const Operator& a, const Operator& b) {
    const int da = a.dim(), db = b.dim();
    CMatrix out(da * db, da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a(i, j) * b.mat();
    return Operator(out);
}

StateVector tensor_power(const StateVector& a, int n) {
    if (n < 0) throw std::invalid_argument("negative tensor power");
    StateVector out{1.0};
    for (int k = 0; k < n; ++k) out = tensor(out, a);
    return out;
}

namespace {

double log_binomial(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace

std::vector<StateVector> symmetric_basis(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("symmetric_basis: n must be in 1..8");
    const int dim = 1 << n;
    std::vector<StateVector> out;
    for (int k = 0; k <= n; ++k) {
        CVector v = CVector::Zero(dim);
        for (int idx = 0; idx < dim; ++idx)
            if (std::popcount(static_cast<unsigned>(idx)) == k) v[idx] = 1.0;
        out.emplace_back(v / v.norm());
    }
    return out;
}

CVector dicke_coordinates(const StateVector& qubit, int n) {
    if (qubit.dim() != 2) throw std::invalid_argument("dicke_coordinates needs a qubit");
    if (n < 0) throw std::invalid_argument("negative copy number");
    CVector out(n + 1);
    for (int k = 0; k <= n; ++k)
        out[k] = std::exp(0.5 * log_binomial(n, k)) * std::pow(qubit[0], n - k) *
                 std::pow(qubit[1], k);
    return out;
}

namespace {

void check_keep(int num_qubits, const std::vector<int>& keep) {
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("partial_trace: repeated qubit index");
    for (int q : keep)
        if (q < 0 || q >= num_qubits)
            throw std::invalid_argument("partial_trace: qubit index out of range");
}

// Maps (kept-bits, traced-bits) to a full basis index, respecting the order in keep.
struct SplitIndex {
    std::vector<int> keep, rest;
    int n;
    SplitIndex(int num_qubits, const std::vector<int>& k) : keep(k), n(num_qubits) {
        for (int q = 0; q < n; ++q)
            if (std::find(keep.begin(), keep.end(), q) == keep.end()) rest.push_back(q);
    }
    int full(int kept, int traced) const {
        int idx = 0;
        const int nk = static_cast<int>(keep.size()), nr = static_cast<int>(rest.size());
        for (int i = 0; i < nk; ++i)
            if ((kept >> (nk - 1 - i)) & 1) idx |= 1 << (n - 1 - keep[i]);
        for (int i = 0; i < nr; ++i)
            if ((traced >> (nr - 1 - i)) & 1) idx |= 1 << (n - 1 - rest[i]);
        return idx;
    }
};

}  // namespace

Operator partial_trace(const Operator& rho, int num_qubits, const std::vector<int>& keep) {
    if (rho.dim() != (1 << num_qubits))
        throw std::invalid_argument("partial_trace: dimension does not match qubit count");
    check_keep(num_qubits, keep);
    const SplitIndex s(num_qubits, keep);
    const int dk = 1 << keep.size(), dr = 1 << s.rest.size();
    CMatrix out = CMatrix::Zero(dk, dk);
    for (int i = 0; i < dk; ++i)
        for (int j = 0; j < dk; ++j)
            for (int t = 0; t < dr; ++t) out(i, j) += rho(s.full(i, t), s.full(j, t));
    return Operator(out);
}

Operator reduced_state(const StateVector& psi, int num_qubits, const std::vector<int>& keep) {
    if (psi.dim() != (1 << num_qubits))
        throw std::invalid_argument("reduced_state: dimension does not match qubit count");
    check_keep(num_qubits, keep);
    const SplitIndex s(num_qubits, keep);
    const int dk = 1 << keep.size(), dr = 1 << s.rest.size();
    CMatrix m(dk, dr);
    for (int i = 0; i < dk; ++i)
        for (int t = 0; t < dr; ++t) m(i, t) = psi[s.full(i, t)];
    return Operator(m * m.adjoint());
}

StateVector project_qubit(const StateVector& psi, int num_qubits, int position,
                          const StateVector& bra) {
    if (psi.dim() != (1 << num_qubits) || bra.dim() != 2)
        throw std::invalid_argument("project_qubit: dimension mismatch");
    if (position < 0 || position >= num_qubits)
        throw std::invalid_argument("project_qubit: position out of range");
    const SplitIndex s(num_qubits, {position});
    const int dr = 1 << (num_qubits - 1);
    CVector out(dr);
    for (int t = 0; t < dr; ++t)
        out[t] = std::conj(bra[0]) * psi[s.full(0, t)] + std::conj(bra[1]) * psi[s.full(1, t)];
    return StateVector(out);
}

EigenDecomposition eig_hermitian(const Operator& op) {
    if (!op.is_hermitian(1e-10)) throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    const int n = op.dim();
    CMatrix a = 0.5 * (op.mat() + op.mat().adjoint());
    CMatrix v = CMatrix::Identity(n, n);

    auto off_norm = [&] {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };
    const double tol = 1e-13 * std::max(1.0, a.norm());

    for (int sweep = 0; sweep < 100 && off_norm() >= tol; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r < 1e-300) continue;
                const cplx phase = a(p, q) / r;  // e^{i phi}
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
                // unitary acting on columns p,q: [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const cplx u00 = c, u01 = s;
                const cplx u10 = -s * std::conj(phase), u11 = c * std::conj(phase);
                for (int k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                    const cplx vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
                for (int k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });
    EigenDecomposition out;
    out.vectors.resize(n, n);
    for (int k = 0; k < n; ++k) {
        out.values.push_back(a(order[k], order[k]).real());
        out.vectors.col(k) = v.col(order[k]);
    }
    return out;
}

double max_eigenvalue(const Operator& a) { return eig_hermitian(a).values.back(); }
double min_eigenvalue(const Operator& a) { return eig_hermitian(a).values.front(); }

double trace_norm(const Operator& a) {
    double s = 0.0;
    for (double l : eig_hermitian(a).values) s += std::abs(l);
    return s;
}

Operator sqrt_psd(const Operator& a) {
    const auto e = eig_hermitian(a);
    const int n = a.dim();
    CMatrix d = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        if (e.values[k] < -1e-10) throw std::domain_error("sqrt_psd: negative eigenvalue");
        d(k, k) = std::sqrt(std::max(0.0, e.values[k]));
    }
    return Operator(e.vectors * d * e.vectors.adjoint());
}

GeneralizedMeasurement::GeneralizedMeasurement(std::vector<Outcome> outcomes, double tol)
    : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw std::invalid_argument("measurement needs at least one outcome");
    for (const auto& o : outcomes_)
        if (o.op.dim() != outcomes_.front().op.dim())
            throw std::invalid_argument("measurement operators differ in dimension");
    if (completeness_error() > tol)
        throw std::invalid_argument("measurement violates completeness");
}

const Operator& GeneralizedMeasurement::op(const std::string& label) const {
    for (const auto& o : outcomes_)
        if (o.label == label) return o.op;
    throw std::invalid_argument("unknown outcome label: " + label);
}

Operator GeneralizedMeasurement::effect(const std::string& label) const {
    const Operator& a = op(label);
    return a.adjoint() * a;
}

double GeneralizedMeasurement::completeness_error() const {
    CMatrix sum = CMatrix::Zero(dim(), dim());
    for (const auto& o : outcomes_) sum += o.op.mat().adjoint() * o.op.mat();
    return (sum - CMatrix::Identity(dim(), dim())).cwiseAbs().maxCoeff();
}

std::vector<MeasurementResult> apply_measurement(const GeneralizedMeasurement& m,
                                                 const Operator& rho) {
    if (rho.dim() != m.dim()) throw std::invalid_argument("apply_measurement: dimension mismatch");
    std::vector<MeasurementResult> out;
    for (const auto& o : m.outcomes()) {
        CMatrix post = o.op.mat() * rho.mat() * o.op.mat().adjoint();
        const double p = post.trace().real();
        MeasurementResult r{o.label, p, std::nullopt};
        if (p > 1e-14) r.post_state = Operator(post / p);
        out.push_back(std::move(r));
    }
    return out;
}

double helstrom_error(const Operator& rho0, const Operator& rho1, double prior0) {
    if (!(prior0 >= 0.0 && prior0 <= 1.0)) throw std::invalid_argument("helstrom_error: invalid prior");
    if (rho0.dim() != rho1.dim()) throw std::invalid_argument("helstrom_error: dimension mismatch");
    const Operator diff = cplx(prior0) * rho0 - cplx(1.0 - prior0) * rho1;
    return std::clamp(0.5 * (1.0 - trace_norm(diff)), 0.0, 0.5);
}

double helstrom_error_pure(double overlap) {
    const double c = std::clamp(std::abs(overlap), 0.0, 1.0);
    return 0.5 * (1.0 - std::sqrt(1.0 - c * c));
}

double binary_information(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_information: p outside [0,1]");
    auto xlog = [](double x) { return x > 0.0 ? x * std::log2(x) : 0.0; };
    return std::clamp(1.0 + xlog(p) + xlog(1.0 - p), 0.0, 1.0);
}

StateVector two_mode_number_state(int n, double phase, double t) {
    if (n < 0) throw std::invalid_argument("two_mode_number_state: negative photon number");
    if (!(t > 0.0)) throw std::invalid_argument("two_mode_number_state: ratio must be positive");
    CVector out(n + 1);
    const double lt = std::log(t), l1t = std::log1p(t);
    for (int m = 0; m <= n; ++m) {
        const double logmag = 0.5 * (log_binomial(n, m) + m * lt - n * l1t);
        out[m] = std::polar(std::exp(logmag), m * phase);
    }
    return StateVector(out);
}

}  // namespace pnsqkd
