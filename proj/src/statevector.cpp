#include "shellvqe/statevector.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace shellvqe {

namespace {
constexpr double kImagTol = 1e-10;

cplx ipow_local(int k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}
}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("statevector needs ≥ 1 qubit");
    if (n_qubits > kMaxQubits)
        throw std::length_error("statevector exceeds the 24-qubit ceiling");
    amp_.assign(std::uint64_t{1} << n_qubits, cplx{0, 0});
    amp_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
    StateVector s(n_qubits);
    s.amp_[0] = 0.0;
    s.amp_.at(index) = 1.0;
    return s;
}

double StateVector::norm() const {
    double n2 = 0;
    for (const auto& a : amp_) n2 += std::norm(a);
    return std::sqrt(n2);
}

void StateVector::normalize() {
    double n = norm();
    if (n == 0) throw std::runtime_error("cannot normalize zero state");
    for (auto& a : amp_) a /= n;
}

void StateVector::apply_gate(const Gate& g) {
    const std::uint64_t dim = this->dim();
    const std::uint64_t s0 = std::uint64_t{1} << (n_qubits_ - 1 - g.q0);
    switch (g.kind) {
        case GateKind::X: {
            for (std::uint64_t i = 0; i < dim; ++i)
                if (!(i & s0)) std::swap(amp_[i], amp_[i | s0]);
            break;
        }
        case GateKind::H: {
            const double r = 1.0 / std::sqrt(2.0);
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & s0) continue;
                cplx a = amp_[i], b = amp_[i | s0];
                amp_[i] = r * (a + b);
                amp_[i | s0] = r * (a - b);
            }
            break;
        }
        case GateKind::RX: {
            const double c = std::cos(g.angle / 2), s = std::sin(g.angle / 2);
            const cplx mis{0, -s};
            for (std::uint64_t i = 0; i < dim; ++i) {
                if (i & s0) continue;
                cplx a = amp_[i], b = amp_[i | s0];
                amp_[i] = c * a + mis * b;
                amp_[i | s0] = mis * a + c * b;
            }
            break;
        }
        case GateKind::RZ: {
            const cplx e0 = std::polar(1.0, -g.angle / 2), e1 = std::polar(1.0, g.angle / 2);
            for (std::uint64_t i = 0; i < dim; ++i) amp_[i] *= (i & s0) ? e1 : e0;
            break;
        }
        case GateKind::CNOT: {
            const std::uint64_t s1 = std::uint64_t{1} << (n_qubits_ - 1 - g.q1);
            for (std::uint64_t i = 0; i < dim; ++i)
                if ((i & s0) && !(i & s1)) std::swap(amp_[i], amp_[i | s1]);
            break;
        }
        case GateKind::FSWAP: {
            const std::uint64_t s1 = std::uint64_t{1} << (n_qubits_ - 1 - g.q1);
            for (std::uint64_t i = 0; i < dim; ++i) {
                bool b0 = i & s0, b1 = i & s1;
                if (!b0 && b1) std::swap(amp_[i], amp_[(i ^ s1) | s0]);
                if (b0 && b1) amp_[i] = -amp_[i];
            }
            break;
        }
    }
}

void StateVector::apply(const Circuit& c) {
    if (c.n_qubits() != n_qubits_) throw std::invalid_argument("circuit/state dimension mismatch");
    for (const auto& g : c.gates()) apply_gate(g);
}

namespace {
/// Translate a qubit-indexed mask (bit q = qubit q) into the basis-index
/// convention (qubit q at bit N-1-q).
std::uint64_t index_mask(std::uint64_t qubit_mask, int n_qubits) {
    std::uint64_t m = 0;
    while (qubit_mask) {
        int q = std::countr_zero(qubit_mask);
        qubit_mask &= qubit_mask - 1;
        m |= std::uint64_t{1} << (n_qubits - 1 - q);
    }
    return m;
}
}  // namespace

StateVector StateVector::apply_pauli(const PauliSum& op) const {
    StateVector out(n_qubits_);
    out.amp_.assign(dim(), cplx{0, 0});
    for (const auto& t : op.terms()) {
        const std::uint64_t xm = index_mask(t.x, n_qubits_);
        const std::uint64_t zm = index_mask(t.z, n_qubits_);
        const cplx base = t.coeff * ipow_local(std::popcount(t.x & t.z));
        for (std::uint64_t i = 0; i < dim(); ++i) {
            int par = std::popcount(i & zm) & 1;
            out.amp_[i ^ xm] += (par ? -base : base) * amp_[i];
        }
    }
    return out;
}

cplx StateVector::expectation_unchecked(const PauliSum& op) const {
    cplx acc{0, 0};
    for (const auto& t : op.terms()) {
        const std::uint64_t xm = index_mask(t.x, n_qubits_);
        const std::uint64_t zm = index_mask(t.z, n_qubits_);
        const cplx base = t.coeff * ipow_local(std::popcount(t.x & t.z));
        cplx s{0, 0};
        for (std::uint64_t i = 0; i < dim(); ++i) {
            int par = std::popcount(i & zm) & 1;
            cplx v = std::conj(amp_[i ^ xm]) * amp_[i];
            s += par ? -v : v;
        }
        acc += base * s;
    }
    return acc;
}

double StateVector::expectation(const PauliSum& op) const {
    if (!op.is_hermitian()) throw std::domain_error("expectation of non-hermitian operator");
    cplx e = expectation_unchecked(op);
    if (std::abs(e.imag()) > kImagTol)
        throw std::runtime_error("expectation value has non-negligible imaginary part");
    return e.real();
}

cplx StateVector::inner(const StateVector& other) const {
    if (other.n_qubits_ != n_qubits_) throw std::invalid_argument("dimension mismatch");
    cplx s{0, 0};
    for (std::uint64_t i = 0; i < dim(); ++i) s += std::conj(amp_[i]) * other.amp_[i];
    return s;
}

std::map<std::uint64_t, double> StateVector::probabilities(const std::vector<int>& qubits) const {
    for (std::size_t a = 0; a < qubits.size(); ++a)
        for (std::size_t b = a + 1; b < qubits.size(); ++b)
            if (qubits[a] == qubits[b]) throw std::invalid_argument("duplicate qubit in marginal");
    std::map<std::uint64_t, double> probs;
    const int k = static_cast<int>(qubits.size());
    for (std::uint64_t i = 0; i < dim(); ++i) {
        double p = std::norm(amp_[i]);
        if (p == 0) continue;
        std::uint64_t pattern = 0;
        for (int t = 0; t < k; ++t)
            if (i & (std::uint64_t{1} << (n_qubits_ - 1 - qubits[t])))
                pattern |= std::uint64_t{1} << (k - 1 - t);
        probs[pattern] += p;
    }
    return probs;
}

double StateVector::occupation(int q) const {
    const std::uint64_t m = std::uint64_t{1} << (n_qubits_ - 1 - q);
    double p = 0;
    for (std::uint64_t i = 0; i < dim(); ++i)
        if (i & m) p += std::norm(amp_[i]);
    return p;
}

double binary_entropy(double gamma) {
    auto xlog2x = [](double x) { return x <= 0 ? 0.0 : x * std::log2(x); };
    return -xlog2x(1.0 - gamma) - xlog2x(gamma);
}

double StateVector::orbital_entropy(int q) const { return binary_entropy(occupation(q)); }

void dump_statevector(const StateVector& s, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    f.write("SVQEVEC1", 8);
    std::uint32_t nq = s.n_qubits(), reserved = 0;
    f.write(reinterpret_cast<const char*>(&nq), 4);
    f.write(reinterpret_cast<const char*>(&reserved), 4);
    for (const auto& a : s.amplitudes()) {
        double re = a.real(), im = a.imag();
        f.write(reinterpret_cast<const char*>(&re), 8);
        f.write(reinterpret_cast<const char*>(&im), 8);
    }
}

}  // namespace shellvqe
