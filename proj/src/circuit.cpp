#include "shellvqe/circuit.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shellvqe {

namespace {
bool is_two_qubit(GateKind k) { return k == GateKind::CNOT || k == GateKind::FSWAP; }

const char* kind_name(GateKind k) {
    switch (k) {
        case GateKind::X: return "X";
        case GateKind::H: return "H";
        case GateKind::RX: return "RX";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
        default: return "FSWAP";
    }
}
}  // namespace

void Circuit::push(const Gate& g) {
    if (g.q0 < 0 || g.q0 >= n_qubits_)
        throw std::out_of_range("gate qubit out of range");
    if (is_two_qubit(g.kind)) {
        if (g.q1 < 0 || g.q1 >= n_qubits_ || g.q1 == g.q0)
            throw std::out_of_range("two-qubit gate needs distinct in-range qubits");
    }
    gates_.push_back(g);
    if (g.kind == GateKind::CNOT) ++cnot_count_;
    if (g.kind == GateKind::FSWAP) ++fswap_count_;
}

void Circuit::append(const Circuit& other) {
    for (const auto& g : other.gates()) push(g);
}

Circuit Circuit::inverse() const {
    Circuit inv(n_qubits_);
    for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
        Gate g = *it;
        if (g.kind == GateKind::RX || g.kind == GateKind::RZ) g.angle = -g.angle;
        inv.push(g);
    }
    return inv;
}

std::string Circuit::str() const {
    std::ostringstream os;
    os.precision(12);
    for (const auto& g : gates_) {
        os << kind_name(g.kind) << ' ' << g.q0;
        if (is_two_qubit(g.kind)) os << ' ' << g.q1;
        if (g.kind == GateKind::RX || g.kind == GateKind::RZ) os << ' ' << g.angle;
        os << '\n';
    }
    return os.str();
}

Circuit compile_fswap(int n_qubits, int a, int b) {
    // FSWAP is locally equivalent to iSWAP, so two CNOTs suffice.  The S-gate
    // and -i phases of FSWAP = -i·(Rz⊗Rz)·iSWAP·(Rz⊗Rz) cancel exactly in
    // this arrangement, so the action equals the kernel with no global phase.
    const double pi = 3.14159265358979323846;
    Circuit c(n_qubits);
    c.push(Gate::rz(a, pi / 4));
    c.push(Gate::rz(b, pi / 4));
    c.push(Gate::h(a));
    c.push(Gate::cnot(a, b));
    c.push(Gate::cnot(b, a));
    c.push(Gate::h(b));
    c.push(Gate::rz(a, -pi / 4));
    c.push(Gate::rz(b, -pi / 4));
    return c;
}

Circuit compile_fswaps(const Circuit& c) {
    Circuit out(c.n_qubits());
    for (const auto& g : c.gates()) {
        if (g.kind == GateKind::FSWAP)
            out.append(compile_fswap(c.n_qubits(), g.q0, g.q1));
        else
            out.push(g);
    }
    return out;
}

}  // namespace shellvqe
