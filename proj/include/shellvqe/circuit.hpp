#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shellvqe {

enum class GateKind : std::uint8_t { X, H, RX, RZ, CNOT, FSWAP };

struct Gate {
    GateKind kind = GateKind::X;
    int q0 = 0;        // target (single-qubit) or control (CNOT) or first FSWAP leg
    int q1 = -1;       // CNOT target / second FSWAP leg
    double angle = 0;  // RX/RZ only

    static Gate x(int q) { return {GateKind::X, q, -1, 0}; }
    static Gate h(int q) { return {GateKind::H, q, -1, 0}; }
    static Gate rx(int q, double theta) { return {GateKind::RX, q, -1, theta}; }
    static Gate rz(int q, double theta) { return {GateKind::RZ, q, -1, theta}; }
    static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0}; }
    static Gate fswap(int a, int b) { return {GateKind::FSWAP, a, b, 0}; }
};

/// Ordered gate list over a fixed qubit count, validated on construction,
/// with a running CNOT tally.
class Circuit {
  public:
    Circuit() = default;
    explicit Circuit(int n_qubits) : n_qubits_(n_qubits) {}

    int n_qubits() const { return n_qubits_; }
    const std::vector<Gate>& gates() const { return gates_; }
    bool empty() const { return gates_.empty(); }

    void push(const Gate& g);
    void append(const Circuit& other);
    /// Gates in reverse order with inverted angles (circuit inverse up to
    /// the self-inverse gates being their own inverse).
    Circuit inverse() const;

    int cnot_count() const { return cnot_count_; }
    int fswap_count() const { return fswap_count_; }
    /// CNOTs after compiling FSWAPs away (2 CNOTs each; see compile_fswap).
    int cnot_count_compiled() const { return cnot_count_ + 2 * fswap_count_; }
    int two_qubit_gate_count() const { return cnot_count_ + fswap_count_; }

    /// One gate per line: "CNOT 3 4", "RZ 5 -0.0786", "FSWAP 1 2".
    std::string str() const;

  private:
    int n_qubits_ = 0;
    std::vector<Gate> gates_;
    int cnot_count_ = 0;
    int fswap_count_ = 0;
};

/// Exact single-qubit+CNOT realization of the FSWAP kernel, global phase
/// included (verified to 1e-12 in tests).
Circuit compile_fswap(int n_qubits, int a, int b);

/// Expand every FSWAP through compile_fswap.
Circuit compile_fswaps(const Circuit& c);

}  // namespace shellvqe
