#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "shellvqe/circuit.hpp"
#include "shellvqe/pauli.hpp"

namespace shellvqe {

/// Dense statevector over n qubits.  Qubit 0 is the most significant bit of
/// the basis index, so |b0 b1 ... b_{N-1}⟩ sits at index Σ b_q 2^{N-1-q} and
/// ket strings read left to right as qubits 0..N-1.
class StateVector {
  public:
    static constexpr int kMaxQubits = 24;  // 256 MiB of amplitudes

    explicit StateVector(int n_qubits);
    static StateVector basis_state(int n_qubits, std::uint64_t index);

    int n_qubits() const { return n_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << n_qubits_; }
    std::vector<cplx>& amplitudes() { return amp_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    cplx& operator[](std::uint64_t i) { return amp_[i]; }
    const cplx& operator[](std::uint64_t i) const { return amp_[i]; }

    double norm() const;
    void normalize();

    void apply_gate(const Gate& g);
    void apply(const Circuit& c);

    /// Apply a Pauli word / sum: out = op|ψ⟩.
    StateVector apply_pauli(const PauliSum& op) const;

    /// ⟨ψ|op|ψ⟩ for hermitian op (throws std::domain_error otherwise);
    /// residual imaginary parts below 1e-10 are discarded.
    double expectation(const PauliSum& op) const;
    cplx expectation_unchecked(const PauliSum& op) const;

    cplx inner(const StateVector& other) const;  // ⟨this|other⟩

    /// Marginal distribution over the listed qubits.  Pattern bit for the
    /// t-th listed qubit sits at position (count-1-t), so patterns read like
    /// ket strings in listing order.
    std::map<std::uint64_t, double> probabilities(const std::vector<int>& qubits) const;

    /// Occupation probability γ_q = ⟨n_q⟩.
    double occupation(int q) const;

    /// Single-orbital entanglement entropy from γ = ⟨n_q⟩:
    /// S = −(1−γ)log2(1−γ) − γ log2 γ with 0·log 0 = 0.
    double orbital_entropy(int q) const;

  private:
    int n_qubits_ = 0;
    std::vector<cplx> amp_;
};

double binary_entropy(double gamma);

/// Serialize amplitudes as little-endian (re, im) float64 pairs after a
/// 16-byte header: magic "SVQEVEC1", uint32 n_qubits, uint32 reserved.
void dump_statevector(const StateVector& s, const std::string& path);

}  // namespace shellvqe
