#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace shellvqe {

using cplx = std::complex<double>;

/// One weighted Pauli word over up to 64 qubits.
///
/// Axes are stored as two bitmasks (bit q = qubit q): X-part and Z-part.
/// A qubit with both bits set carries Y, with the canonical phase convention
/// Y = i X Z, so the stored word is  i^popcount(x&z) * X^x * Z^z.
struct PauliTerm {
    cplx coeff{1.0, 0.0};
    std::uint64_t x = 0;
    std::uint64_t z = 0;

    std::uint64_t support() const { return x | z; }
    bool is_diagonal() const { return x == 0; }
};

/// Multiply two Pauli words, tracking the resulting phase.
PauliTerm mul(const PauliTerm& a, const PauliTerm& b);

/// Canonicalized sum of Pauli words: terms sorted lexicographically on
/// (Z-mask, X-mask), duplicates merged, coefficients below 1e-14 pruned.
class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(int n_qubits) : n_qubits_(n_qubits) {}
    PauliSum(int n_qubits, std::vector<PauliTerm> terms);

    static PauliSum identity(int n_qubits, cplx c = {1.0, 0.0});
    static PauliSum zero(int n_qubits) { return PauliSum(n_qubits); }

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliTerm>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    PauliSum& operator+=(const PauliSum& other);
    PauliSum& operator-=(const PauliSum& other);
    PauliSum& operator*=(cplx scalar);
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a -= b; }
    friend PauliSum operator*(PauliSum a, cplx s) { return a *= s; }
    friend PauliSum operator*(cplx s, PauliSum a) { return a *= s; }
    friend PauliSum operator*(const PauliSum& a, const PauliSum& b);

    bool is_hermitian(double tol = 1e-12) const;
    bool is_diagonal() const;

    /// Exact commutation test: canonicalizes [a,b] and checks it vanishes.
    /// Fast path: if every pair of words commutes, so does the sum.
    friend bool commutes(const PauliSum& a, const PauliSum& b);

    friend bool approx_equal(const PauliSum& a, const PauliSum& b, double tol);

    /// Rendering like "+0.5 · X0 Z1 Y3" (one line per term).
    std::string str() const;

  private:
    void canonicalize();

    int n_qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

/// Do two Pauli words commute? (anticommutation parity of the masks)
inline bool words_commute(const PauliTerm& a, const PauliTerm& b) {
    auto par = [](std::uint64_t m) { return __builtin_popcountll(m) & 1; };
    return (par(a.x & b.z) ^ par(a.z & b.x)) == 0;
}

std::string term_str(const PauliTerm& t);

}  // namespace shellvqe
