#include "shellvqe/pauli.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace shellvqe {

namespace {
constexpr double kPruneTol = 1e-14;

cplx ipow(int k) {
    static const cplx table[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}
}  // namespace

PauliTerm mul(const PauliTerm& a, const PauliTerm& b) {
    PauliTerm out;
    out.x = a.x ^ b.x;
    out.z = a.z ^ b.z;
    // i-exponents from the canonical Y = iXZ bookkeeping plus the
    // anticommutation sign of moving b's X-part past a's Z-part.
    int k = std::popcount(a.x & a.z) + std::popcount(b.x & b.z) -
            std::popcount(out.x & out.z);
    int sign = std::popcount(a.z & b.x) & 1;
    out.coeff = a.coeff * b.coeff * ipow(k) * (sign ? -1.0 : 1.0);
    return out;
}

PauliSum::PauliSum(int n_qubits, std::vector<PauliTerm> terms)
    : n_qubits_(n_qubits), terms_(std::move(terms)) {
    canonicalize();
}

PauliSum PauliSum::identity(int n_qubits, cplx c) {
    PauliSum s(n_qubits);
    if (std::abs(c) > kPruneTol) s.terms_.push_back({c, 0, 0});
    return s;
}

void PauliSum::canonicalize() {
    std::sort(terms_.begin(), terms_.end(), [](const PauliTerm& a, const PauliTerm& b) {
        return a.z != b.z ? a.z < b.z : a.x < b.x;
    });
    std::vector<PauliTerm> merged;
    merged.reserve(terms_.size());
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().x == t.x && merged.back().z == t.z) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    terms_.clear();
    for (const auto& t : merged)
        if (std::abs(t.coeff) > kPruneTol) terms_.push_back(t);
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
    if (n_qubits_ == 0) n_qubits_ = other.n_qubits_;
    terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
    canonicalize();
    return *this;
}

PauliSum& PauliSum::operator-=(const PauliSum& other) {
    PauliSum neg = other;
    neg *= cplx{-1.0, 0.0};
    return *this += neg;
}

PauliSum& PauliSum::operator*=(cplx scalar) {
    if (std::abs(scalar) <= kPruneTol) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= scalar;
    return *this;
}

PauliSum operator*(const PauliSum& a, const PauliSum& b) {
    std::vector<PauliTerm> prod;
    prod.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& ta : a.terms_)
        for (const auto& tb : b.terms_) prod.push_back(mul(ta, tb));
    return PauliSum(std::max(a.n_qubits_, b.n_qubits_), std::move(prod));
}

bool PauliSum::is_hermitian(double tol) const {
    // Canonical words are hermitian, so hermiticity == real coefficients.
    for (const auto& t : terms_)
        if (std::abs(t.coeff.imag()) > tol) return false;
    return true;
}

bool PauliSum::is_diagonal() const {
    for (const auto& t : terms_)
        if (t.x != 0) return false;
    return true;
}

bool commutes(const PauliSum& a, const PauliSum& b) {
    bool all_pairs = true;
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            if (!words_commute(ta, tb)) {
                all_pairs = false;
                break;
            }
        }
        if (!all_pairs) break;
    }
    if (all_pairs) return true;
    PauliSum comm = a * b - b * a;
    return comm.empty();
}

bool approx_equal(const PauliSum& a, const PauliSum& b, double tol) {
    PauliSum d = a - b;
    for (const auto& t : d.terms())
        if (std::abs(t.coeff) > tol) return false;
    return true;
}

std::string term_str(const PauliTerm& t) {
    std::ostringstream os;
    double re = t.coeff.real(), im = t.coeff.imag();
    os.precision(12);
    if (std::abs(im) < 1e-14) {
        os << (re >= 0 ? "+" : "") << re;
    } else {
        os << "(" << re << (im >= 0 ? "+" : "") << im << "i)";
    }
    os << " ·";
    std::uint64_t sup = t.support();
    if (!sup) os << " I";
    for (int q = 0; q < 64; ++q) {
        std::uint64_t m = 1ull << q;
        if (!(sup & m)) continue;
        bool xs = t.x & m, zs = t.z & m;
        os << ' ' << (xs && zs ? 'Y' : (xs ? 'X' : 'Z')) << q;
    }
    return os.str();
}

std::string PauliSum::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) os << '\n';
        os << term_str(terms_[i]);
    }
    return os.str();
}

}  // namespace shellvqe
