#pragma once

#include <array>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "shellvqe/interaction.hpp"
#include "shellvqe/valence_space.hpp"

namespace shellvqe {

/// The decoupled effective Hamiltonian: single-particle energies per state
/// plus antisymmetrized m-scheme elements v̄_ijkl stored for i<j, k<l (all
/// (ij,kl) orderings kept so lookups are direct).
class MSchemeHamiltonian {
  public:
    MSchemeHamiltonian() = default;
    MSchemeHamiltonian(const ValenceSpace* space, std::vector<double> spe);

    const ValenceSpace& space() const { return *space_; }
    int n_modes() const { return static_cast<int>(spe_.size()); }
    const std::vector<double>& spe() const { return spe_; }

    /// v̄_ijkl for arbitrary index order (antisymmetry applied on lookup).
    double vbar(int i, int j, int k, int l) const;
    void set_vbar(int i, int j, int k, int l, double v);  // canonical i<j,k<l

    /// Canonically stored nonzero elements (i<j, k<l).
    struct Element {
        int i, j, k, l;
        double v;
    };
    std::vector<Element> elements() const;

  private:
    static std::uint64_t key(int i, int j, int k, int l) {
        return (std::uint64_t(i) << 24) | (std::uint64_t(j) << 16) |
               (std::uint64_t(k) << 8) | std::uint64_t(l);
    }
    const ValenceSpace* space_ = nullptr;
    std::vector<double> spe_;
    std::unordered_map<std::uint64_t, double> vbar_;
};

/// Angular-momentum + isospin decoupling of coupled (J,T) elements into the
/// m-scheme.  Elements conserve Σ2m and Σ2t_z by construction; hermiticity
/// and antisymmetry hold to 1e-12 and |v̄| < 1e-12 MeV is dropped.
MSchemeHamiltonian decouple_to_mscheme(const Interaction& in, const ValenceSpace& space);

/// ⟨det|H|det⟩ = Σ_occ ε_i + Σ_{i<j occ} v̄_ijij.
double diagonal_energy(const MSchemeHamiltonian& h, const SlaterDet& det);

/// argmin of diagonal_energy over the basis; ties resolved toward the
/// smallest packed occupation value.
SlaterDet lowest_reference(const MSchemeHamiltonian& h, const std::vector<SlaterDet>& basis);

/// The Hamiltonian regrouped into the measured primitives:
///   H = Σ ε_i n_i + Σ_{i<j} w_ij n_i n_j + Σ_t c_t · h(p,q,r,s)
/// with h(p,q,r,s) = a†_p a†_q a_r a_s + a†_r a†_s a_p a_q, pair-of-pairs
/// canonical ((p,q) < (r,s)), split by how many indices the pairs share.
struct TwoBodyTerm {
    std::array<int, 4> idx;  // p<q, r<s
    double coeff;
};

struct HamiltonianTerms {
    int n_modes = 0;
    std::vector<double> spe;
    std::vector<std::pair<std::array<int, 2>, double>> nn;  // (i<j) -> w_ij
    std::vector<TwoBodyTerm> hop3;  // pairs sharing exactly one index
    std::vector<TwoBodyTerm> hop4;  // all four indices distinct
};

HamiltonianTerms collect_terms(const MSchemeHamiltonian& h);

}  // namespace shellvqe
