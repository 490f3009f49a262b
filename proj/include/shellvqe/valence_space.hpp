#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace shellvqe {

/// One n l_j orbital of the configuration space.
struct Orbital {
    int n = 0;    // principal quantum number
    int l = 0;    // orbital angular momentum
    int j2 = 1;   // 2j (odd)
    std::string label;  // e.g. "0d5/2"

    int degeneracy() const { return j2 + 1; }
};

std::string make_orbital_label(int n, int l, int j2);

/// A single-particle state: orbital + projections + its qubit index.
struct SpState {
    int orbital = 0;  // index into ValenceSpace::orbitals
    int m2 = 0;       // 2m
    int tz2 = 0;      // 2t_z: +1 neutron, -1 proton
    int qubit = 0;
};

enum class Species { Neutrons, Protons, Both };

Species species_from_string(const std::string& s);
std::string species_to_string(Species s);

/// Occupation-number representation of a Slater determinant.  State q sits
/// at bit (n_qubits-1-q) so the packed integer coincides with the index of
/// the corresponding computational-basis ket |b0 b1 ... b_{N-1}⟩.
struct SlaterDet {
    std::uint64_t occ = 0;

    bool operator==(const SlaterDet&) const = default;
    auto operator<=>(const SlaterDet&) const = default;
};

inline std::uint64_t det_bit(int n_qubits, int q) {
    return 1ull << (n_qubits - 1 - q);
}
inline bool det_occupied(const SlaterDet& d, int n_qubits, int q) {
    return d.occ & det_bit(n_qubits, q);
}
std::string det_string(const SlaterDet& d, int n_qubits);
SlaterDet det_from_string(const std::string& bits);

/// A shell-model configuration space: ordered single-particle states with
/// their qubit labels.  Neutron states occupy the low qubit indices, proton
/// states follow; within a species orbitals are laid out lowest-energy
/// first with m ascending.
struct ValenceSpace {
    std::string name;  // "p", "sd", "pf" or custom
    Species species = Species::Neutrons;
    std::vector<Orbital> orbitals;  // per species block layout
    std::vector<SpState> states;    // qubit q == states[q].qubit == q

    int n_qubits() const { return static_cast<int>(states.size()); }
    int dim_sp() const;  // per-species single-particle dimension, Σ(2j+1)
    int m2_of(int q) const { return states[q].m2; }
    int tz2_of(int q) const { return states[q].tz2; }
    std::string state_label(int q) const;
};

/// Build one of the hard-coded spaces {p, sd, pf}.  Throws
/// std::invalid_argument for unknown shell names.
ValenceSpace build_valence_space(const std::string& name, Species species);

/// Build a space from a custom orbital list (one orbital per line:
/// "n l 2j", '#' comments), ordered as given in the file.
ValenceSpace build_custom_space(const std::string& name,
                                const std::vector<Orbital>& orbitals,
                                Species species);

/// dim_mb = C(dim_sp, n_ci) * C(dim_sp, z_ci)  (Eq.-level combinatorics).
/// Throws std::domain_error when counts are out of range.
std::uint64_t dim_mb(const ValenceSpace& space, int n_ci, int z_ci);

std::uint64_t binomial(int n, int k);

/// All Slater determinants with the given particle counts per species and
/// Σ 2m = M2, in ascending order of the packed occupation integer.
std::vector<SlaterDet> enumerate_m_basis(const ValenceSpace& space, int n_ci,
                                         int z_ci, int M2);

/// Σ 2m over occupied states.
int det_M2(const ValenceSpace& space, const SlaterDet& d);
/// Σ 2t_z over occupied states.
int det_Tz2(const ValenceSpace& space, const SlaterDet& d);

}  // namespace shellvqe
