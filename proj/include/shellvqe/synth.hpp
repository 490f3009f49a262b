#pragma once

#include <array>
#include <optional>
#include <vector>

#include "shellvqe/circuit.hpp"
#include "shellvqe/mscheme.hpp"
#include "shellvqe/pauli.hpp"
#include "shellvqe/valence_space.hpp"

namespace shellvqe {

/// Conjugate a Pauli word/sum through a circuit restricted to the Clifford
/// subset {X, H, RX(±π/2), CNOT}: the result is the operator measured on the
/// transformed state, P ↦ U P U†.  Throws std::invalid_argument for
/// non-Clifford gates.
PauliTerm conjugate_word(PauliTerm t, const Gate& g);
PauliSum conjugate_through(const PauliSum& p, const Circuit& c);

enum class Connectivity { AllToAll, Linear };
Connectivity connectivity_from_string(const std::string& s);

/// One X gate per occupied qubit; depth 1, zero CNOTs.
Circuit prepare_reference(int n_qubits, const SlaterDet& det);

/// Circuit for e^{iθ T^{pq}_{rs}} (or the three-index reduction n_p T_qr),
/// exact (the 4/8 strings commute, so no Trotter splitting is involved).
struct SynthesizedLayer {
    Circuit circuit;
    int staircase_cnots = 0;  // CNOTs in the Pauli-exponential blocks
    int routing_fswaps = 0;   // FSWAP prologue+epilogue (linear connectivity)
};
SynthesizedLayer synthesize_exponential(int n_qubits, std::array<int, 4> op, double theta,
                                        Connectivity conn = Connectivity::AllToAll);

/// A basis-change circuit together with the diagonal images of the terms it
/// measures.  estimate(): Σ_z p(z)·eig(z) with eig read off the diagonal
/// Pauli sums.
struct ReadoutRule {
    std::array<int, 4> term;  // h(p,q,r,s) index tuple ({i,i,j,k} for hop3)
    PauliSum diagonal;        // conjugated term, pure Z
};

struct MeasurementCircuit {
    Circuit basis_change;
    std::vector<ReadoutRule> rules;
};

/// M_jk = CX_kj H_k CX_kj measuring h(p,q,r,s) with shared index i and hop
/// (j,k); the n_i factor reads out directly on qubit i.
MeasurementCircuit measurement_basis_single_hop(int n_qubits, int i, int j, int k);

/// M_ijkl = CX_ij CX_ki CX_lk H_l CX_lk CX_ki CX_ij for the four-index term.
MeasurementCircuit measurement_basis_double_hop(int n_qubits, int i, int j, int k, int l);

/// Greedy partition of four-index terms into simultaneously measurable
/// groups: supports must be disjoint, the full JW images must commute, and
/// the synthesized circuit must diagonalize every member (odd Z-overlaps get
/// an entangled two-qubit core instead of a plain H).
std::vector<MeasurementCircuit> group_commuting_terms(
    int n_qubits, const std::vector<std::array<int, 4>>& terms);

/// Basis change diagonalizing the product h_ijkl·T^{pq}_{rs} for gradient
/// measurements (eight distinct indices).
MeasurementCircuit gradient_measurement_circuit(int n_qubits, std::array<int, 4> h_idx,
                                                std::array<int, 4> t_idx);

/// Interaction-independent circuit counting for a valence space (single-hop
/// pairs, symmetry-allowed four-index terms, greedy grouping).
struct CircuitCounts {
    int n_qubits = 0;
    int n_h = 0;         // single-hop circuits
    int n_hh = 0;        // ungrouped double-hop circuits
    int n_hh_grouped = 0;
    int n_tot = 0;          // n_h + n_hh + 1
    int n_tot_grouped = 0;  // n_h + n_hh_grouped + 1
};
CircuitCounts count_measurement_circuits(const ValenceSpace& space);

/// Symmetry-allowed hopping pairs (j<k with equal m and t_z).
std::vector<std::array<int, 2>> symmetry_allowed_hops(const ValenceSpace& space);
/// Symmetry-allowed four-index pair-of-pairs (canonical, all distinct).
std::vector<std::array<int, 4>> symmetry_allowed_double_hops(const ValenceSpace& space);

/// JW image of the measured primitive h(p,q,r,s) (hop3/hop4 tuples).
PauliSum term_pauli(int n_qubits, const std::array<int, 4>& term);

/// Full set of measurement circuits covering a Hamiltonian exactly once:
/// circuit 0 is the diagonal one (ε_i and n_i n_j weights fold in at
/// estimation time), then one per hop pair, then grouped double hops.
std::vector<MeasurementCircuit> hamiltonian_measurement_circuits(const HamiltonianTerms& terms,
                                                                 bool grouped = true);

}  // namespace shellvqe
