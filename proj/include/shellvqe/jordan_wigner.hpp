#pragma once

#include <array>

#include "shellvqe/pauli.hpp"

namespace shellvqe {

/// Jordan-Wigner images of the fermionic operators used by the Hamiltonian
/// and the excitation pool.  Mode q maps onto qubit q with
///   a†_q = (∏_{k<q} Z_k) σ⁻_q ,   a_q = (∏_{k<q} Z_k) σ⁺_q ,
/// σ± = (X ± iY)/2, so |1⟩ marks an occupied mode.

/// JW image of a single creation (dagger=true) or annihilation operator.
PauliSum jw_ladder(int n_qubits, int mode, bool dagger);

/// JW image of an arbitrary product of ladder operators, leftmost applied
/// last.  Each factor is (mode, dagger).
PauliSum jw_product(int n_qubits, const std::vector<std::pair<int, bool>>& factors);

/// n_p = a†_p a_p  →  (1 − Z_p)/2
PauliSum jw_number(int n_qubits, int p);

/// h_pq = a†_p a_q + a†_q a_p  (single hop)
PauliSum jw_single_hop(int n_qubits, int p, int q);

/// T_pq = i(a†_p a_q − a†_q a_p)
PauliSum jw_single_pool(int n_qubits, int p, int q);

/// h_pqrs = a†_p a†_q a_r a_s + a†_r a†_s a_p a_q.  Repeated-index patterns
/// come out of the same algebra: h_pqpr = −n_p h_qr and h_pqpq = −2 n_p n_q.
PauliSum jw_double_hop(int n_qubits, int p, int q, int r, int s);

/// T_rs^pq = i(a†_p a†_q a_r a_s − a†_r a†_s a_p a_q); T_pq^pq = 0 and
/// T_pq^pr = n_p T_qr fall out of the algebra.
PauliSum jw_pool_op(int n_qubits, int p, int q, int r, int s);

/// Pauli-string length L = n2 + n4 − n1 − n3 + 2 for sorted indices
/// (n1,n2,n3,n4); every one of the 8 strings of h_pqrs / T_rs^pq has
/// exactly this support size.
int string_length(int p, int q, int r, int s);

}  // namespace shellvqe
