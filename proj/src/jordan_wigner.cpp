#include "shellvqe/jordan_wigner.hpp"

#include <algorithm>
#include <stdexcept>

namespace shellvqe {

PauliSum jw_ladder(int n_qubits, int mode, bool dagger) {
    if (mode < 0 || mode >= n_qubits) throw std::invalid_argument("jw_ladder: mode out of range");
    std::uint64_t zstring = (mode > 0) ? ((1ull << mode) - 1) : 0;
    std::uint64_t site = 1ull << mode;
    // a† = Zstring·(X − iY)/2, a = Zstring·(X + iY)/2.
    PauliTerm tx{cplx{0.5, 0.0}, site, zstring};
    PauliTerm ty{cplx{0.0, dagger ? -0.5 : 0.5}, site, zstring | site};
    return PauliSum(n_qubits, {tx, ty});
}

PauliSum jw_product(int n_qubits, const std::vector<std::pair<int, bool>>& factors) {
    PauliSum acc = PauliSum::identity(n_qubits);
    for (const auto& [mode, dagger] : factors) acc = acc * jw_ladder(n_qubits, mode, dagger);
    return acc;
}

PauliSum jw_number(int n_qubits, int p) {
    return jw_product(n_qubits, {{p, true}, {p, false}});
}

PauliSum jw_single_hop(int n_qubits, int p, int q) {
    return jw_product(n_qubits, {{p, true}, {q, false}}) +
           jw_product(n_qubits, {{q, true}, {p, false}});
}

PauliSum jw_single_pool(int n_qubits, int p, int q) {
    PauliSum s = jw_product(n_qubits, {{p, true}, {q, false}}) -
                 jw_product(n_qubits, {{q, true}, {p, false}});
    return s * cplx{0.0, 1.0};
}

PauliSum jw_double_hop(int n_qubits, int p, int q, int r, int s) {
    return jw_product(n_qubits, {{p, true}, {q, true}, {r, false}, {s, false}}) +
           jw_product(n_qubits, {{r, true}, {s, true}, {p, false}, {q, false}});
}

PauliSum jw_pool_op(int n_qubits, int p, int q, int r, int s) {
    PauliSum t = jw_product(n_qubits, {{p, true}, {q, true}, {r, false}, {s, false}}) -
                 jw_product(n_qubits, {{r, true}, {s, true}, {p, false}, {q, false}});
    return t * cplx{0.0, 1.0};
}

int string_length(int p, int q, int r, int s) {
    std::array<int, 4> n{p, q, r, s};
    std::sort(n.begin(), n.end());
    return n[1] + n[3] - n[0] - n[2] + 2;
}

}  // namespace shellvqe
