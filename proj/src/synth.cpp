#include "shellvqe/synth.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "shellvqe/jordan_wigner.hpp"

namespace shellvqe {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_plus_half_pi(double a) { return std::abs(a - kPi / 2) < 1e-12; }
bool is_minus_half_pi(double a) { return std::abs(a + kPi / 2) < 1e-12; }
}  // namespace

PauliTerm conjugate_word(PauliTerm t, const Gate& g) {
    const std::uint64_t m0 = 1ull << g.q0;
    switch (g.kind) {
        case GateKind::X: {
            if (t.z & m0) t.coeff = -t.coeff;
            return t;
        }
        case GateKind::H: {
            bool xs = t.x & m0, zs = t.z & m0;
            if (xs && zs) t.coeff = -t.coeff;  // Y -> -Y
            if (xs != zs) {
                t.x ^= m0;
                t.z ^= m0;
            }
            return t;
        }
        case GateKind::RX: {
            bool xs = t.x & m0, zs = t.z & m0;
            if (is_plus_half_pi(g.angle)) {
                // Y -> Z, Z -> -Y
                if (xs && zs) {
                    t.x ^= m0;
                } else if (!xs && zs) {
                    t.x |= m0;
                    t.coeff = -t.coeff;
                }
                return t;
            }
            if (is_minus_half_pi(g.angle)) {
                // Y -> -Z, Z -> Y
                if (xs && zs) {
                    t.x ^= m0;
                    t.coeff = -t.coeff;
                } else if (!xs && zs) {
                    t.x |= m0;
                }
                return t;
            }
            throw std::invalid_argument("conjugation supports RX(±π/2) only");
        }
        case GateKind::CNOT: {
            const std::uint64_t m1 = 1ull << g.q1;
            bool xc = t.x & m0, zc = t.z & m0, xt = t.x & m1, zt = t.z & m1;
            if (xc && zt && !(xt ^ zc)) t.coeff = -t.coeff;
            if (xc) t.x ^= m1;
            if (zt) t.z ^= m0;
            return t;
        }
        default:
            throw std::invalid_argument("conjugation supports {X,H,RX(±π/2),CNOT} gates");
    }
}

PauliSum conjugate_through(const PauliSum& p, const Circuit& c) {
    std::vector<PauliTerm> out(p.terms().begin(), p.terms().end());
    for (auto& t : out)
        for (const auto& g : c.gates()) t = conjugate_word(t, g);
    return PauliSum(std::max(p.n_qubits(), c.n_qubits()), std::move(out));
}

Connectivity connectivity_from_string(const std::string& s) {
    if (s == "all" || s == "all-to-all") return Connectivity::AllToAll;
    if (s == "linear") return Connectivity::Linear;
    throw std::invalid_argument("connectivity must be all|linear");
}

Circuit prepare_reference(int n_qubits, const SlaterDet& det) {
    Circuit c(n_qubits);
    for (int q = 0; q < n_qubits; ++q)
        if (det_occupied(det, n_qubits, q)) c.push(Gate::x(q));
    return c;
}

namespace {
/// Adjacent-FSWAP routing plan: gather the distinct op indices into a
/// contiguous block around the second-lowest index.  Returns the prologue
/// swaps (pairs of adjacent mode labels) and the mode permutation new[pos].
struct RoutePlan {
    std::vector<std::pair<int, int>> swaps;  // (k,k+1) position swaps, in order
    std::vector<int> perm;                   // perm[old mode] = new position
};

RoutePlan plan_route(int n_qubits, std::vector<int> idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    RoutePlan plan;
    plan.perm.resize(n_qubits);
    std::vector<int> at(n_qubits);  // at[position] = mode currently there
    std::iota(at.begin(), at.end(), 0);
    auto pos_of = [&](int mode) {
        return static_cast<int>(std::find(at.begin(), at.end(), mode) - at.begin());
    };
    auto move_to = [&](int mode, int target) {
        int p = pos_of(mode);
        while (p > target) {
            plan.swaps.push_back({p - 1, p});
            std::swap(at[p - 1], at[p]);
            --p;
        }
        while (p < target) {
            plan.swaps.push_back({p, p + 1});
            std::swap(at[p], at[p + 1]);
            ++p;
        }
    };
    if (idx.size() >= 2) {
        int anchor = idx[1];  // second-lowest stays, neighbors gather
        move_to(idx[0], anchor - 1);
        for (std::size_t t = 2; t < idx.size(); ++t) move_to(idx[t], anchor + static_cast<int>(t) - 1);
    }
    for (int pos = 0; pos < n_qubits; ++pos) plan.perm[at[pos]] = pos;
    return plan;
}

/// Staircase block for e^{i·phase·S}: basis changes, CNOT cascade over the
/// support (ascending), RZ(-2·phase) on the top qubit, then the inverse.
void emit_staircase(Circuit& c, const PauliTerm& word, double phase, int* cnots) {
    std::vector<int> support, xq, yq;
    for (int q = 0; q < c.n_qubits(); ++q) {
        std::uint64_t m = 1ull << q;
        if (!(word.support() & m)) continue;
        support.push_back(q);
        bool xs = word.x & m, zs = word.z & m;
        if (xs && zs)
            yq.push_back(q);
        else if (xs)
            xq.push_back(q);
    }
    if (support.empty()) return;
    for (int q : xq) c.push(Gate::h(q));
    for (int q : yq) c.push(Gate::rx(q, kPi / 2));
    for (std::size_t t = 0; t + 1 < support.size(); ++t) c.push(Gate::cnot(support[t], support[t + 1]));
    c.push(Gate::rz(support.back(), -2.0 * phase));
    for (std::size_t t = support.size() - 1; t >= 1; --t) c.push(Gate::cnot(support[t - 1], support[t]));
    for (int q : yq) c.push(Gate::rx(q, -kPi / 2));
    for (int q : xq) c.push(Gate::h(q));
    if (cnots) *cnots += 2 * (static_cast<int>(support.size()) - 1);
}

/// Pool generator for a canonical tuple; pairs may arrive unsorted, each
/// in-pair swap flips the sign of θ.
PauliSum pool_pauli(int n_qubits, std::array<int, 4> op, double* theta_sign) {
    *theta_sign = 1.0;
    if (op[0] > op[1]) {
        std::swap(op[0], op[1]);
        *theta_sign = -*theta_sign;
    }
    if (op[2] > op[3]) {
        std::swap(op[2], op[3]);
        *theta_sign = -*theta_sign;
    }
    return jw_pool_op(n_qubits, op[0], op[1], op[2], op[3]);
}
}  // namespace

SynthesizedLayer synthesize_exponential(int n_qubits, std::array<int, 4> op, double theta,
                                        Connectivity conn) {
    SynthesizedLayer out;
    out.circuit = Circuit(n_qubits);

    std::vector<int> distinct(op.begin(), op.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    RoutePlan plan;
    std::array<int, 4> mapped = op;
    if (conn == Connectivity::Linear) {
        plan = plan_route(n_qubits, distinct);
        for (auto& q : mapped) q = plan.perm[q];
        for (const auto& [a, b] : plan.swaps) out.circuit.push(Gate::fswap(a, b));
        out.routing_fswaps += static_cast<int>(plan.swaps.size());
    }

    double sgn = 1.0;
    PauliSum gen = pool_pauli(n_qubits, mapped, &sgn);
    const double th = sgn * theta;
    for (const auto& word : gen.terms()) {
        if (std::abs(word.coeff.imag()) > 1e-12)
            throw std::logic_error("pool generator must have real coefficients");
        emit_staircase(out.circuit, word, th * word.coeff.real(), &out.staircase_cnots);
    }

    if (conn == Connectivity::Linear) {
        for (auto it = plan.swaps.rbegin(); it != plan.swaps.rend(); ++it)
            out.circuit.push(Gate::fswap(it->first, it->second));
        out.routing_fswaps += static_cast<int>(plan.swaps.size());
    }
    return out;
}

PauliSum term_pauli(int n_qubits, const std::array<int, 4>& term) {
    return jw_double_hop(n_qubits, term[0], term[1], term[2], term[3]);
}

namespace {
/// CNOT cascade of the paper's M_ijkl (first half, before the core gate).
void emit_cascade(Circuit& c, const std::array<int, 4>& t) {
    c.push(Gate::cnot(t[0], t[1]));
    c.push(Gate::cnot(t[2], t[0]));
    c.push(Gate::cnot(t[3], t[2]));
}
void emit_cascade_reversed(Circuit& c, const std::array<int, 4>& t) {
    c.push(Gate::cnot(t[3], t[2]));
    c.push(Gate::cnot(t[2], t[0]));
    c.push(Gate::cnot(t[0], t[1]));
}

/// Designated qubit of a cascaded term: the common single X position of the
/// residual words (-1 when the structure does not hold).
int designated_qubit(const PauliSum& residual) {
    std::uint64_t common = 0;
    bool first = true;
    for (const auto& w : residual.terms()) {
        if (w.x == 0) continue;  // pure-Z component is fine
        if (std::popcount(w.x) != 1) return -1;
        if (first) {
            common = w.x;
            first = false;
        } else if (w.x != common) {
            return -1;
        }
    }
    if (first) return -1;
    return std::countr_zero(common);
}

struct GroupBuild {
    Circuit circuit;
    std::vector<PauliSum> diagonals;
    bool ok = false;
};

/// Cascades + cores + inverse cascades for a set of four-index terms with
/// pairwise disjoint supports.  Cores: H on a free designated qubit; for a
/// pair of terms whose residual Z-strings land on each other's designated
/// qubit, the entangled core H(d_s) CX(d_t,d_s) H(d_t).
GroupBuild build_group_circuit(int n_qubits, const std::vector<std::array<int, 4>>& terms) {
    GroupBuild out;
    out.circuit = Circuit(n_qubits);
    Circuit cascades(n_qubits);
    for (const auto& t : terms) emit_cascade(cascades, t);

    std::vector<PauliSum> residuals;
    std::vector<int> desig;
    for (const auto& t : terms) {
        PauliSum r = conjugate_through(term_pauli(n_qubits, t), cascades);
        int d = designated_qubit(r);
        if (d < 0) return out;
        residuals.push_back(std::move(r));
        desig.push_back(d);
    }
    // conflict(t,s): term t's residual carries Z on d_s
    const int nt = static_cast<int>(terms.size());
    std::vector<int> partner(nt, -1);
    for (int t = 0; t < nt; ++t) {
        for (int s = 0; s < nt; ++s) {
            if (s == t) continue;
            bool hits = false;
            for (const auto& w : residuals[t].terms())
                if (w.z >> desig[s] & 1) hits = true;
            if (!hits) continue;
            if (partner[t] != -1 && partner[t] != s) return out;  // chain: not supported
            partner[t] = s;
        }
    }
    Circuit cores(n_qubits);
    std::vector<bool> done(nt, false);
    for (int t = 0; t < nt; ++t) {
        if (done[t]) continue;
        if (partner[t] == -1) {
            cores.push(Gate::h(desig[t]));
            done[t] = true;
        } else {
            int s = partner[t];
            if (partner[s] != t) return out;  // asymmetric: not supported
            cores.push(Gate::h(desig[s]));
            cores.push(Gate::cnot(desig[t], desig[s]));
            cores.push(Gate::h(desig[t]));
            done[t] = done[s] = true;
        }
    }

    out.circuit.append(cascades);
    out.circuit.append(cores);
    for (auto it = terms.rbegin(); it != terms.rend(); ++it)
        emit_cascade_reversed(out.circuit, *it);

    for (const auto& t : terms) {
        PauliSum d = conjugate_through(term_pauli(n_qubits, t), out.circuit);
        if (!d.is_diagonal()) return out;
        out.diagonals.push_back(std::move(d));
    }
    out.ok = true;
    return out;
}
}  // namespace

MeasurementCircuit measurement_basis_single_hop(int n_qubits, int i, int j, int k) {
    if (!(j < k)) throw std::invalid_argument("hop indices must satisfy j < k");
    MeasurementCircuit mc;
    mc.basis_change = Circuit(n_qubits);
    mc.basis_change.push(Gate::cnot(k, j));
    mc.basis_change.push(Gate::h(k));
    mc.basis_change.push(Gate::cnot(k, j));
    // canonical h(p,q,r,s) with shared index i and hop (j,k)
    std::array<int, 4> t{std::min(i, j), std::max(i, j), std::min(i, k), std::max(i, k)};
    PauliSum diag = conjugate_through(term_pauli(n_qubits, t), mc.basis_change);
    if (!diag.is_diagonal()) throw std::logic_error("M_jk failed to diagonalize h_ijik");
    mc.rules.push_back({t, std::move(diag)});
    return mc;
}

MeasurementCircuit measurement_basis_double_hop(int n_qubits, int i, int j, int k, int l) {
    if (!(i < j && k < l)) throw std::invalid_argument("pairs must satisfy i<j, k<l");
    auto build = build_group_circuit(n_qubits, {{i, j, k, l}});
    if (!build.ok) throw std::logic_error("M_ijkl failed to diagonalize h_ijkl");
    MeasurementCircuit mc;
    mc.basis_change = std::move(build.circuit);
    mc.rules.push_back({{i, j, k, l}, std::move(build.diagonals[0])});
    return mc;
}

std::vector<MeasurementCircuit> group_commuting_terms(
    int n_qubits, const std::vector<std::array<int, 4>>& terms) {
    // deterministic greedy: largest string support first, then lexicographic
    std::vector<std::array<int, 4>> order(terms);
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        int la = string_length(a[0], a[1], a[2], a[3]);
        int lb = string_length(b[0], b[1], b[2], b[3]);
        return la != lb ? la > lb : a < b;
    });

    struct Group {
        std::vector<std::array<int, 4>> members;
        std::uint64_t support = 0;
        std::vector<PauliSum> paulis;
    };
    std::vector<Group> groups;
    for (const auto& t : order) {
        std::uint64_t sup = (1ull << t[0]) | (1ull << t[1]) | (1ull << t[2]) | (1ull << t[3]);
        PauliSum tp = term_pauli(n_qubits, t);
        bool placed = false;
        for (auto& g : groups) {
            if (g.support & sup) continue;
            bool comm = true;
            for (const auto& p : g.paulis)
                if (!commutes(p, tp)) {
                    comm = false;
                    break;
                }
            if (!comm) continue;
            auto trial = g.members;
            trial.push_back(t);
            if (!build_group_circuit(n_qubits, trial).ok) continue;
            g.members = std::move(trial);
            g.support |= sup;
            g.paulis.push_back(std::move(tp));
            placed = true;
            break;
        }
        if (!placed) groups.push_back({{t}, sup, {std::move(tp)}});
    }

    std::vector<MeasurementCircuit> out;
    for (const auto& g : groups) {
        auto build = build_group_circuit(n_qubits, g.members);
        if (!build.ok) throw std::logic_error("grouped circuit lost diagonality");
        MeasurementCircuit mc;
        mc.basis_change = std::move(build.circuit);
        for (std::size_t m = 0; m < g.members.size(); ++m)
            mc.rules.push_back({g.members[m], std::move(build.diagonals[m])});
        out.push_back(std::move(mc));
    }
    return out;
}

MeasurementCircuit gradient_measurement_circuit(int n_qubits, std::array<int, 4> h_idx,
                                                std::array<int, 4> t_idx) {
    for (int a : h_idx)
        for (int b : t_idx)
            if (a == b)
                throw std::invalid_argument(
                    "gradient circuit expects eight distinct indices (reduce shared-index "
                    "products first)");
    MeasurementCircuit mc;
    mc.basis_change = Circuit(n_qubits);
    emit_cascade(mc.basis_change, h_idx);
    emit_cascade(mc.basis_change, t_idx);
    // residuals: X on the h side, Y on the pool side
    PauliSum hres = conjugate_through(term_pauli(n_qubits, h_idx), mc.basis_change);
    double sgn = 1.0;
    PauliSum tgen = pool_pauli(n_qubits, t_idx, &sgn);
    PauliSum tres = conjugate_through(tgen * cplx(sgn, 0), mc.basis_change);
    int dh = designated_qubit(hres), dt = designated_qubit(tres);
    if (dh < 0 || dt < 0) throw std::logic_error("gradient cascade lost the two-level form");
    mc.basis_change.push(Gate::h(dh));
    mc.basis_change.push(Gate::rx(dt, kPi / 2));
    emit_cascade_reversed(mc.basis_change, t_idx);
    emit_cascade_reversed(mc.basis_change, h_idx);

    PauliSum hT = term_pauli(n_qubits, h_idx) * (tgen * cplx(sgn, 0));
    PauliSum diag = conjugate_through(hT, mc.basis_change);
    if (!diag.is_diagonal()) throw std::logic_error("gradient circuit failed to diagonalize h·T");
    mc.rules.push_back({h_idx, std::move(diag)});
    return mc;
}

std::vector<std::array<int, 2>> symmetry_allowed_hops(const ValenceSpace& space) {
    std::vector<std::array<int, 2>> hops;
    const int n = space.n_qubits();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k)
            if (space.states[j].m2 == space.states[k].m2 &&
                space.states[j].tz2 == space.states[k].tz2)
                hops.push_back({j, k});
    return hops;
}

std::vector<std::array<int, 4>> symmetry_allowed_double_hops(const ValenceSpace& space) {
    std::vector<std::array<int, 4>> out;
    const int n = space.n_qubits();
    std::vector<std::array<int, 2>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = a + 1; b < pairs.size(); ++b) {
            const auto& p = pairs[a];
            const auto& q = pairs[b];
            if (p[0] == q[0] || p[0] == q[1] || p[1] == q[0] || p[1] == q[1]) continue;
            if (space.states[p[0]].m2 + space.states[p[1]].m2 !=
                space.states[q[0]].m2 + space.states[q[1]].m2)
                continue;
            if (space.states[p[0]].tz2 + space.states[p[1]].tz2 !=
                space.states[q[0]].tz2 + space.states[q[1]].tz2)
                continue;
            out.push_back({p[0], p[1], q[0], q[1]});
        }
    }
    return out;
}

CircuitCounts count_measurement_circuits(const ValenceSpace& space) {
    CircuitCounts c;
    c.n_qubits = space.n_qubits();
    c.n_h = static_cast<int>(symmetry_allowed_hops(space).size());
    auto dh = symmetry_allowed_double_hops(space);
    c.n_hh = static_cast<int>(dh.size());
    c.n_hh_grouped = static_cast<int>(group_commuting_terms(space.n_qubits(), dh).size());
    c.n_tot = c.n_h + c.n_hh + 1;
    c.n_tot_grouped = c.n_h + c.n_hh_grouped + 1;
    return c;
}

std::vector<MeasurementCircuit> hamiltonian_measurement_circuits(const HamiltonianTerms& terms,
                                                                 bool grouped) {
    const int n = terms.n_modes;
    std::vector<MeasurementCircuit> out;

    // diagonal circuit: n_i and n_i n_j weights, readout in place
    MeasurementCircuit diag;
    diag.basis_change = Circuit(n);
    for (int q = 0; q < n; ++q) {
        if (terms.spe[q] == 0.0) continue;
        diag.rules.push_back({{q, q, q, q}, jw_number(n, q)});
    }
    for (const auto& [ij, w] : terms.nn) {
        (void)w;
        diag.rules.push_back({{ij[0], ij[1], ij[0], ij[1]},
                              jw_number(n, ij[0]) * jw_number(n, ij[1])});
    }
    out.push_back(std::move(diag));

    // single-hop circuits, one per hop pair, shared across i
    std::map<std::array<int, 2>, std::vector<std::array<int, 4>>> hops;
    for (const auto& t : terms.hop3) {
        // shared index appears in both pairs; the hop is the other two
        int shared = (t.idx[0] == t.idx[2] || t.idx[0] == t.idx[3]) ? t.idx[0] : t.idx[1];
        int j = t.idx[0] == shared ? t.idx[1] : t.idx[0];
        int k = t.idx[2] == shared ? t.idx[3] : t.idx[2];
        hops[{std::min(j, k), std::max(j, k)}].push_back(t.idx);
    }
    for (const auto& [jk, tuples] : hops) {
        MeasurementCircuit mc;
        mc.basis_change = Circuit(n);
        mc.basis_change.push(Gate::cnot(jk[1], jk[0]));
        mc.basis_change.push(Gate::h(jk[1]));
        mc.basis_change.push(Gate::cnot(jk[1], jk[0]));
        for (const auto& t : tuples) {
            PauliSum d = conjugate_through(term_pauli(n, t), mc.basis_change);
            if (!d.is_diagonal()) throw std::logic_error("hop circuit failed to diagonalize");
            mc.rules.push_back({t, std::move(d)});
        }
        out.push_back(std::move(mc));
    }

    // double hops
    std::vector<std::array<int, 4>> dh;
    for (const auto& t : terms.hop4) dh.push_back(t.idx);
    if (grouped) {
        for (auto& mc : group_commuting_terms(n, dh)) out.push_back(std::move(mc));
    } else {
        for (const auto& t : dh)
            out.push_back(measurement_basis_double_hop(n, t[0], t[1], t[2], t[3]));
    }
    return out;
}

}  // namespace shellvqe
