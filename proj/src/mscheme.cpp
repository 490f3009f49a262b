#include "shellvqe/mscheme.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "shellvqe/clebsch_gordan.hpp"

namespace shellvqe {

namespace {
constexpr double kDropTol = 1e-12;  // MeV
}

MSchemeHamiltonian::MSchemeHamiltonian(const ValenceSpace* space, std::vector<double> spe)
    : space_(space), spe_(std::move(spe)) {}

double MSchemeHamiltonian::vbar(int i, int j, int k, int l) const {
    if (i == j || k == l) return 0.0;
    double sign = 1.0;
    if (i > j) {
        std::swap(i, j);
        sign = -sign;
    }
    if (k > l) {
        std::swap(k, l);
        sign = -sign;
    }
    // hermiticity is exact: (ij) ≤ (kl) stored once, transpose served here
    if (std::tie(k, l) < std::tie(i, j)) {
        std::swap(i, k);
        std::swap(j, l);
    }
    auto it = vbar_.find(key(i, j, k, l));
    return it == vbar_.end() ? 0.0 : sign * it->second;
}

void MSchemeHamiltonian::set_vbar(int i, int j, int k, int l, double v) {
    if (!(i < j && k < l)) throw std::invalid_argument("set_vbar expects canonical i<j,k<l");
    if (std::tie(k, l) < std::tie(i, j)) {
        std::swap(i, k);
        std::swap(j, l);
    }
    if (std::abs(v) < kDropTol)
        vbar_.erase(key(i, j, k, l));
    else
        vbar_[key(i, j, k, l)] = v;
}

std::vector<MSchemeHamiltonian::Element> MSchemeHamiltonian::elements() const {
    std::vector<Element> out;
    out.reserve(2 * vbar_.size());
    for (const auto& [k, v] : vbar_) {
        Element e{static_cast<int>(k >> 24 & 0xff), static_cast<int>(k >> 16 & 0xff),
                  static_cast<int>(k >> 8 & 0xff), static_cast<int>(k & 0xff), v};
        out.push_back(e);
        if (std::tie(e.i, e.j) != std::tie(e.k, e.l)) out.push_back({e.k, e.l, e.i, e.j, v});
    }
    std::sort(out.begin(), out.end(), [](const Element& a, const Element& b) {
        return std::tie(a.i, a.j, a.k, a.l) < std::tie(b.i, b.j, b.k, b.l);
    });
    return out;
}

MSchemeHamiltonian decouple_to_mscheme(const Interaction& in, const ValenceSpace& space) {
    const int nm = space.n_qubits();
    // per-state single-particle energies from per-orbital values
    std::vector<double> spe(nm);
    for (int q = 0; q < nm; ++q) spe[q] = in.spe[space.states[q].orbital];
    MSchemeHamiltonian h(&space, std::move(spe));

    // states grouped by orbital for the pair expansions
    std::vector<std::vector<int>> by_orbital(space.orbitals.size());
    for (int q = 0; q < nm; ++q) by_orbital[space.states[q].orbital].push_back(q);

    // G[x,y,v,w] accumulates coefficients of a†_x a†_y a_w a_v from the pair
    // products V · A†(ab;JMTTz) A(cd;JMTTz), with the pair operators
    // A†(ab) = N_ab Σ ⟨ja ma jb mb|JM⟩⟨½τa ½τb|TTz⟩ a†a†.  For a normalized
    // file N = 1/√(1+δ_ab); an unnormalized file absorbs another √(1+δ).
    std::map<std::array<int, 4>, double> G;
    for (const auto& e : in.tbme) {
        double na = (e.a == e.b) ? (in.normalized ? std::sqrt(2.0) : 2.0) : 1.0;
        double nc = (e.c == e.d) ? (in.normalized ? std::sqrt(2.0) : 2.0) : 1.0;
        const double weight = e.V / (na * nc);
        const int J2 = 2 * e.J, T2 = 2 * e.T;

        bool self_adjoint = std::minmax(e.a, e.b) == std::minmax(e.c, e.d);
        for (int side = 0; side < (self_adjoint ? 1 : 2); ++side) {
            int pa = side ? e.c : e.a, pb = side ? e.d : e.b;
            int pc = side ? e.a : e.c, pd = side ? e.b : e.d;
            const int ja2 = space.orbitals[pa].j2, jb2 = space.orbitals[pb].j2;
            const int jc2 = space.orbitals[pc].j2, jd2 = space.orbitals[pd].j2;
            for (int x : by_orbital[pa]) {
                for (int y : by_orbital[pb]) {
                    const SpState &sx = space.states[x], &sy = space.states[y];
                    const int M2 = sx.m2 + sy.m2, Tz2 = sx.tz2 + sy.tz2;
                    if (std::abs(M2) > J2 || std::abs(Tz2) > T2) continue;
                    double cg_bra = clebsch_gordan(ja2, sx.m2, jb2, sy.m2, J2, M2) *
                                    clebsch_gordan(1, sx.tz2, 1, sy.tz2, T2, Tz2);
                    if (cg_bra == 0.0) continue;
                    for (int v : by_orbital[pc]) {
                        for (int w : by_orbital[pd]) {
                            const SpState &sv = space.states[v], &sw = space.states[w];
                            if (sv.m2 + sw.m2 != M2 || sv.tz2 + sw.tz2 != Tz2) continue;
                            double cg_ket = clebsch_gordan(jc2, sv.m2, jd2, sw.m2, J2, M2) *
                                            clebsch_gordan(1, sv.tz2, 1, sw.tz2, T2, Tz2);
                            if (cg_ket == 0.0) continue;
                            G[{x, y, v, w}] += weight * cg_bra * cg_ket;
                        }
                    }
                }
            }
        }
    }

    // v̄_ijkl = antisymmetrized extraction of G (coefficient of a†a†a_w a_v)
    auto g_at = [&G](int x, int y, int v, int w) {
        auto it = G.find({x, y, v, w});
        return it == G.end() ? 0.0 : it->second;
    };
    auto antisym = [&](int i, int j, int k, int l) {
        return g_at(i, j, k, l) - g_at(j, i, k, l) - g_at(i, j, l, k) + g_at(j, i, l, k);
    };
    std::map<std::array<int, 4>, bool> visited;
    for (const auto& [idx, val] : G) {
        (void)val;
        int i = std::min(idx[0], idx[1]), j = std::max(idx[0], idx[1]);
        int k = std::min(idx[2], idx[3]), l = std::max(idx[2], idx[3]);
        if (i == j || k == l) continue;
        if (std::tie(k, l) < std::tie(i, j)) {
            std::swap(i, k);
            std::swap(j, l);
        }
        if (visited[{i, j, k, l}]) continue;
        visited[{i, j, k, l}] = true;
        // hermitian average of the two extraction directions
        double vb = 0.5 * (antisym(i, j, k, l) + antisym(k, l, i, j));
        if (std::abs(vb) >= kDropTol) h.set_vbar(i, j, k, l, vb);
    }
    return h;
}

double diagonal_energy(const MSchemeHamiltonian& h, const SlaterDet& det) {
    const int nm = h.n_modes();
    double e = 0.0;
    std::vector<int> occ;
    for (int q = 0; q < nm; ++q)
        if (det_occupied(det, nm, q)) {
            e += h.spe()[q];
            occ.push_back(q);
        }
    for (std::size_t a = 0; a < occ.size(); ++a)
        for (std::size_t b = a + 1; b < occ.size(); ++b) e += h.vbar(occ[a], occ[b], occ[a], occ[b]);
    return e;
}

SlaterDet lowest_reference(const MSchemeHamiltonian& h, const std::vector<SlaterDet>& basis) {
    if (basis.empty()) throw std::invalid_argument("lowest_reference: empty basis");
    SlaterDet best = basis.front();
    double best_e = diagonal_energy(h, best);
    for (const auto& d : basis) {
        double e = diagonal_energy(h, d);
        if (e < best_e - 1e-12 || (std::abs(e - best_e) <= 1e-12 && d.occ < best.occ)) {
            best = d;
            best_e = e;
        }
    }
    return best;
}

HamiltonianTerms collect_terms(const MSchemeHamiltonian& h) {
    HamiltonianTerms t;
    t.n_modes = h.n_modes();
    t.spe = h.spe();
    for (const auto& e : h.elements()) {
        std::array<int, 2> ij{e.i, e.j}, kl{e.k, e.l};
        if (ij == kl) {
            t.nn.push_back({ij, e.v});
            continue;
        }
        if (kl < ij) continue;  // visit each unordered pair-of-pairs once
        // H contribution: v̄_ijkl a†ia†j a_l a_k + herm. = -v̄_ijkl · h(i,j,k,l)
        TwoBodyTerm term{{e.i, e.j, e.k, e.l}, -e.v};
        int shared = (e.i == e.k) + (e.i == e.l) + (e.j == e.k) + (e.j == e.l);
        if (shared == 1)
            t.hop3.push_back(term);
        else
            t.hop4.push_back(term);
    }
    auto by_idx = [](const TwoBodyTerm& a, const TwoBodyTerm& b) { return a.idx < b.idx; };
    std::sort(t.hop3.begin(), t.hop3.end(), by_idx);
    std::sort(t.hop4.begin(), t.hop4.end(), by_idx);
    std::sort(t.nn.begin(), t.nn.end());
    return t;
}

}  // namespace shellvqe
