#include "shellvqe/valence_space.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace shellvqe {

namespace {
const char kSpectroscopic[] = "spdfghij";

std::vector<Orbital> shell_orbitals(const std::string& name) {
    // Fig. 1(b) layout: lowest-energy orbital first.
    if (name == "p") return {{0, 1, 3, "0p3/2"}, {0, 1, 1, "0p1/2"}};
    if (name == "sd") return {{0, 2, 5, "0d5/2"}, {1, 0, 1, "1s1/2"}, {0, 2, 3, "0d3/2"}};
    if (name == "pf")
        return {{0, 3, 7, "0f7/2"}, {1, 1, 3, "1p3/2"}, {0, 3, 5, "0f5/2"}, {1, 1, 1, "1p1/2"}};
    throw std::invalid_argument("unknown shell name: " + name);
}
}  // namespace

std::string make_orbital_label(int n, int l, int j2) {
    std::string s = std::to_string(n);
    s += (l < static_cast<int>(sizeof kSpectroscopic) - 1) ? kSpectroscopic[l] : '?';
    s += std::to_string(j2) + "/2";
    return s;
}

Species species_from_string(const std::string& s) {
    if (s == "neutrons" || s == "n") return Species::Neutrons;
    if (s == "protons" || s == "p") return Species::Protons;
    if (s == "both" || s == "np") return Species::Both;
    throw std::invalid_argument("unknown species: " + s);
}

std::string species_to_string(Species s) {
    switch (s) {
        case Species::Neutrons: return "neutrons";
        case Species::Protons: return "protons";
        default: return "both";
    }
}

std::string det_string(const SlaterDet& d, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q)
        if (det_occupied(d, n_qubits, q)) s[q] = '1';
    return s;
}

SlaterDet det_from_string(const std::string& bits) {
    SlaterDet d;
    int n = static_cast<int>(bits.size());
    for (int q = 0; q < n; ++q) {
        if (bits[q] == '1')
            d.occ |= det_bit(n, q);
        else if (bits[q] != '0')
            throw std::invalid_argument("determinant string must be 0/1 bits");
    }
    return d;
}

int ValenceSpace::dim_sp() const {
    int d = 0;
    for (const auto& o : orbitals) d += o.degeneracy();
    return d;
}

std::string ValenceSpace::state_label(int q) const {
    const SpState& s = states[q];
    std::string lbl = orbitals[s.orbital].label;
    lbl += (s.m2 >= 0 ? " m=+" : " m=") + std::to_string(s.m2) + "/2";
    lbl += s.tz2 > 0 ? " n" : " p";
    return lbl;
}

ValenceSpace build_custom_space(const std::string& name,
                                const std::vector<Orbital>& orbitals, Species species) {
    ValenceSpace v;
    v.name = name;
    v.species = species;
    v.orbitals = orbitals;
    for (const auto& o : v.orbitals) {
        if (o.j2 < 1 || (o.j2 != 2 * o.l - 1 && o.j2 != 2 * o.l + 1))
            throw std::invalid_argument("orbital " + o.label + ": 2j must be 2l±1 and ≥ 1");
    }
    auto add_block = [&v](int tz2) {
        for (int orb = 0; orb < static_cast<int>(v.orbitals.size()); ++orb) {
            for (int m2 = -v.orbitals[orb].j2; m2 <= v.orbitals[orb].j2; m2 += 2) {
                SpState s;
                s.orbital = orb;
                s.m2 = m2;
                s.tz2 = tz2;
                s.qubit = static_cast<int>(v.states.size());
                v.states.push_back(s);
            }
        }
    };
    if (species == Species::Neutrons || species == Species::Both) add_block(+1);
    if (species == Species::Protons || species == Species::Both) add_block(-1);
    if (v.states.size() > 64) throw std::invalid_argument("valence space exceeds 64 states");
    return v;
}

ValenceSpace build_valence_space(const std::string& name, Species species) {
    return build_custom_space(name, shell_orbitals(name), species);
}

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::uint64_t dim_mb(const ValenceSpace& space, int n_ci, int z_ci) {
    int dsp = space.dim_sp();
    bool has_n = space.species != Species::Protons;
    bool has_z = space.species != Species::Neutrons;
    if (n_ci < 0 || z_ci < 0 || n_ci > (has_n ? dsp : 0) || z_ci > (has_z ? dsp : 0))
        throw std::domain_error("particle counts out of range for space");
    return binomial(dsp, n_ci) * binomial(dsp, z_ci);
}

int det_M2(const ValenceSpace& space, const SlaterDet& d) {
    int m2 = 0;
    for (int q = 0; q < space.n_qubits(); ++q)
        if (det_occupied(d, space.n_qubits(), q)) m2 += space.states[q].m2;
    return m2;
}

int det_Tz2(const ValenceSpace& space, const SlaterDet& d) {
    int tz2 = 0;
    for (int q = 0; q < space.n_qubits(); ++q)
        if (det_occupied(d, space.n_qubits(), q)) tz2 += space.states[q].tz2;
    return tz2;
}

std::vector<SlaterDet> enumerate_m_basis(const ValenceSpace& space, int n_ci, int z_ci,
                                         int M2) {
    dim_mb(space, n_ci, z_ci);  // range validation
    int nq = space.n_qubits();
    int particles = n_ci + z_ci;
    std::vector<SlaterDet> out;
    if (particles == 0) {
        if (M2 == 0) out.push_back({0});
        return out;
    }
    // Walk all nq-choose-particles occupation patterns in ascending packed
    // order and filter on per-species counts and total M2.
    std::uint64_t comb = (1ull << particles) - 1;
    std::uint64_t limit = (nq == 64) ? ~0ull : (1ull << nq);
    while (comb < limit) {
        SlaterDet d{comb};
        int nn = 0, np = 0, m2 = 0;
        for (int q = 0; q < nq; ++q) {
            if (!det_occupied(d, nq, q)) continue;
            m2 += space.states[q].m2;
            (space.states[q].tz2 > 0 ? nn : np)++;
        }
        if (nn == n_ci && np == z_ci && m2 == M2) out.push_back(d);
        // Gosper's hack: next integer with the same popcount.
        std::uint64_t c = comb & -comb;
        std::uint64_t r = comb + c;
        comb = (((r ^ comb) >> 2) / c) | r;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace shellvqe
