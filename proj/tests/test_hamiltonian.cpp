#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "shellvqe/clebsch_gordan.hpp"
#include "shellvqe/fock_oracle.hpp"
#include "shellvqe/interaction.hpp"
#include "shellvqe/mscheme.hpp"
#include "test_util.hpp"

using namespace shellvqe;

TEST_CASE("clebsch-gordan special values") {
    CHECK(clebsch_gordan(1, 1, 1, -1, 0, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(clebsch_gordan(1, 1, 1, 1, 2, 2) == doctest::Approx(1.0));
    CHECK(clebsch_gordan(1, -1, 1, 1, 0, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    // d5/2 ⊗ d5/2 stretched
    CHECK(clebsch_gordan(5, 5, 5, 5, 10, 10) == doctest::Approx(1.0));
    CHECK(clebsch_gordan(5, 5, 5, 3, 10, 8) == doctest::Approx(std::sqrt(0.5)));
    CHECK(clebsch_gordan(3, 1, 3, -1, 0, 0) == doctest::Approx(-1.0 / 2.0));
    CHECK(clebsch_gordan(1, 1, 1, 1, 0, 0) == 0.0);      // M mismatch
    CHECK(clebsch_gordan(1, 1, 3, 3, 2, 4) == 0.0);      // |M| > J
    CHECK_THROWS_AS(clebsch_gordan(1, 0, 1, 1, 0, 0), std::domain_error);
}

TEST_CASE("clebsch-gordan orthogonality over random channels") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        int j1 = 1 + static_cast<int>(rng() % 7);
        int j2 = 1 + static_cast<int>(rng() % 7);
        if ((j1 + j2) % 2) continue;  // need integer sums for a shared J ladder
        for (int J2 = std::abs(j1 - j2); J2 <= j1 + j2; J2 += 2) {
            for (int M2 = -J2; M2 <= J2; M2 += 2) {
                double s = 0;
                for (int m1 = -j1; m1 <= j1; m1 += 2) {
                    int m2 = M2 - m1;
                    double c = clebsch_gordan(j1, m1, j2, m2, J2, M2);
                    s += c * c;
                }
                CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
            }
        }
    }
}

namespace {
const char* kToyPairingP = R"(# toy pairing in the p shell
ORB 0 1 3
ORB 0 1 1
SPE 0p3/2 0.0
SPE 0p1/2 2.0
TBME 0p3/2 0p3/2 0p3/2 0p3/2 0 1 -1.5
TBME 0p1/2 0p1/2 0p1/2 0p1/2 0 1 -1.5
TBME 0p3/2 0p3/2 0p1/2 0p1/2 0 1 -0.9
)";

Interaction toy_pairing(const ValenceSpace& space) {
    std::istringstream in(kToyPairingP);
    return parse_interaction_stream(in, space, "toy");
}

Interaction random_interaction(const ValenceSpace& space, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    Interaction in;
    in.normalized = true;
    in.spe.resize(space.orbitals.size());
    for (auto& e : in.spe) e = u(rng);
    const int no = static_cast<int>(space.orbitals.size());
    for (int a = 0; a < no; ++a)
        for (int b = a; b < no; ++b)
            for (int c = a; c < no; ++c)
                for (int d = (c == a ? b : c); d < no; ++d) {
                    int ja = space.orbitals[a].j2, jb = space.orbitals[b].j2;
                    int jc = space.orbitals[c].j2, jd = space.orbitals[d].j2;
                    int Jmin = std::max(std::abs(ja - jb), std::abs(jc - jd)) / 2;
                    int Jmax = std::min(ja + jb, jc + jd) / 2;
                    for (int J = Jmin; J <= Jmax; ++J)
                        for (int T = 0; T <= 1; ++T) {
                            if ((a == b || c == d) && (J + T) % 2 == 0) continue;
                            in.tbme.push_back({a, b, c, d, J, T, u(rng)});
                        }
                }
    return in;
}

// dense J+ and T+ in a small basis (raising operators as ladder products)
SparseOperator raising_operator(const ValenceSpace& space, const std::vector<SlaterDet>& basis,
                                bool isospin) {
    BasisIndex index(basis);
    SparseOperator op(basis.size());
    const int nm = space.n_qubits();
    for (int q = 0; q < nm; ++q) {
        const SpState& s = space.states[q];
        if (isospin) {
            if (s.tz2 == 1) continue;  // already a neutron
            for (int q2 = 0; q2 < nm; ++q2) {
                const SpState& t = space.states[q2];
                if (t.orbital == s.orbital && t.m2 == s.m2 && t.tz2 == 1)
                    add_ladder_product(op, nm, basis, index, {{q2, true}, {q, false}}, 1.0);
            }
        } else {
            int j2 = space.orbitals[s.orbital].j2;
            if (s.m2 + 2 > j2) continue;
            double c = std::sqrt(j2 / 2.0 * (j2 / 2.0 + 1.0) - s.m2 / 2.0 * (s.m2 / 2.0 + 1.0));
            for (int q2 = 0; q2 < nm; ++q2) {
                const SpState& t = space.states[q2];
                if (t.orbital == s.orbital && t.m2 == s.m2 + 2 && t.tz2 == s.tz2)
                    add_ladder_product(op, nm, basis, index, {{q2, true}, {q, false}}, c);
            }
        }
    }
    op.compress();
    return op;
}

std::vector<SlaterDet> full_fock_basis(int nm) {
    std::vector<SlaterDet> basis;
    for (std::uint64_t d = 0; d < (1ull << nm); ++d) basis.push_back({d});
    return basis;
}
}  // namespace

TEST_CASE("interaction parsing") {
    auto space = build_valence_space("p", Species::Both);
    SUBCASE("toy file") {
        auto in = toy_pairing(space);
        CHECK(in.spe.size() == 2);
        CHECK(in.spe[1] == doctest::Approx(2.0));
        CHECK(in.tbme.size() == 3);
    }
    SUBCASE("single-entry file") {
        std::istringstream s("SPE 0p3/2 -4.0\nTBME 0p3/2 0p3/2 0p3/2 0p3/2 0 1 -1.0\n");
        auto in = parse_interaction_stream(s, space, "t");
        CHECK(in.tbme.size() == 1);
        CHECK(in.spe[0] == doctest::Approx(-4.0));
    }
    SUBCASE("non-numeric V") {
        std::istringstream s("TBME 0p3/2 0p3/2 0p3/2 0p3/2 0 1 oops\n");
        CHECK_THROWS_AS(parse_interaction_stream(s, space, "t"), ParseError);
    }
    SUBCASE("unknown orbital") {
        std::istringstream s("SPE 0d5/2 1.0\n");
        CHECK_THROWS_AS(parse_interaction_stream(s, space, "t"), ParseError);
    }
    SUBCASE("duplicate TBME channel") {
        std::istringstream s(
            "TBME 0p3/2 0p3/2 0p1/2 0p1/2 0 1 -1.0\nTBME 0p1/2 0p1/2 0p3/2 0p3/2 0 1 -2.0\n");
        CHECK_THROWS_AS(parse_interaction_stream(s, space, "t"), ParseError);
    }
    SUBCASE("Pauli-forbidden pair") {
        std::istringstream s("TBME 0p3/2 0p3/2 0p3/2 0p3/2 1 1 -1.0\n");
        CHECK_THROWS_AS(parse_interaction_stream(s, space, "t"), ParseError);
    }
    SUBCASE("triangle violation") {
        std::istringstream s("TBME 0p3/2 0p1/2 0p3/2 0p1/2 3 0 -1.0\n");
        CHECK_THROWS_AS(parse_interaction_stream(s, space, "t"), ParseError);
    }
}

TEST_CASE("pairing decoupling matches the hand-expanded CG sum (j = 3/2)") {
    // single j=3/2 orbital, one J=0,T=1 element V: for neutron pairs
    // v̄(m,-m, m',-m') = 2V (-1)^(j-m) (-1)^(j-m') / (2j+1)   [x2 species CG²=1]
    ValenceSpace space = build_custom_space("j32", {{0, 1, 3, "0p3/2"}}, Species::Neutrons);
    Interaction in;
    in.spe = {0.0};
    const double V = -1.7;
    in.tbme.push_back({0, 0, 0, 0, 0, 1, V});
    auto h = decouple_to_mscheme(in, space);
    // states: m2 = -3,-1,1,3 -> qubits 0..3; time-reversed pairs (0,3),(1,2).
    // C(j m j -m|00) = (-1)^(j-m)/√(2j+1), so for the canonical element
    // v̄_(i,-i)(k,-k) = 2V·(-1)^((3-m2_i)/2)·(-1)^((3-m2_k)/2)/(2j+1).
    auto phase = [](int m2) { return ((3 - m2) / 2) % 2 ? -1.0 : 1.0; };
    for (int i : {0, 1})
        for (int k : {0, 1}) {
            int j = 3 - i, l = 3 - k;
            double expect = 2.0 * V * phase(space.states[i].m2) * phase(space.states[k].m2) / 4.0;
            CHECK(h.vbar(i, j, k, l) == doctest::Approx(expect).epsilon(1e-12));
        }
    CHECK(h.vbar(0, 3, 0, 3) == doctest::Approx(V / 2).epsilon(1e-12));
    CHECK(h.vbar(0, 3, 1, 2) == doctest::Approx(-V / 2).epsilon(1e-12));
    // non-time-reversed combinations vanish
    CHECK(h.vbar(0, 1, 0, 1) == doctest::Approx(0.0));
    CHECK(h.vbar(0, 2, 0, 2) == doctest::Approx(0.0));
}

TEST_CASE("zero coupled elements: H is diagonal in the SPE") {
    auto space = build_valence_space("p", Species::Neutrons);
    Interaction in;
    in.spe = {1.0, 3.0};
    auto h = decouple_to_mscheme(in, space);
    CHECK(h.elements().empty());
    SlaterDet one = det_from_string("010000");
    CHECK(diagonal_energy(h, one) == doctest::Approx(1.0));
    SlaterDet vac{0};
    CHECK(diagonal_energy(h, vac) == doctest::Approx(0.0));
}

TEST_CASE("decoupled elements satisfy antisymmetry, hermiticity and symmetry filters") {
    auto space = build_valence_space("p", Species::Both);
    auto in = random_interaction(space, 99);
    auto h = decouple_to_mscheme(in, space);
    CHECK(h.elements().size() > 0);
    for (const auto& e : h.elements()) {
        CHECK(h.vbar(e.j, e.i, e.k, e.l) == doctest::Approx(-e.v).epsilon(1e-12));
        CHECK(h.vbar(e.i, e.j, e.l, e.k) == doctest::Approx(-e.v).epsilon(1e-12));
        CHECK(h.vbar(e.k, e.l, e.i, e.j) == doctest::Approx(e.v).epsilon(1e-12));
        // m, tz conservation
        CHECK(space.states[e.i].m2 + space.states[e.j].m2 ==
              space.states[e.k].m2 + space.states[e.l].m2);
        CHECK(space.states[e.i].tz2 + space.states[e.j].tz2 ==
              space.states[e.k].tz2 + space.states[e.l].tz2);
    }
}

TEST_CASE("decoupled Hamiltonian commutes with J+ and T+ (rotational/isospin invariance)") {
    auto space = build_valence_space("p", Species::Both);
    auto in = random_interaction(space, 7);
    auto h = decouple_to_mscheme(in, space);
    auto basis = full_fock_basis(space.n_qubits());
    auto H = build_sparse_h(h, basis);
    for (bool isospin : {false, true}) {
        auto R = raising_operator(space, basis, isospin);
        // ‖[H,R]‖ via action on a few random vectors
        std::mt19937_64 rng(31);
        std::normal_distribution<double> g;
        for (int t = 0; t < 3; ++t) {
            std::vector<cplx> v(basis.size());
            for (auto& a : v) a = cplx(g(rng), g(rng));
            auto hr = H.apply(R.apply(v));
            auto rh = R.apply(H.apply(v));
            double worst = 0, scale = 0;
            for (std::size_t i = 0; i < v.size(); ++i) {
                worst = std::max(worst, std::abs(hr[i] - rh[i]));
                scale = std::max(scale, std::abs(hr[i]));
            }
            CHECK(worst < 1e-9 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("diagonal energy against dense matrix and reference selection") {
    auto space = build_valence_space("p", Species::Protons);
    std::istringstream in_s(kToyPairingP);
    auto in = parse_interaction_stream(in_s, space, "toy");
    auto h = decouple_to_mscheme(in, space);
    auto basis = enumerate_m_basis(space, 0, 2, 0);
    REQUIRE(basis.size() == 5);
    auto H = build_sparse_h(h, basis);
    auto entries = H.entries();
    for (std::size_t d = 0; d < basis.size(); ++d)
        CHECK(diagonal_energy(h, basis[d]) == doctest::Approx(entries[{d, d}].real()));
    // the two time-reversed 0p3/2 pairs are exactly degenerate for any
    // isospin-conserving force; the tie rule picks the smaller bitstring
    SlaterDet ref = lowest_reference(h, basis);
    CHECK(det_string(ref, 6) == "011000");
    CHECK(diagonal_energy(h, ref) ==
          doctest::Approx(diagonal_energy(h, det_from_string("100100"))));
    // tie rule: equal diagonal -> smallest packed value
    Interaction free_in;
    free_in.spe = {1.0, 1.0};
    auto h0 = decouple_to_mscheme(free_in, space);
    CHECK(lowest_reference(h0, basis).occ == basis.front().occ);
    CHECK_THROWS_AS(lowest_reference(h0, {}), std::invalid_argument);
}

TEST_CASE("collect_terms regroups H exactly (dense comparison)") {
    auto space = build_valence_space("p", Species::Both);
    auto in = random_interaction(space, 42);
    auto h = decouple_to_mscheme(in, space);
    auto terms = collect_terms(h);
    const int nm = space.n_qubits();
    auto basis = full_fock_basis(nm);
    BasisIndex index(basis);
    auto H = build_sparse_h(h, basis);

    SparseOperator Ht(basis.size());
    for (int q = 0; q < nm; ++q)
        if (std::abs(terms.spe[q]) > 0)
            add_ladder_product(Ht, nm, basis, index, {{q, true}, {q, false}}, terms.spe[q]);
    for (const auto& [ij, w] : terms.nn)
        add_ladder_product(Ht, nm, basis, index,
                           {{ij[0], true}, {ij[0], false}, {ij[1], true}, {ij[1], false}}, w);
    auto add_hop = [&](const TwoBodyTerm& t) {
        add_ladder_product(Ht, nm, basis, index,
                           {{t.idx[0], true}, {t.idx[1], true}, {t.idx[2], false}, {t.idx[3], false}},
                           t.coeff);
        add_ladder_product(Ht, nm, basis, index,
                           {{t.idx[2], true}, {t.idx[3], true}, {t.idx[0], false}, {t.idx[1], false}},
                           t.coeff);
    };
    for (const auto& t : terms.hop3) add_hop(t);
    for (const auto& t : terms.hop4) add_hop(t);
    Ht.compress();

    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    std::vector<cplx> v(basis.size());
    for (auto& a : v) a = cplx(g(rng), g(rng));
    auto hv = H.apply(v);
    auto htv = Ht.apply(v);
    double worst = 0;
    for (std::size_t i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(hv[i] - htv[i]));
    CHECK(worst < 1e-10);
}
