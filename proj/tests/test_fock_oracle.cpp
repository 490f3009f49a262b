#include <unsupported/Eigen/MatrixFunctions>
#include <random>
#include <sstream>

#include "doctest.h"
#include "shellvqe/fock_oracle.hpp"
#include "shellvqe/interaction.hpp"
#include "shellvqe/jordan_wigner.hpp"
#include "shellvqe/statevector.hpp"
#include "test_util.hpp"

using namespace shellvqe;

namespace {
// independent dense construction on occupation-number vectors
oracle::Mat dense_h_oracle(const MSchemeHamiltonian& h, const std::vector<SlaterDet>& basis) {
    const int nm = h.n_modes();
    oracle::Mat m = oracle::Mat::Zero(basis.size(), basis.size());
    // map packed det -> position
    std::map<std::uint64_t, int> pos;
    for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i].occ] = static_cast<int>(i);
    for (std::size_t col = 0; col < basis.size(); ++col) {
        for (int q = 0; q < nm; ++q)
            if (det_occupied(basis[col], nm, q)) m(col, col) += h.spe()[q];
        for (const auto& el : h.elements()) {
            std::uint64_t det = basis[col].occ;
            int sign = 1;
            bool dead = false;
            // a†i a†j a_l a_k applied right to left
            for (auto [q, dag] : {std::pair{el.k, false}, {el.l, false}, {el.j, true}, {el.i, true}}) {
                std::uint64_t d2 = det;
                int s = oracle::ladder(d2, nm, q, dag);
                if (!s) {
                    dead = true;
                    break;
                }
                sign *= s;
                det = d2;
            }
            if (dead) continue;
            auto it = pos.find(det);
            if (it != pos.end()) m(it->second, col) += sign * el.v;
        }
    }
    return m;
}

MSchemeHamiltonian toy_sd_pairing(const ValenceSpace& space) {
    std::istringstream s(R"(
ORB 0 2 5
ORB 1 0 1
ORB 0 2 3
SPE 0d5/2 -3.9
SPE 1s1/2 -3.2
SPE 0d3/2 1.6
TBME 0d5/2 0d5/2 0d5/2 0d5/2 0 1 -2.5
TBME 0d5/2 0d5/2 1s1/2 1s1/2 0 1 -1.1
TBME 1s1/2 1s1/2 1s1/2 1s1/2 0 1 -1.8
TBME 0d3/2 0d3/2 0d3/2 0d3/2 0 1 -2.0
TBME 0d5/2 0d5/2 0d3/2 0d3/2 0 1 -1.3
TBME 1s1/2 1s1/2 0d3/2 0d3/2 0 1 -0.7
)");
    return decouple_to_mscheme(parse_interaction_stream(s, space, "toy-sd"), space);
}
}  // namespace

TEST_CASE("one-particle space: diagonal SPE plus hoppings") {
    auto space = build_valence_space("p", Species::Neutrons);
    Interaction in;
    in.spe = {-1.0, 2.5};
    auto h = decouple_to_mscheme(in, space);
    std::vector<SlaterDet> basis;
    for (int q = 0; q < 6; ++q) basis.push_back({det_bit(6, q)});
    std::sort(basis.begin(), basis.end());
    auto H = build_sparse_h(h, basis);
    auto entries = H.entries();
    CHECK(entries.size() == 6);  // diagonal only without TBME
    CHECK(H.hermiticity_defect() == 0.0);
}

TEST_CASE("^18O-like toy pairing: sparse H matches the independent dense oracle") {
    auto space = build_valence_space("sd", Species::Neutrons);
    auto h = toy_sd_pairing(space);
    auto basis = enumerate_m_basis(space, 2, 0, 0);
    REQUIRE(basis.size() == 14);
    auto H = build_sparse_h(h, basis);
    CHECK(H.hermiticity_defect() == 0.0);  // exact by symmetrized storage
    oracle::Mat ref = dense_h_oracle(h, basis);
    auto entries = H.entries();
    oracle::Mat got = oracle::Mat::Zero(basis.size(), basis.size());
    for (const auto& [rc, v] : entries) got(rc.first, rc.second) = v;
    CHECK((got - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ground_state: frozen small cases") {
    SparseOperator d3(3);
    d3.add(0, 0, 1.0);
    d3.add(1, 1, 2.0);
    d3.add(2, 2, 3.0);
    auto s = ground_state(d3);
    CHECK(s.energy == doctest::Approx(1.0));
    CHECK(std::abs(s.coefficients[0]) == doctest::Approx(1.0));

    SparseOperator offd(2);
    offd.add(0, 1, 1.0);
    offd.add(1, 0, 1.0);
    auto s2 = ground_state(offd);
    CHECK(s2.energy == doctest::Approx(-1.0));
    CHECK(std::abs(s2.coefficients[0] + s2.coefficients[1]) < 1e-10);  // (1,-1)/√2 up to phase
}

TEST_CASE("lanczos agrees with the dense solver") {
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g;
    const int n = 50;
    // random sparse hermitian
    SparseOperator A(n);
    for (int r = 0; r < n; ++r) {
        A.add(r, r, g(rng));
        for (int c = r + 1; c < n; ++c)
            if (rng() % 4 == 0) {
                cplx v(g(rng), g(rng));
                A.add(r, c, v);
                A.add(c, r, std::conj(v));
            }
    }
    Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [rc, v] : A.entries()) dense(rc.first, rc.second) = v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);

    // force the Lanczos path through a thin wrapper: dim ≤ 2000 uses the
    // dense branch, so compare both by calling ground_state on an inflated
    // block-diagonal copy instead
    SparseOperator big(2049);
    for (const auto& [rc, v] : A.entries()) big.add(rc.first, rc.second, v);
    for (std::size_t i = n; i < 2049; ++i) big.add(i, i, 100.0 + static_cast<double>(i));
    auto sol = ground_state(big);
    CHECK(sol.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));
}

TEST_CASE("apply_exp_pool") {
    auto space = build_valence_space("sd", Species::Neutrons);
    auto basis = enumerate_m_basis(space, 2, 0, 0);
    auto T = build_sparse_pool_op(space.n_qubits(), 0, 5, 2, 3, basis);
    CHECK(T.hermiticity_defect() < 1e-14);

    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<cplx> state(basis.size());
    for (auto& a : state) a = cplx(g(rng), g(rng));
    double n0 = 0;
    for (auto& a : state) n0 += std::norm(a);
    for (auto& a : state) a /= std::sqrt(n0);

    SUBCASE("theta = 0 is the identity") {
        auto out = apply_exp_pool(T, 0.0, state);
        for (std::size_t i = 0; i < state.size(); ++i) CHECK(std::abs(out[i] - state[i]) < 1e-14);
    }
    SUBCASE("two-level rotation equals the series fallback and preserves norm") {
        double theta = 0.7321;
        auto fast = apply_exp_pool(T, theta, state);
        // independent check with a dense matrix exponential
        Eigen::MatrixXcd dense = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
        for (const auto& [rc, v] : T.entries()) dense(rc.first, rc.second) = v;
        Eigen::MatrixXcd u = (cplx(0, theta) * dense).exp();
        oracle::Vec x(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) x(i) = state[i];
        oracle::Vec y = u * x;
        double norm = 0;
        for (std::size_t i = 0; i < basis.size(); ++i) {
            CHECK(std::abs(fast[i] - y(i)) < 1e-10);
            norm += std::norm(fast[i]);
        }
        CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-12);
    }
}

TEST_CASE("pool exponential in the full Fock space matches the qsim Pauli route") {
    const int nm = 6;
    std::vector<SlaterDet> basis;
    for (std::uint64_t d = 0; d < (1ull << nm); ++d) basis.push_back({d});
    auto T = build_sparse_pool_op(nm, 0, 3, 1, 4, basis);
    // JW image route: expectation-level equivalence on a random state
    std::mt19937_64 rng(8);
    StateVector psi = oracle::random_state(nm, rng);
    PauliSum tp = jw_pool_op(nm, 0, 3, 1, 4);
    StateVector viaPauli = psi.apply_pauli(tp);
    std::vector<cplx> x(psi.amplitudes().begin(), psi.amplitudes().end());
    auto viaFock = T.apply(x);
    for (std::uint64_t i = 0; i < psi.dim(); ++i) CHECK(std::abs(viaPauli[i] - viaFock[i]) < 1e-12);
}
