#include "shellvqe/fock_oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <random>

namespace shellvqe {

namespace {
constexpr double kZero = 1e-15;

/// Fermionic sign for acting with a ladder operator on mode q: parity of the
/// occupied modes before q.  Modes pack MSB-first, so "before q" means the
/// bits above position (n-1-q).
int jw_sign(std::uint64_t occ, int n_modes, int q) {
    if (q == 0) return 1;
    std::uint64_t above = occ >> (n_modes - q);
    return (std::popcount(above) & 1) ? -1 : 1;
}
}  // namespace

void SparseOperator::add(std::size_t row, std::size_t col, cplx v) {
    if (row >= dim_ || col >= dim_) throw std::out_of_range("sparse entry out of range");
    rows_[row][col] += v;
}

void SparseOperator::compress() {
    for (auto& r : rows_)
        for (auto it = r.begin(); it != r.end();)
            it = (std::abs(it->second) < kZero) ? r.erase(it) : std::next(it);
}

std::vector<cplx> SparseOperator::apply(const std::vector<cplx>& x) const {
    std::vector<cplx> y(dim_, cplx{0, 0});
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& [c, v] : rows_[r]) y[r] += v * x[c];
    return y;
}

cplx SparseOperator::expectation(const std::vector<cplx>& x) const {
    cplx acc{0, 0};
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& [c, v] : rows_[r]) acc += std::conj(x[r]) * v * x[c];
    return acc;
}

double SparseOperator::hermiticity_defect() const {
    double worst = 0;
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& [c, v] : rows_[r]) {
            auto it = rows_[c].find(r);
            cplx vt = (it == rows_[c].end()) ? cplx{0, 0} : it->second;
            worst = std::max(worst, std::abs(v - std::conj(vt)));
        }
    return worst;
}

std::size_t SparseOperator::nnz() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

const std::map<std::pair<std::size_t, std::size_t>, cplx> SparseOperator::entries() const {
    std::map<std::pair<std::size_t, std::size_t>, cplx> out;
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& [c, v] : rows_[r]) out[{r, c}] = v;
    return out;
}

void SparseOperator::dump_coordinate(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f.precision(17);
    for (std::size_t r = 0; r < dim_; ++r)
        for (const auto& [c, v] : rows_[r])
            f << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
}

BasisIndex::BasisIndex(const std::vector<SlaterDet>& basis) {
    sorted_.reserve(basis.size());
    for (const auto& d : basis) sorted_.push_back(d.occ);
    for (std::size_t i = 1; i < sorted_.size(); ++i)
        if (sorted_[i - 1] >= sorted_[i])
            throw std::invalid_argument("basis must be strictly ascending");
}

std::int64_t BasisIndex::find(std::uint64_t occ) const {
    auto it = std::lower_bound(sorted_.begin(), sorted_.end(), occ);
    if (it == sorted_.end() || *it != occ) return -1;
    return it - sorted_.begin();
}

void add_ladder_product(SparseOperator& op, int n_modes, const std::vector<SlaterDet>& basis,
                        const BasisIndex& index,
                        const std::vector<std::pair<int, bool>>& factors, cplx coeff) {
    for (std::size_t col = 0; col < basis.size(); ++col) {
        std::uint64_t det = basis[col].occ;
        int sign = 1;
        bool dead = false;
        for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
            auto [q, dagger] = *it;
            std::uint64_t bit = det_bit(n_modes, q);
            bool occupied = det & bit;
            if (dagger == occupied) {
                dead = true;
                break;
            }
            sign *= jw_sign(det, n_modes, q);
            det ^= bit;
        }
        if (dead) continue;
        std::int64_t row = index.find(det);
        if (row < 0) continue;
        op.add(row, col, coeff * static_cast<double>(sign));
    }
}

SparseOperator build_sparse_h(const MSchemeHamiltonian& h, const std::vector<SlaterDet>& basis) {
    const int nm = h.n_modes();
    BasisIndex index(basis);
    SparseOperator op(basis.size());
    // one-body diagonal
    for (std::size_t col = 0; col < basis.size(); ++col) {
        double e = 0;
        for (int q = 0; q < nm; ++q)
            if (det_occupied(basis[col], nm, q)) e += h.spe()[q];
        if (std::abs(e) > 0) op.add(col, col, e);
    }
    // two-body: H2 = Σ_{i<j,k<l} v̄_ijkl a†_i a†_j a_l a_k
    for (const auto& el : h.elements())
        add_ladder_product(op, nm, basis, index,
                           {{el.i, true}, {el.j, true}, {el.l, false}, {el.k, false}}, el.v);
    op.compress();
    return op;
}

SparseOperator build_sparse_pool_op(int n_modes, int p, int q, int r, int s,
                                    const std::vector<SlaterDet>& basis) {
    BasisIndex index(basis);
    SparseOperator op(basis.size());
    add_ladder_product(op, n_modes, basis, index,
                       {{p, true}, {q, true}, {r, false}, {s, false}}, cplx{0, 1});
    add_ladder_product(op, n_modes, basis, index,
                       {{r, true}, {s, true}, {p, false}, {q, false}}, cplx{0, -1});
    op.compress();
    return op;
}

namespace {
EigenSolution dense_ground_state(const SparseOperator& op) {
    const auto n = static_cast<Eigen::Index>(op.dim());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& [rc, v] : op.entries()) m(rc.first, rc.second) = v;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
    EigenSolution sol;
    sol.energy = solver.eigenvalues()(0);
    sol.coefficients.resize(op.dim());
    for (Eigen::Index i = 0; i < n; ++i) sol.coefficients[i] = solver.eigenvectors()(i, 0);
    return sol;
}

double nrm(const std::vector<cplx>& v) {
    double s = 0;
    for (const auto& a : v) s += std::norm(a);
    return std::sqrt(s);
}

void axpy(std::vector<cplx>& y, cplx alpha, const std::vector<cplx>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

cplx dot(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s{0, 0};
    for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

/// Restarted Lanczos with full reorthogonalization, Krylov cap 200,
/// residual tolerance 1e-10.
EigenSolution lanczos_ground_state(const SparseOperator& op) {
    const std::size_t dim = op.dim();
    const int kdim_cap = 200;
    const double tol = 1e-10;
    const int max_restarts = 50;

    std::mt19937_64 rng(12345);
    std::normal_distribution<double> g;
    std::vector<cplx> v0(dim);
    for (auto& a : v0) a = cplx(g(rng), g(rng));
    double v0n = nrm(v0);
    for (auto& a : v0) a /= v0n;

    double theta = 0;
    for (int restart = 0; restart < max_restarts; ++restart) {
        std::vector<std::vector<cplx>> V;
        std::vector<double> alpha, beta;
        {
            double n0 = nrm(v0);
            for (auto& a : v0) a /= n0;
        }
        V.push_back(v0);
        for (int k = 0; k < kdim_cap && k < static_cast<int>(dim); ++k) {
            std::vector<cplx> w = op.apply(V[k]);
            double a_k = dot(V[k], w).real();
            alpha.push_back(a_k);
            axpy(w, -a_k, V[k]);
            if (k > 0) axpy(w, -beta[k - 1], V[k - 1]);
            // full reorthogonalization
            for (const auto& u : V) axpy(w, -dot(u, w), u);
            for (const auto& u : V) axpy(w, -dot(u, w), u);
            double b_k = nrm(w);
            if (b_k < 1e-14) break;  // breakdown: Krylov space exhausted
            beta.push_back(b_k);
            for (auto& x : w) x /= b_k;
            V.push_back(std::move(w));
        }
        const int k = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (int i = 0; i < k; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < k) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues()(0);
        std::vector<cplx> ritz(dim, cplx{0, 0});
        for (int i = 0; i < k; ++i) axpy(ritz, es.eigenvectors()(i, 0), V[i]);
        double rn = nrm(ritz);
        for (auto& a : ritz) a /= rn;
        std::vector<cplx> resid = op.apply(ritz);
        axpy(resid, -theta, ritz);
        if (nrm(resid) < tol) return {theta, std::move(ritz)};
        v0 = std::move(ritz);
    }
    throw SolverError("Lanczos did not converge within restart budget");
}
}  // namespace

EigenSolution ground_state(const SparseOperator& op) {
    if (op.dim() == 0) throw SolverError("empty operator");
    if (op.dim() <= 2000) return dense_ground_state(op);
    return lanczos_ground_state(op);
}

std::vector<cplx> apply_exp_pool(const SparseOperator& a, double theta,
                                 const std::vector<cplx>& state) {
    // two-level structure test: A³ = A when applied to the relevant vectors
    std::vector<cplx> ax = a.apply(state);
    std::vector<cplx> aax = a.apply(ax);
    std::vector<cplx> aaax = a.apply(aax);
    double defect = 0;
    for (std::size_t i = 0; i < state.size(); ++i) defect = std::max(defect, std::abs(aaax[i] - ax[i]));
    if (defect < 1e-12) {
        // e^{iθA} = 1 + iA sinθ + A² (cosθ − 1)
        std::vector<cplx> out = state;
        axpy(out, cplx{0, std::sin(theta)}, ax);
        axpy(out, cplx{std::cos(theta) - 1.0, 0}, aax);
        return out;
    }
    // scaling + truncated series fallback
    int slices = 1;
    while (std::abs(theta) / slices > 0.25) slices *= 2;
    std::vector<cplx> out = state;
    const double dt = theta / slices;
    for (int s = 0; s < slices; ++s) {
        std::vector<cplx> term = out, acc = out;
        for (int k = 1; k <= 30; ++k) {
            term = a.apply(term);
            cplx f = cplx{0, dt} / static_cast<double>(k);
            for (auto& t : term) t *= f;
            axpy(acc, 1.0, term);
            double tn = nrm(term);
            if (tn < 1e-16) break;
        }
        out = std::move(acc);
    }
    return out;
}

}  // namespace shellvqe
