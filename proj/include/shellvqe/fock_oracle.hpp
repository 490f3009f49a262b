#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "shellvqe/pauli.hpp"
#include "shellvqe/mscheme.hpp"
#include "shellvqe/valence_space.hpp"

namespace shellvqe {

/// Sparse operator over an explicit Slater-determinant basis (CSR storage
/// built from a coordinate map).
class SparseOperator {
  public:
    SparseOperator() = default;
    explicit SparseOperator(std::size_t dim) : dim_(dim), rows_(dim) {}

    std::size_t dim() const { return dim_; }
    void add(std::size_t row, std::size_t col, cplx v);
    void compress();  // merge duplicates, drop ~0 entries

    std::vector<cplx> apply(const std::vector<cplx>& x) const;
    cplx expectation(const std::vector<cplx>& x) const;  // ⟨x|A|x⟩
    /// max |A - A†| entry (0 for anything built from a hermitian source)
    double hermiticity_defect() const;
    std::size_t nnz() const;
    const std::map<std::pair<std::size_t, std::size_t>, cplx> entries() const;

    /// Coordinate text dump: "row col re im" per line.
    void dump_coordinate(const std::string& path) const;

  private:
    std::size_t dim_ = 0;
    std::vector<std::map<std::size_t, cplx>> rows_;
};

struct EigenSolution {
    double energy = 0;
    std::vector<cplx> coefficients;
};

struct SolverError : std::runtime_error {
    explicit SolverError(const std::string& m) : std::runtime_error(m) {}
};

/// Index lookup for a sorted determinant basis.
class BasisIndex {
  public:
    explicit BasisIndex(const std::vector<SlaterDet>& basis);
    /// -1 when the determinant is outside the basis.
    std::int64_t find(std::uint64_t occ) const;

  private:
    std::vector<std::uint64_t> sorted_;
};

/// H in the given determinant basis with exact fermionic permutation signs.
SparseOperator build_sparse_h(const MSchemeHamiltonian& h, const std::vector<SlaterDet>& basis);

/// Sparse matrix of the pool operator T^{pq}_{rs} = i(a†p a†q ar as − h.c.)
/// (3-index tuples reduce inside the same algebra).
SparseOperator build_sparse_pool_op(int n_modes, int p, int q, int r, int s,
                                    const std::vector<SlaterDet>& basis);

/// Sparse matrix of an arbitrary ladder-product string (test/bridge tool):
/// coefficient × Π a†/a, factors applied right to left.
void add_ladder_product(SparseOperator& op, int n_modes, const std::vector<SlaterDet>& basis,
                        const BasisIndex& index,
                        const std::vector<std::pair<int, bool>>& factors, cplx coeff);

/// Lowest eigenpair: dense solver for dim ≤ 2000, restarted Lanczos with
/// full reorthogonalization above.  Throws SolverError on non-convergence.
EigenSolution ground_state(const SparseOperator& op);

/// e^{iθA}|state⟩.  Uses the exact two-level rotation
/// 1 + iA sinθ + A²(cosθ−1) when A³ = A on the reachable subspace (always
/// true for pool operators in the Fock basis), else a scaling-and-squaring
/// series fallback.  Norm preserved to 1e-12.
std::vector<cplx> apply_exp_pool(const SparseOperator& a, double theta,
                                 const std::vector<cplx>& state);

}  // namespace shellvqe
