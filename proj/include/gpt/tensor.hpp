#ifndef GPT_TENSOR_HPP
#define GPT_TENSOR_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gpt/errors.hpp"

namespace gpt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Global numeric tolerances. `matrix_eq` is the Frobenius residual below
/// which two matrices count as equal; overridable from the CLI.
struct Tolerances {
    double matrix_eq = 1e-9;
    double hermiticity = 1e-10;
};

Tolerances& tolerances();

//==========================================================================
// Kronecker products and partial traces
//==========================================================================

/// Kronecker product, left argument is the slower-varying index:
/// |i> (x) |j|  ->  index i*cols_b + j.
CMatrix kron(const CMatrix& a, const CMatrix& b);
RMatrix kron(const RMatrix& a, const RMatrix& b);

/// Trace out the subsystems NOT listed in `keep`. `dims` are the
/// subsystem dimensions (slowest first); `m` must be square with side
/// equal to their product. `keep` holds subsystem indices, ascending.
CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep);

//==========================================================================
// Hermitian operator basis and the real embedding
//==========================================================================

/// Orthonormal Hermitian basis of d x d operators: normalized identity
/// first, then the generalized Gell-Mann elements. All elements have unit
/// Hilbert-Schmidt norm and are pairwise trace-orthogonal.
struct HermBasis {
    int dim = 0;
    std::vector<CMatrix> elements;
};

/// Cached basis for dimension d (>= 1).
const HermBasis& herm_basis(int d);

/// Coordinates of a Hermitian matrix over `herm_basis(d)`. Throws
/// HermiticityError when the anti-Hermitian part exceeds tolerance.
RVector to_real(const CMatrix& h, const HermBasis& b);
CMatrix from_real(const RVector& v, const HermBasis& b);

/// Same embedding on a tensor-product system: the basis is the ordered
/// product of the per-factor bases, first factor slowest. `hilbert_dims`
/// lists the factor dimensions.
RVector to_real_multi(const CMatrix& h, const std::vector<int>& hilbert_dims);
CMatrix from_real_multi(const RVector& v, const std::vector<int>& hilbert_dims);

//==========================================================================
// Seeded random sampling
//==========================================================================

/// Haar-random unitary via QR of a complex Gaussian matrix with diagonal
/// phase correction. Deterministic for a given seed.
CMatrix random_unitary(int d, std::uint64_t seed);

/// Random density matrix of the given rank (Wishart-style GG^dag, normalized).
CMatrix random_density(int d, int rank, std::uint64_t seed);

/// Rank-1 projector onto a Haar-random pure state.
CMatrix random_pure(int d, std::uint64_t seed);

/// Derive an independent stream seed from a base seed and an index.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt);

//==========================================================================
// Small numeric helpers shared across modules
//==========================================================================

double frob_dist(const CMatrix& a, const CMatrix& b);
double frob_dist(const RMatrix& a, const RMatrix& b);

bool is_hermitian_within(const CMatrix& m, double tol);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const CMatrix& hermitian);

/// Reorder tensor factors of a flat vector. `perm[k]` is the old position
/// of the port that ends up at new position k; `dims` in old order.
RVector permute_ports(const RVector& v, const std::vector<int>& dims,
                      const std::vector<int>& perm);

/// The permutation as an explicit 0/1 matrix (w = P v).
RMatrix port_permutation_matrix(const std::vector<int>& dims,
                                const std::vector<int>& perm);

/// Apply M to the leading `front` block of v (v has length front * rest),
/// equivalent to kron(M, I_rest) * v without forming the product.
RVector apply_front(const RMatrix& m, const RVector& v, int front);

}  // namespace gpt

#endif  // GPT_TENSOR_HPP
