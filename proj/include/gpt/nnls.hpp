#ifndef GPT_NNLS_HPP
#define GPT_NNLS_HPP

#include "gpt/tensor.hpp"

namespace gpt {

/// Lawson-Hanson active-set solver for  min ||A x - b||  s.t.  x >= 0.
/// Exact (finite) for the small dense systems used here.
RVector nnls(const RMatrix& a, const RVector& b, int max_iter = 0);

/// Feasibility of  A x = b, x >= 0  up to the given residual tolerance.
/// Returns the solution when feasible.
std::optional<RVector> nonneg_solve(const RMatrix& a, const RVector& b, double tol);

}  // namespace gpt

#endif  // GPT_NNLS_HPP
