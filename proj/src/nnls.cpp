#include "gpt/nnls.hpp"

#include <optional>
#include <vector>

#include <Eigen/QR>

namespace gpt {

namespace {

// Least squares over the passive column subset.
RVector solve_subset(const RMatrix& a, const RVector& b, const std::vector<int>& passive) {
    RMatrix ap(a.rows(), passive.size());
    for (std::size_t k = 0; k < passive.size(); ++k) ap.col(k) = a.col(passive[k]);
    return ap.colPivHouseholderQr().solve(b);
}

}  // namespace

RVector nnls(const RMatrix& a, const RVector& b, int max_iter) {
    const int n = static_cast<int>(a.cols());
    if (max_iter <= 0) max_iter = 3 * n + 30;

    RVector x = RVector::Zero(n);
    std::vector<bool> passive(n, false);
    const double wtol = 1e-12 * std::max(1.0, (a.transpose() * b).cwiseAbs().maxCoeff());

    for (int outer = 0; outer < max_iter; ++outer) {
        const RVector w = a.transpose() * (b - a * x);
        int best = -1;
        double best_w = wtol;
        for (int i = 0; i < n; ++i)
            if (!passive[i] && w(i) > best_w) {
                best_w = w(i);
                best = i;
            }
        if (best < 0) break;
        passive[best] = true;

        for (int inner = 0; inner < max_iter; ++inner) {
            std::vector<int> pidx;
            for (int i = 0; i < n; ++i)
                if (passive[i]) pidx.push_back(i);
            if (pidx.empty()) break;
            const RVector z = solve_subset(a, b, pidx);

            double zmin = 0.0;
            for (std::size_t k = 0; k < pidx.size(); ++k) zmin = std::min(zmin, z(k));
            if (zmin > -1e-13) {
                x.setZero();
                for (std::size_t k = 0; k < pidx.size(); ++k) x(pidx[k]) = std::max(z(k), 0.0);
                break;
            }
            // Step back to the boundary and drop the binding columns.
            double alpha = 1.0;
            for (std::size_t k = 0; k < pidx.size(); ++k)
                if (z(k) <= 0.0) {
                    const double xi = x(pidx[k]);
                    if (xi - z(k) > 0) alpha = std::min(alpha, xi / (xi - z(k)));
                }
            for (std::size_t k = 0; k < pidx.size(); ++k) {
                const int i = pidx[k];
                x(i) += alpha * (z(k) - x(i));
                if (x(i) <= 1e-13) {
                    x(i) = 0.0;
                    passive[i] = false;
                }
            }
        }
    }
    return x;
}

std::optional<RVector> nonneg_solve(const RMatrix& a, const RVector& b, double tol) {
    const RVector x = nnls(a, b);
    if ((a * x - b).norm() <= tol) return x;
    return std::nullopt;
}

}  // namespace gpt
