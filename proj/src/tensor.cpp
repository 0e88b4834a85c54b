#include "gpt/tensor.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace gpt {

Tolerances& tolerances() {
    static Tolerances tols;
    return tols;
}

//==========================================================================
// Kronecker products
//==========================================================================

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

RMatrix kron(const RMatrix& a, const RMatrix& b) {
    RMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

//==========================================================================
// Partial trace
//==========================================================================

namespace {

std::vector<int> decode_index(long long flat, const std::vector<int>& dims) {
    std::vector<int> digits(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(flat % dims[k]);
        flat /= dims[k];
    }
    return digits;
}

long long encode_index(const std::vector<int>& digits, const std::vector<int>& dims) {
    long long flat = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) flat = flat * dims[k] + digits[k];
    return flat;
}

}  // namespace

CMatrix partial_trace(const CMatrix& m, const std::vector<int>& dims,
                      const std::vector<int>& keep) {
    long long total = 1;
    for (int d : dims) {
        if (d <= 0) throw DimensionError("partial_trace: nonpositive subsystem dimension");
        total *= d;
    }
    if (m.rows() != m.cols() || m.rows() != total)
        throw DimensionError("partial_trace: matrix side does not match product of dims");
    if (keep.empty()) throw DimensionError("partial_trace: keep set must be nonempty");
    std::vector<int> sorted = keep;
    std::sort(sorted.begin(), sorted.end());
    if (std::unique(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 0 ||
        sorted.back() >= static_cast<int>(dims.size()))
        throw DimensionError("partial_trace: keep indices out of range or repeated");

    std::vector<int> kept_dims, disc;
    std::vector<bool> is_kept(dims.size(), false);
    for (int k : sorted) is_kept[k] = true;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (is_kept[k])
            kept_dims.push_back(dims[k]);
        else
            disc.push_back(static_cast<int>(k));
    }

    long long out_dim = 1;
    for (int d : kept_dims) out_dim *= d;
    CMatrix out = CMatrix::Zero(out_dim, out_dim);

    for (long long r = 0; r < total; ++r) {
        const auto rd = decode_index(r, dims);
        for (long long c = 0; c < total; ++c) {
            const auto cd = decode_index(c, dims);
            bool diagonal = true;
            for (int k : disc)
                if (rd[k] != cd[k]) {
                    diagonal = false;
                    break;
                }
            if (!diagonal) continue;
            std::vector<int> rk, ck;
            rk.reserve(sorted.size());
            ck.reserve(sorted.size());
            for (int k : sorted) {
                rk.push_back(rd[k]);
                ck.push_back(cd[k]);
            }
            out(encode_index(rk, kept_dims), encode_index(ck, kept_dims)) += m(r, c);
        }
    }
    return out;
}

//==========================================================================
// Hermitian basis and real embedding
//==========================================================================

namespace {

HermBasis build_herm_basis(int d) {
    HermBasis basis;
    basis.dim = d;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    basis.elements.push_back(CMatrix::Identity(d, d) / std::sqrt(double(d)));
    for (int k = 1; k < d; ++k) {
        for (int j = 0; j < k; ++j) {
            CMatrix sym = CMatrix::Zero(d, d);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            basis.elements.push_back(sym);
            CMatrix skew = CMatrix::Zero(d, d);
            skew(j, k) = Complex(0, -inv_sqrt2);
            skew(k, j) = Complex(0, inv_sqrt2);
            basis.elements.push_back(skew);
        }
    }
    for (int l = 1; l < d; ++l) {
        CMatrix diag = CMatrix::Zero(d, d);
        const double norm = 1.0 / std::sqrt(double(l) * (l + 1));
        for (int j = 0; j < l; ++j) diag(j, j) = norm;
        diag(l, l) = -l * norm;
        basis.elements.push_back(diag);
    }
    return basis;
}

}  // namespace

const HermBasis& herm_basis(int d) {
    if (d < 1) throw DimensionError("herm_basis: dimension must be >= 1");
    static std::map<int, HermBasis> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(d);
    if (it == cache.end()) it = cache.emplace(d, build_herm_basis(d)).first;
    return it->second;
}

RVector to_real(const CMatrix& h, const HermBasis& b) {
    if (h.rows() != b.dim || h.cols() != b.dim)
        throw DimensionError("to_real: matrix does not match basis dimension");
    if (!is_hermitian_within(h, tolerances().hermiticity))
        throw HermiticityError("to_real: input is not Hermitian within tolerance");
    RVector v(b.elements.size());
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        v(static_cast<Eigen::Index>(i)) = (b.elements[i].adjoint() * h).trace().real();
    return v;
}

CMatrix from_real(const RVector& v, const HermBasis& b) {
    if (v.size() != static_cast<Eigen::Index>(b.elements.size()))
        throw DimensionError("from_real: coordinate count does not match basis");
    CMatrix h = CMatrix::Zero(b.dim, b.dim);
    for (std::size_t i = 0; i < b.elements.size(); ++i)
        h += v(static_cast<Eigen::Index>(i)) * b.elements[i];
    return h;
}

namespace {

// Recursive product-basis projection: project onto the first factor's basis
// elements, then recurse on the residual blocks.
RVector to_real_multi_unchecked(const CMatrix& h, const std::vector<int>& dims,
                                std::size_t from) {
    const int d1 = dims[from];
    if (from + 1 == dims.size()) {
        const HermBasis& b = herm_basis(d1);
        RVector v(b.elements.size());
        for (std::size_t i = 0; i < b.elements.size(); ++i)
            v(static_cast<Eigen::Index>(i)) = (b.elements[i].adjoint() * h).trace().real();
        return v;
    }
    long long rest = 1;
    for (std::size_t k = from + 1; k < dims.size(); ++k) rest *= dims[k];
    long long rest_coords = 1;
    for (std::size_t k = from + 1; k < dims.size(); ++k)
        rest_coords *= static_cast<long long>(dims[k]) * dims[k];

    const HermBasis& b = herm_basis(d1);
    RVector out(static_cast<Eigen::Index>(d1) * d1 * rest_coords);
    for (int i = 0; i < d1 * d1; ++i) {
        const CMatrix& bi = b.elements[static_cast<std::size_t>(i)];
        CMatrix y = CMatrix::Zero(rest, rest);
        for (int a = 0; a < d1; ++a)
            for (int bb = 0; bb < d1; ++bb) {
                const Complex w = std::conj(bi(a, bb));
                if (w == Complex(0, 0)) continue;
                y += w * h.block(a * rest, bb * rest, rest, rest);
            }
        out.segment(i * rest_coords, rest_coords) =
            to_real_multi_unchecked(y, dims, from + 1);
    }
    return out;
}

CMatrix from_real_multi_impl(const RVector& v, const std::vector<int>& dims,
                             std::size_t from) {
    const int d1 = dims[from];
    if (from + 1 == dims.size()) return from_real(v, herm_basis(d1));
    long long rest = 1;
    for (std::size_t k = from + 1; k < dims.size(); ++k) rest *= dims[k];
    long long rest_coords = 1;
    for (std::size_t k = from + 1; k < dims.size(); ++k)
        rest_coords *= static_cast<long long>(dims[k]) * dims[k];

    const HermBasis& b = herm_basis(d1);
    CMatrix h = CMatrix::Zero(d1 * rest, d1 * rest);
    for (int i = 0; i < d1 * d1; ++i) {
        CMatrix block = from_real_multi_impl(v.segment(i * rest_coords, rest_coords),
                                             dims, from + 1);
        const CMatrix& bi = b.elements[static_cast<std::size_t>(i)];
        for (int a = 0; a < d1; ++a)
            for (int bb = 0; bb < d1; ++bb) {
                if (bi(a, bb) == Complex(0, 0)) continue;
                h.block(a * rest, bb * rest, rest, rest) += bi(a, bb) * block;
            }
    }
    return h;
}

}  // namespace

RVector to_real_multi(const CMatrix& h, const std::vector<int>& hilbert_dims) {
    if (hilbert_dims.empty()) throw DimensionError("to_real_multi: empty dimension list");
    long long total = 1;
    for (int d : hilbert_dims) total *= d;
    if (h.rows() != total || h.cols() != total)
        throw DimensionError("to_real_multi: matrix side does not match dims");
    if (!is_hermitian_within(h, tolerances().hermiticity))
        throw HermiticityError("to_real_multi: input is not Hermitian within tolerance");
    return to_real_multi_unchecked(h, hilbert_dims, 0);
}

CMatrix from_real_multi(const RVector& v, const std::vector<int>& hilbert_dims) {
    if (hilbert_dims.empty()) throw DimensionError("from_real_multi: empty dimension list");
    long long coords = 1;
    for (int d : hilbert_dims) coords *= static_cast<long long>(d) * d;
    if (v.size() != coords)
        throw DimensionError("from_real_multi: coordinate count does not match dims");
    return from_real_multi_impl(v, hilbert_dims, 0);
}

//==========================================================================
// Seeded sampling
//==========================================================================

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t salt) {
    std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

CMatrix complex_gaussian(int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    CMatrix g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im) / std::sqrt(2.0);
        }
    return g;
}

}  // namespace

CMatrix random_unitary(int d, std::uint64_t seed) {
    if (d < 1) throw DimensionError("random_unitary: dimension must be >= 1");
    CMatrix g = complex_gaussian(d, d, seed);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < d; ++i) {
        const Complex rii = r(i, i);
        const double mag = std::abs(rii);
        q.col(i) *= (mag > 1e-300) ? rii / mag : Complex(1, 0);
    }
    return q;
}

CMatrix random_density(int d, int rank, std::uint64_t seed) {
    if (d < 1 || rank < 1 || rank > d)
        throw DimensionError("random_density: need 1 <= rank <= d");
    CMatrix g = complex_gaussian(d, rank, seed);
    CMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return (rho + rho.adjoint()) / 2.0;
}

CMatrix random_pure(int d, std::uint64_t seed) { return random_density(d, 1, seed); }

//==========================================================================
// Helpers
//==========================================================================

double frob_dist(const CMatrix& a, const CMatrix& b) { return (a - b).norm(); }
double frob_dist(const RMatrix& a, const RMatrix& b) { return (a - b).norm(); }

bool is_hermitian_within(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).norm() <= tol;
}

double min_eigenvalue(const CMatrix& hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

RVector permute_ports(const RVector& v, const std::vector<int>& dims,
                      const std::vector<int>& perm) {
    if (perm.size() != dims.size())
        throw DimensionError("permute_ports: permutation length mismatch");
    long long total = 1;
    for (int d : dims) total *= d;
    if (v.size() != total) throw DimensionError("permute_ports: vector length mismatch");

    std::vector<int> new_dims(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];

    RVector out(total);
    for (long long flat = 0; flat < total; ++flat) {
        const auto nd = decode_index(flat, new_dims);
        std::vector<int> od(dims.size());
        for (std::size_t k = 0; k < perm.size(); ++k) od[perm[k]] = nd[k];
        out(flat) = v(encode_index(od, dims));
    }
    return out;
}

RMatrix port_permutation_matrix(const std::vector<int>& dims,
                                const std::vector<int>& perm) {
    long long total = 1;
    for (int d : dims) total *= d;
    std::vector<int> new_dims(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
    RMatrix p = RMatrix::Zero(total, total);
    for (long long flat = 0; flat < total; ++flat) {
        const auto nd = decode_index(flat, new_dims);
        std::vector<int> od(dims.size());
        for (std::size_t k = 0; k < perm.size(); ++k) od[perm[k]] = nd[k];
        p(flat, encode_index(od, dims)) = 1.0;
    }
    return p;
}

RVector apply_front(const RMatrix& m, const RVector& v, int front) {
    if (front <= 0 || v.size() % front != 0)
        throw DimensionError("apply_front: vector length not divisible by front block");
    if (m.cols() != front) throw DimensionError("apply_front: matrix column mismatch");
    const long long rest = v.size() / front;
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
        vm(v.data(), front, rest);
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> res = m * vm;
    return Eigen::Map<const RVector>(res.data(), res.size());
}

}  // namespace gpt
