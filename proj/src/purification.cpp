#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gpt/theory.hpp"

namespace gpt {

//==========================================================================
// Quantum conversion helpers
//==========================================================================

CMatrix state_to_complex(const ProcessRep& s) {
    if (!s.is_state()) throw StateError("state_to_complex: process is not a state");
    return from_real_multi(s.vec(), hilbert_dims(s.out_types));
}

CMatrix effect_to_complex(const ProcessRep& e) {
    if (!e.is_effect()) throw StateError("effect_to_complex: process is not an effect");
    return from_real_multi(e.covec(), hilbert_dims(e.in_types));
}

ProcessRep quantum_state(const CMatrix& rho, const TypeList& ts) {
    TypeList flat = flatten(ts);
    return make_state(to_real_multi(rho, hilbert_dims(flat)), flat);
}

ProcessRep quantum_effect(const CMatrix& op, const TypeList& ts) {
    TypeList flat = flatten(ts);
    return make_effect(to_real_multi(op, hilbert_dims(flat)), flat);
}

ProcessRep quantum_channel_from_kraus(const std::vector<CMatrix>& kraus, const TypeList& in,
                                      const TypeList& out) {
    TypeList in_flat = flatten(in);
    TypeList out_flat = flatten(out);
    const auto in_dims = hilbert_dims(in_flat);
    const auto out_dims = hilbert_dims(out_flat);
    const int n_in = total_vec_dim(in_flat);
    const int n_out = total_vec_dim(out_flat);

    ProcessRep p;
    p.matrix = RMatrix::Zero(n_out, n_in);
    p.in_types = in_flat;
    p.out_types = out_flat;
    RVector unit = RVector::Zero(n_in);
    for (int j = 0; j < n_in; ++j) {
        unit(j) = 1.0;
        const CMatrix bj = from_real_multi(unit, in_dims);
        unit(j) = 0.0;
        CMatrix image = CMatrix::Zero(bj.rows(), bj.rows());
        for (const auto& k : kraus) image += k * bj * k.adjoint();
        p.matrix.col(j) = to_real_multi(image, out_dims);
    }
    return p;
}

ProcessRep quantum_channel_from_unitary(const CMatrix& u, const TypeList& ts) {
    ProcessRep p = quantum_channel_from_kraus({u}, ts, ts);
    p.reversible = true;
    return p;
}

CMatrix apply_superop_complex(const ProcessRep& p, const CMatrix& x) {
    const auto in_dims = hilbert_dims(p.in_types);
    const auto out_dims = hilbert_dims(p.out_types);
    const CMatrix herm = (x + x.adjoint()) / 2.0;
    const CMatrix skew = (x - x.adjoint()) / Complex(0, 2);
    const CMatrix out_h = from_real_multi(p.matrix * to_real_multi(herm, in_dims), out_dims);
    const CMatrix out_s = from_real_multi(p.matrix * to_real_multi(skew, in_dims), out_dims);
    return out_h + Complex(0, 1) * out_s;
}

CMatrix channel_choi(const ProcessRep& p) {
    const auto in_dims = hilbert_dims(p.in_types);
    long long n_in = 1;
    for (int d : in_dims) n_in *= d;
    const auto out_dims = hilbert_dims(p.out_types);
    long long n_out = 1;
    for (int d : out_dims) n_out *= d;

    CMatrix choi = CMatrix::Zero(n_in * n_out, n_in * n_out);
    for (long long i = 0; i < n_in; ++i)
        for (long long j = 0; j < n_in; ++j) {
            CMatrix eij = CMatrix::Zero(n_in, n_in);
            eij(i, j) = 1.0;
            choi.block(i * n_out, j * n_out, n_out, n_out) = apply_superop_complex(p, eij);
        }
    return choi;
}

std::vector<CMatrix> spanning_pure_states(int d) {
    std::vector<CMatrix> out;
    for (int j = 0; j < d; ++j) {
        CMatrix m = CMatrix::Zero(d, d);
        m(j, j) = 1.0;
        out.push_back(m);
    }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CVector plus = CVector::Zero(d);
            plus(j) = 1.0 / std::sqrt(2.0);
            plus(k) = 1.0 / std::sqrt(2.0);
            out.push_back(plus * plus.adjoint());
            CVector plus_i = CVector::Zero(d);
            plus_i(j) = 1.0 / std::sqrt(2.0);
            plus_i(k) = Complex(0, 1.0 / std::sqrt(2.0));
            out.push_back(plus_i * plus_i.adjoint());
        }
    return out;
}

ProcessRep basis_state(int d, int index) {
    CMatrix m = CMatrix::Zero(d, d);
    m(index, index) = 1.0;
    return quantum_state(m, {quantum_type(d)});
}

ProcessRep basis_effect(int d, int index) {
    CMatrix m = CMatrix::Zero(d, d);
    m(index, index) = 1.0;
    return quantum_effect(m, {quantum_type(d)});
}

ProcessRep classical_point_mass(int n, int index) {
    RVector v = RVector::Zero(n);
    v(index) = 1.0;
    return make_state(v, {classical_type(n)});
}

//==========================================================================
// Bell states and purification
//==========================================================================

ProcessRep bell_state(int d) {
    if (d < 2) throw DimensionError("bell_state: dimension must be >= 2");
    CMatrix rho = CMatrix::Zero(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho(i * d + i, j * d + j) = 1.0 / d;
    return quantum_state(rho, {quantum_type(d), quantum_type(d)});
}

ProcessRep purify(const ProcessRep& rho) {
    if (!Theory::quantum().is_state(rho, 1e-8))
        throw StateError("purify: input is not a valid quantum state");
    const CMatrix r = state_to_complex(rho);
    const long long n = r.rows();

    Eigen::SelfAdjointEigenSolver<CMatrix> es(r);
    CVector psi = CVector::Zero(n * n);
    for (long long i = 0; i < n; ++i) {
        const double p = std::max(es.eigenvalues()(i), 0.0);
        if (p <= 0) continue;
        const CVector v = es.eigenvectors().col(i);
        for (long long a = 0; a < n; ++a) psi(a * n + i) += std::sqrt(p) * v(a);
    }
    const CMatrix pure = psi * psi.adjoint();

    TypeList out = rho.out_types;
    out.push_back(quantum_type(static_cast<int>(n)));
    return quantum_state(pure, out);
}

namespace {

// Top eigenvector of a (numerically) rank-1 density matrix; throws StateError
// when the second eigenvalue exceeds the purity tolerance.
CVector pure_state_vector(const CMatrix& rho, const char* who) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho);
    const auto& ev = es.eigenvalues();
    const long long n = rho.rows();
    if (n >= 2 && ev(n - 2) > 1e-8)
        throw StateError(std::string(who) + ": state is not pure (second eigenvalue " +
                         std::to_string(ev(n - 2)) + ")");
    return es.eigenvectors().col(n - 1);
}

}  // namespace

ProcessRep connect_purifications(const ProcessRep& psi, const ProcessRep& psi_prime,
                                 std::size_t n_keep) {
    if (!psi.is_state() || !psi_prime.is_state())
        throw StateError("connect_purifications: inputs must be states");
    if (psi.out_types.size() != psi_prime.out_types.size() || n_keep == 0 ||
        n_keep >= psi.out_types.size())
        throw DimensionError("connect_purifications: bad type split");
    for (std::size_t i = 0; i < psi.out_types.size(); ++i)
        if (!(psi.out_types[i] == psi_prime.out_types[i]))
            throw CompositionError("connect_purifications: type lists differ");

    const auto dims = hilbert_dims(psi.out_types);
    long long da = 1, db = 1;
    for (std::size_t i = 0; i < dims.size(); ++i)
        (i < n_keep ? da : db) *= dims[i];

    const CMatrix rho = state_to_complex(psi);
    const CMatrix rho_p = state_to_complex(psi_prime);
    const CVector v = pure_state_vector(rho, "connect_purifications");
    const CVector vp = pure_state_vector(rho_p, "connect_purifications");

    CMatrix m(da, db), mp(da, db);
    for (long long a = 0; a < da; ++a)
        for (long long b = 0; b < db; ++b) {
            m(a, b) = v(a * db + b);
            mp(a, b) = vp(a * db + b);
        }

    const double marg_res = (m * m.adjoint() - mp * mp.adjoint()).norm();
    if (marg_res > 1e-9)
        throw NotCopurifyingError("connect_purifications: marginals differ (residual " +
                                  std::to_string(marg_res) + ")");

    // Right unitary Procrustes: the q minimizing ||mp q - m|| is the unitary
    // polar factor of mp^dag m. Degenerate Schmidt blocks are aligned by the
    // same SVD; the result is then one valid choice among many.
    Eigen::JacobiSVD<CMatrix> svd(mp.adjoint() * m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const CMatrix q = svd.matrixU() * svd.matrixV().adjoint();
    const CMatrix r_c = q.transpose();

    const CMatrix lift = kron(CMatrix::Identity(da, da), r_c);
    const double recon = (lift * rho_p * lift.adjoint() - rho).norm();
    if (recon > 1e-8)
        throw NotCopurifyingError(
            "connect_purifications: no reversible connector within tolerance (residual " +
            std::to_string(recon) + ")");

    TypeList purifier(psi.out_types.begin() + n_keep, psi.out_types.end());
    return quantum_channel_from_unitary(r_c, purifier);
}

//==========================================================================
// Purification principle check
//==========================================================================

namespace {

void check_quantum_purification(const Theory& th, const SystemType& t, int n_samples,
                                std::uint64_t seed, VerificationReport& report) {
    const int d = t.hilbert_dim;
    double max_roundtrip = 0.0;
    double max_impurity = 0.0;
    for (int k = 0; k < n_samples; ++k) {
        const int rank = d >= 2 ? 2 + (k % (d - 1)) : 1;
        const CMatrix rho = random_density(d, rank, mix_seed(seed, k));
        const ProcessRep state = quantum_state(rho, {t});
        const ProcessRep pure = purify(state);

        const CMatrix big = state_to_complex(pure);
        const CMatrix marginal = partial_trace(big, {d, d}, {0});
        max_roundtrip = std::max(max_roundtrip, (marginal - rho).norm());

        Eigen::SelfAdjointEigenSolver<CMatrix> es(big, Eigen::EigenvaluesOnly);
        max_impurity = std::max(max_impurity, es.eigenvalues()(big.rows() - 2));
    }
    report.add(CheckResult::make("purification." + t.label + ".roundtrip",
                                 "marginal of the dilation returns the state", max_roundtrip,
                                 1e-10));
    report.add(CheckResult::make("purification." + t.label + ".dilation-pure",
                                 "the dilation is rank one", max_impurity, 1e-8));
}

// For theories with finitely many pure states, every pure bipartite state is
// a product of per-factor extreme states; their marginals are pure, so no
// mixed state has a purification. Enumerate and exhibit the witness.
void check_finite_purification(const Theory& th, const SystemType& t,
                               VerificationReport& report) {
    const TypeList pair{t, t};
    const auto products = product_extreme_states(th, pair);
    const ProcessRep u = th.unit_effect({t});

    // Marginals of all pure bipartite candidates are extreme single-system states.
    double max_marginal_mixedness = 0.0;
    const auto singles = th.extreme_states(t);
    std::vector<RVector> marginals;
    for (const auto& s : products) {
        const ProcessRep marg = compose_seq(s, compose_par(identity_process({t}), u));
        double best = 1e300;
        for (const auto& ext : singles) best = std::min(best, (marg.vec() - ext.vec()).norm());
        max_marginal_mixedness = std::max(max_marginal_mixedness, best);
        marginals.push_back(marg.vec());
    }
    report.add(CheckResult::make("purification." + t.label + ".pure-marginals",
                                 "every pure bipartite state has pure marginals",
                                 max_marginal_mixedness, 1e-9));

    // The maximally mixed single-system state is not the marginal of any of them.
    RVector target;
    if (th.kind == TheoryKind::Classical)
        target = RVector::Constant(t.vec_dim, 1.0 / t.vec_dim);
    else {
        target = RVector::Zero(t.vec_dim);
        const auto& sys = th.polytope_system(t);
        for (const auto& x : sys.extreme_states) target += x;
        target /= double(sys.extreme_states.size());
    }
    double closest = 1e300;
    for (const auto& m : marginals) closest = std::min(closest, (m - target).norm());

    CheckResult exists;
    exists.name = "purification." + t.label + ".exists";
    exists.anchor = "every state has a pure bipartite dilation";
    exists.residual = closest;
    exists.tolerance = 1e-9;
    exists.pass = closest <= 1e-9;
    json witness;
    witness["unpurifiable_state"] = std::vector<double>(target.data(), target.data() + target.size());
    witness["pure_bipartite_candidates"] = products.size();
    witness["note"] = "all candidate marginals are extreme points";
    exists.witness = witness;
    report.add(std::move(exists));
}

}  // namespace

VerificationReport check_purification_principle(const Theory& th, const SystemType& t,
                                                int n_samples, std::uint64_t seed) {
    VerificationReport report;
    report.seed = seed;
    switch (th.kind) {
        case TheoryKind::Quantum:
            check_quantum_purification(th, t, n_samples, seed, report);
            break;
        case TheoryKind::Classical:
        case TheoryKind::Polytope:
            check_finite_purification(th, t, report);
            break;
    }
    return report;
}

}  // namespace gpt
