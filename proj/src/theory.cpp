#include "gpt/theory.hpp"

#include <algorithm>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gpt/nnls.hpp"

namespace gpt {

//==========================================================================
// System types
//==========================================================================

bool operator==(const SystemType& a, const SystemType& b) {
    if (a.theory_id != b.theory_id || a.label != b.label || a.vec_dim != b.vec_dim ||
        a.hilbert_dim != b.hilbert_dim || a.factors.size() != b.factors.size())
        return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i)
        if (!(a.factors[i] == b.factors[i])) return false;
    return true;
}

TypeList flatten(const SystemType& t) {
    if (t.atomic()) return {t};
    TypeList out;
    for (const auto& f : t.factors) {
        TypeList sub = flatten(f);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

TypeList flatten(const TypeList& ts) {
    TypeList out;
    for (const auto& t : ts) {
        TypeList sub = flatten(t);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

int total_vec_dim(const TypeList& ts) {
    int d = 1;
    for (const auto& t : ts) d *= t.vec_dim;
    return d;
}

std::vector<int> vec_dims(const TypeList& ts) {
    std::vector<int> out;
    out.reserve(ts.size());
    for (const auto& t : ts) out.push_back(t.vec_dim);
    return out;
}

std::vector<int> hilbert_dims(const TypeList& ts) {
    std::vector<int> out;
    out.reserve(ts.size());
    for (const auto& t : ts) {
        if (t.theory_id != "quantum" || t.hilbert_dim <= 0)
            throw UnsupportedError("hilbert_dims: type " + t.label + " is not quantum");
        out.push_back(t.hilbert_dim);
    }
    return out;
}

std::string type_list_label(const TypeList& ts) {
    std::string s;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i) s += "*";
        s += ts[i].label;
    }
    return s.empty() ? "I" : s;
}

SystemType composite(const TypeList& factors) {
    if (factors.empty()) throw DimensionError("composite: empty factor list");
    if (factors.size() == 1) return factors.front();
    SystemType t;
    t.theory_id = factors.front().theory_id;
    t.vec_dim = 1;
    for (const auto& f : factors) {
        if (f.theory_id != t.theory_id)
            throw TheoryMismatchError("composite: factors from different theories");
        t.vec_dim *= f.vec_dim;
    }
    t.label = type_list_label(factors);
    t.factors = factors;
    return t;
}

SystemType quantum_type(int hilbert_dim) {
    if (hilbert_dim < 1) throw DimensionError("quantum_type: dimension must be >= 1");
    SystemType t;
    t.theory_id = "quantum";
    t.label = "q" + std::to_string(hilbert_dim);
    t.vec_dim = hilbert_dim * hilbert_dim;
    t.hilbert_dim = hilbert_dim;
    t.info_dim_hint = hilbert_dim;
    return t;
}

SystemType classical_type(int outcomes) {
    if (outcomes < 1) throw DimensionError("classical_type: outcomes must be >= 1");
    SystemType t;
    t.theory_id = "classical";
    t.label = "c" + std::to_string(outcomes);
    t.vec_dim = outcomes;
    t.info_dim_hint = outcomes;
    return t;
}

//==========================================================================
// Processes
//==========================================================================

double ProcessRep::scalar() const {
    if (!is_scalar()) throw Error("scalar(): process has open ports");
    return matrix(0, 0);
}

RVector ProcessRep::vec() const {
    if (!is_state()) throw Error("vec(): process is not a state");
    return matrix.col(0);
}

RVector ProcessRep::covec() const {
    if (!is_effect()) throw Error("covec(): process is not an effect");
    return matrix.row(0).transpose();
}

ProcessRep make_state(const RVector& v, TypeList types) {
    TypeList flat = flatten(types);
    if (v.size() != total_vec_dim(flat))
        throw DimensionError("make_state: vector length does not match types");
    ProcessRep p;
    p.matrix = v;
    p.out_types = std::move(flat);
    return p;
}

ProcessRep make_effect(const RVector& v, TypeList types) {
    TypeList flat = flatten(types);
    if (v.size() != total_vec_dim(flat))
        throw DimensionError("make_effect: vector length does not match types");
    ProcessRep p;
    p.matrix = v.transpose();
    p.in_types = std::move(flat);
    return p;
}

ProcessRep identity_process(const TypeList& types) {
    TypeList flat = flatten(types);
    const int d = total_vec_dim(flat);
    ProcessRep p;
    p.matrix = RMatrix::Identity(d, d);
    p.in_types = flat;
    p.out_types = flat;
    p.reversible = true;
    return p;
}

ProcessRep compose_seq(const ProcessRep& f, const ProcessRep& g) {
    if (f.out_types.size() != g.in_types.size())
        throw CompositionError("compose_seq: port count mismatch (" +
                               type_list_label(f.out_types) + " vs " +
                               type_list_label(g.in_types) + ")");
    for (std::size_t i = 0; i < f.out_types.size(); ++i)
        if (!(f.out_types[i] == g.in_types[i]))
            throw CompositionError("compose_seq: type mismatch at port " + std::to_string(i) +
                                   " (" + f.out_types[i].label + " vs " +
                                   g.in_types[i].label + ")");
    ProcessRep p;
    p.matrix = g.matrix * f.matrix;
    p.in_types = f.in_types;
    p.out_types = g.out_types;
    p.reversible = f.reversible && g.reversible;
    return p;
}

namespace {

void require_same_theory(const ProcessRep& f, const ProcessRep& g) {
    std::string fid, gid;
    for (const auto& t : f.in_types) fid = t.theory_id;
    for (const auto& t : f.out_types) fid = t.theory_id;
    for (const auto& t : g.in_types) gid = t.theory_id;
    for (const auto& t : g.out_types) gid = t.theory_id;
    if (!fid.empty() && !gid.empty() && fid != gid)
        throw TheoryMismatchError("compose_par: cannot compose " + fid + " with " + gid);
}

}  // namespace

ProcessRep compose_par(const ProcessRep& f, const ProcessRep& g) {
    require_same_theory(f, g);
    ProcessRep p;
    p.matrix = kron(f.matrix, g.matrix);
    p.in_types = f.in_types;
    p.in_types.insert(p.in_types.end(), g.in_types.begin(), g.in_types.end());
    p.out_types = f.out_types;
    p.out_types.insert(p.out_types.end(), g.out_types.begin(), g.out_types.end());
    p.reversible = f.reversible && g.reversible;
    return p;
}

//==========================================================================
// Built-in theories
//==========================================================================

const Theory& Theory::quantum() {
    static Theory th = [] {
        Theory t;
        t.id = "quantum";
        t.kind = TheoryKind::Quantum;
        return t;
    }();
    return th;
}

const Theory& Theory::classical() {
    static Theory th = [] {
        Theory t;
        t.id = "classical";
        t.kind = TheoryKind::Classical;
        return t;
    }();
    return th;
}

const Theory& Theory::gbit() {
    static Theory th = [] {
        Theory t;
        t.id = "gbit";
        t.kind = TheoryKind::Polytope;
        PolytopeSystem sys;
        sys.label = "gbit";
        sys.vec_dim = 3;
        for (int sx : {1, -1})
            for (int sy : {1, -1}) {
                RVector v(3);
                v << 1.0, double(sx), double(sy);
                sys.extreme_states.push_back(v);
            }
        for (int sgn : {1, -1}) {
            RVector ex(3), ey(3);
            ex << 0.5, 0.5 * sgn, 0.0;
            ey << 0.5, 0.0, 0.5 * sgn;
            sys.effect_generators.push_back(ex);
            sys.effect_generators.push_back(ey);
        }
        sys.unit_effect = RVector::Zero(3);
        sys.unit_effect(0) = 1.0;
        t.systems.push_back(std::move(sys));
        return t;
    }();
    return th;
}

Theory Theory::polytope_from_json(const json& spec) {
    Theory t;
    t.kind = TheoryKind::Polytope;
    t.id = spec.at("name").get<std::string>();
    if (spec.contains("kind") && spec.at("kind").get<std::string>() != "polytope")
        throw ValidationError("theory spec: kind must be \"polytope\"");
    for (const auto& js : spec.at("systems")) {
        PolytopeSystem sys;
        sys.label = js.at("label").get<std::string>();
        sys.vec_dim = js.at("vec_dim").get<int>();
        if (sys.vec_dim <= 0) throw ValidationError("theory spec: vec_dim must be positive");
        auto read_vec = [&](const json& arr) {
            RVector v(arr.size());
            for (std::size_t i = 0; i < arr.size(); ++i) v(i) = arr[i].get<double>();
            if (v.size() != sys.vec_dim)
                throw ValidationError("theory spec: vector length mismatch in " + sys.label);
            return v;
        };
        for (const auto& row : js.at("extreme_states")) sys.extreme_states.push_back(read_vec(row));
        for (const auto& row : js.at("effect_generators"))
            sys.effect_generators.push_back(read_vec(row));
        sys.unit_effect = read_vec(js.at("unit_effect"));
        for (const auto& s : sys.extreme_states)
            if (std::abs(sys.unit_effect.dot(s) - 1.0) > 1e-9)
                throw ValidationError("theory spec: unit effect must give 1 on extreme states");
        t.systems.push_back(std::move(sys));
    }
    if (t.systems.empty()) throw ValidationError("theory spec: no systems");
    return t;
}

const PolytopeSystem& Theory::polytope_system(const SystemType& t) const {
    for (const auto& sys : systems)
        if (sys.label == t.label) return sys;
    throw UnsupportedError("polytope theory " + id + " has no system " + t.label);
}

//==========================================================================
// Membership tests
//==========================================================================

ProcessRep Theory::unit_effect(const TypeList& ts) const {
    TypeList flat = flatten(ts);
    RVector u(1);
    u(0) = 1.0;
    RMatrix row = u.transpose();
    RMatrix acc = RMatrix::Ones(1, 1);
    for (const auto& t : flat) {
        if (t.theory_id != id)
            throw TheoryMismatchError("unit_effect: type " + t.label + " is not from theory " + id);
        RMatrix factor;
        switch (kind) {
            case TheoryKind::Quantum: {
                factor = RMatrix::Zero(1, t.vec_dim);
                factor(0, 0) = std::sqrt(double(t.hilbert_dim));
                break;
            }
            case TheoryKind::Classical:
                factor = RMatrix::Ones(1, t.vec_dim);
                break;
            case TheoryKind::Polytope:
                factor = polytope_system(t).unit_effect.transpose();
                break;
        }
        acc = kron(acc, factor);
    }
    ProcessRep p;
    p.matrix = acc;
    p.in_types = flat;
    return p;
}

bool Theory::is_state(const ProcessRep& s, double tol) const {
    if (!s.is_state()) return false;
    switch (kind) {
        case TheoryKind::Quantum: {
            const CMatrix rho = from_real_multi(s.vec(), hilbert_dims(s.out_types));
            if (std::abs(rho.trace().real() - 1.0) > tol) return false;
            return min_eigenvalue(rho) >= -tol;
        }
        case TheoryKind::Classical: {
            const RVector v = s.vec();
            if (v.minCoeff() < -tol) return false;
            return std::abs(v.sum() - 1.0) <= tol;
        }
        case TheoryKind::Polytope: {
            if (s.out_types.size() != 1)
                throw UnsupportedError("polytope composites are not modeled");
            const auto& sys = polytope_system(s.out_types.front());
            RMatrix a(sys.vec_dim + 1, sys.extreme_states.size());
            for (std::size_t k = 0; k < sys.extreme_states.size(); ++k) {
                a.col(k).head(sys.vec_dim) = sys.extreme_states[k];
                a(sys.vec_dim, k) = 1.0;
            }
            RVector b(sys.vec_dim + 1);
            b.head(sys.vec_dim) = s.vec();
            b(sys.vec_dim) = 1.0;
            return nonneg_solve(a, b, tol).has_value();
        }
    }
    return false;
}

bool Theory::is_effect(const ProcessRep& e, double tol) const {
    if (!e.is_effect()) return false;
    switch (kind) {
        case TheoryKind::Quantum: {
            const CMatrix f = from_real_multi(e.covec(), hilbert_dims(e.in_types));
            if (min_eigenvalue(f) < -tol) return false;
            const CMatrix complement = CMatrix::Identity(f.rows(), f.cols()) - f;
            return min_eigenvalue(complement) >= -tol;
        }
        case TheoryKind::Classical: {
            const RVector v = e.covec();
            return v.minCoeff() >= -tol && v.maxCoeff() <= 1.0 + tol;
        }
        case TheoryKind::Polytope: {
            if (e.in_types.size() != 1)
                throw UnsupportedError("polytope composites are not modeled");
            const auto& sys = polytope_system(e.in_types.front());
            RMatrix a(sys.vec_dim, sys.effect_generators.size());
            for (std::size_t k = 0; k < sys.effect_generators.size(); ++k)
                a.col(k) = sys.effect_generators[k];
            const RVector v = e.covec();
            if (!nonneg_solve(a, v, tol)) return false;
            const RVector rest = sys.unit_effect - v;
            return nonneg_solve(a, rest, tol).has_value();
        }
    }
    return false;
}

bool Theory::is_transformation(const ProcessRep& p, double tol) const {
    if (p.in_types.empty() || p.out_types.empty()) return false;
    switch (kind) {
        case TheoryKind::Quantum: {
            const CMatrix choi = channel_choi(p);
            if (min_eigenvalue(choi) < -tol) return false;
            // Trace non-increasing: Tr_out(Choi) <= I_in.
            const auto in_dims = hilbert_dims(p.in_types);
            long long n_in = 1;
            for (int d : in_dims) n_in *= d;
            const auto out_dims = hilbert_dims(p.out_types);
            long long n_out = 1;
            for (int d : out_dims) n_out *= d;
            const CMatrix reduced =
                partial_trace(choi, {static_cast<int>(n_in), static_cast<int>(n_out)}, {0});
            const CMatrix slack = CMatrix::Identity(n_in, n_in) - reduced;
            return min_eigenvalue(slack) >= -tol;
        }
        case TheoryKind::Classical: {
            if (p.matrix.minCoeff() < -tol) return false;
            return p.matrix.colwise().sum().maxCoeff() <= 1.0 + tol;
        }
        case TheoryKind::Polytope: {
            if (p.in_types.size() != 1 || p.out_types.size() != 1)
                throw UnsupportedError("polytope composites are not modeled");
            const auto& in_sys = polytope_system(p.in_types.front());
            const auto& out_sys = polytope_system(p.out_types.front());
            RMatrix a(out_sys.vec_dim, out_sys.extreme_states.size());
            for (std::size_t k = 0; k < out_sys.extreme_states.size(); ++k)
                a.col(k) = out_sys.extreme_states[k];
            for (const auto& x : in_sys.extreme_states) {
                const RVector tx = p.matrix * x;
                const double weight = out_sys.unit_effect.dot(tx);
                if (weight > 1.0 + tol || weight < -tol) return false;
                if (!nonneg_solve(a, tx, tol * std::max(1.0, tx.norm()))) return false;
            }
            return true;
        }
    }
    return false;
}

std::vector<ProcessRep> Theory::extreme_states(const SystemType& t) const {
    switch (kind) {
        case TheoryKind::Quantum:
            throw UnsupportedError("quantum state spaces have no finite extreme-point list");
        case TheoryKind::Classical: {
            std::vector<ProcessRep> out;
            for (int i = 0; i < t.vec_dim; ++i) {
                RVector v = RVector::Zero(t.vec_dim);
                v(i) = 1.0;
                out.push_back(make_state(v, {t}));
            }
            return out;
        }
        case TheoryKind::Polytope: {
            std::vector<ProcessRep> out;
            for (const auto& v : polytope_system(t).extreme_states)
                out.push_back(make_state(v, {t}));
            return out;
        }
    }
    return {};
}

std::pair<const Theory*, SystemType> resolve_builtin(const std::string& address) {
    if (address == "gbit") {
        const auto& th = Theory::gbit();
        SystemType t;
        t.theory_id = "gbit";
        t.label = "gbit";
        t.vec_dim = 3;
        t.info_dim_hint = 2;
        return {&th, t};
    }
    const auto colon = address.find(':');
    if (colon != std::string::npos) {
        const std::string head = address.substr(0, colon);
        const int n = std::atoi(address.substr(colon + 1).c_str());
        if (head == "quantum" && n >= 1) return {&Theory::quantum(), quantum_type(n)};
        if (head == "classical" && n >= 1) return {&Theory::classical(), classical_type(n)};
    }
    throw ValidationError("unknown builtin theory address: " + address +
                          " (expected quantum:d, classical:n, or gbit)");
}

std::vector<ProcessRep> product_extreme_states(const Theory& th, const TypeList& ts) {
    TypeList flat = flatten(ts);
    if (flat.empty()) throw DimensionError("product_extreme_states: empty type list");
    std::vector<ProcessRep> acc = th.extreme_states(flat.front());
    for (std::size_t k = 1; k < flat.size(); ++k) {
        std::vector<ProcessRep> next;
        for (const auto& a : acc)
            for (const auto& b : th.extreme_states(flat[k])) next.push_back(compose_par(a, b));
        acc = std::move(next);
    }
    return acc;
}

//==========================================================================
// Causality and the maximally mixed state
//==========================================================================

bool is_causal(const Theory& th, const ProcessRep& p, double tol) {
    if (p.in_types.empty() || p.out_types.empty()) return false;
    const ProcessRep u_out = th.unit_effect(p.out_types);
    const ProcessRep u_in = th.unit_effect(p.in_types);
    return (u_out.matrix * p.matrix - u_in.matrix).norm() <= tol;
}

ProcessRep max_mixed(const Theory& th, const TypeList& ts) {
    TypeList flat = flatten(ts);
    RMatrix acc = RMatrix::Ones(1, 1);
    for (const auto& t : flat) {
        RVector factor;
        switch (th.kind) {
            case TheoryKind::Quantum:
                factor = RVector::Zero(t.vec_dim);
                factor(0) = 1.0 / std::sqrt(double(t.hilbert_dim));
                break;
            case TheoryKind::Classical:
                factor = RVector::Constant(t.vec_dim, 1.0 / t.vec_dim);
                break;
            case TheoryKind::Polytope:
                throw UnsupportedError("max_mixed: only quantum and classical are supported");
        }
        acc = kron(acc, RMatrix(factor));
    }
    return make_state(acc.col(0), flat);
}

}  // namespace gpt
