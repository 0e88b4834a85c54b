#ifndef GPT_THEORY_HPP
#define GPT_THEORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpt/report.hpp"
#include "gpt/tensor.hpp"

namespace gpt {

//==========================================================================
// System types
//==========================================================================

/// A system type of an operational theory. Quantum atomic types carry the
/// Hilbert dimension d (vec_dim = d^2); classical types the outcome count
/// (vec_dim = n); polytope types just the real dimension.
struct SystemType {
    std::string theory_id;
    std::string label;
    int vec_dim = 0;
    int hilbert_dim = 0;  // quantum atomic only, 0 otherwise
    std::optional<int> info_dim_hint;
    std::vector<SystemType> factors;  // nonempty => composite

    bool atomic() const { return factors.empty(); }
};

bool operator==(const SystemType& a, const SystemType& b);
inline bool operator!=(const SystemType& a, const SystemType& b) { return !(a == b); }

/// Ordered list of atomic types; the working representation of the ports
/// of a process. Composite SystemTypes flatten into their atomic factors.
using TypeList = std::vector<SystemType>;

TypeList flatten(const SystemType& t);
TypeList flatten(const TypeList& ts);
int total_vec_dim(const TypeList& ts);
std::vector<int> vec_dims(const TypeList& ts);
/// Hilbert dimensions of a quantum type list; throws UnsupportedError if a
/// factor is not quantum.
std::vector<int> hilbert_dims(const TypeList& ts);
std::string type_list_label(const TypeList& ts);
SystemType composite(const TypeList& factors);

SystemType quantum_type(int hilbert_dim);
SystemType classical_type(int outcomes);

//==========================================================================
// Processes
//==========================================================================

/// A process as a real-linear map between theory vector spaces. States have
/// no inputs (column vectors), effects no outputs (row vectors), scalars
/// neither (1x1).
struct ProcessRep {
    RMatrix matrix;  // out_dim x in_dim
    TypeList in_types;
    TypeList out_types;
    bool reversible = false;

    bool is_state() const { return in_types.empty() && !out_types.empty(); }
    bool is_effect() const { return out_types.empty() && !in_types.empty(); }
    bool is_scalar() const { return in_types.empty() && out_types.empty(); }
    double scalar() const;
    RVector vec() const;    // state coordinates
    RVector covec() const;  // effect coordinates
};

ProcessRep make_state(const RVector& v, TypeList types);
ProcessRep make_effect(const RVector& v, TypeList types);
ProcessRep identity_process(const TypeList& types);

/// g after f. Requires out_types(f) == in_types(g); CompositionError otherwise.
ProcessRep compose_seq(const ProcessRep& f, const ProcessRep& g);

/// Side-by-side composition; Kronecker product in real coordinates, type
/// lists concatenated. Cross-theory composition raises TheoryMismatchError.
ProcessRep compose_par(const ProcessRep& f, const ProcessRep& g);

//==========================================================================
// Theories
//==========================================================================

enum class TheoryKind { Quantum, Classical, Polytope };

struct PolytopeSystem {
    std::string label;
    int vec_dim = 0;
    std::vector<RVector> extreme_states;
    std::vector<RVector> effect_generators;  // generators of the effect cone
    RVector unit_effect;
};

class Theory {
public:
    std::string id;
    TheoryKind kind = TheoryKind::Quantum;
    std::vector<PolytopeSystem> systems;  // polytope theories only

    static const Theory& quantum();
    static const Theory& classical();
    static const Theory& gbit();
    static Theory polytope_from_json(const json& spec);

    ProcessRep unit_effect(const TypeList& ts) const;
    bool is_state(const ProcessRep& s, double tol = 1e-9) const;
    bool is_effect(const ProcessRep& e, double tol = 1e-9) const;
    bool is_transformation(const ProcessRep& p, double tol = 1e-9) const;

    /// Extreme states of an atomic type: classical point masses or the
    /// polytope's listed vertices. Quantum raises UnsupportedError (the
    /// quantum state space has infinitely many extreme points).
    std::vector<ProcessRep> extreme_states(const SystemType& t) const;

    const PolytopeSystem& polytope_system(const SystemType& t) const;
};

/// Look up a built-in theory/type address: "quantum:3", "classical:4", "gbit".
std::pair<const Theory*, SystemType> resolve_builtin(const std::string& address);

/// All products of per-factor extreme states (the product extreme states of
/// a composite type).
std::vector<ProcessRep> product_extreme_states(const Theory& th, const TypeList& ts);

//==========================================================================
// Theory-model operations
//==========================================================================

bool is_causal(const Theory& th, const ProcessRep& p, double tol = 1e-9);

/// I/d for quantum, uniform for classical; UnsupportedError otherwise.
ProcessRep max_mixed(const Theory& th, const TypeList& ts);

/// The maximally entangled state (1/d) sum_ij |ii><jj| on [q_d, q_d].
ProcessRep bell_state(int d);

/// Purification of a quantum state via its eigendecomposition; output lives
/// on the original ports plus one purifying port of matching total dimension.
ProcessRep purify(const ProcessRep& rho);

/// Reversible map R on the purifying ports with (1 (x) R) psi' = psi, found by
/// aligning the two Schmidt decompositions (right unitary Procrustes).
/// `n_keep` is the number of leading ports carrying the purified state.
ProcessRep connect_purifications(const ProcessRep& psi, const ProcessRep& psi_prime,
                                 std::size_t n_keep);

/// Does every state of the type admit a purification? Quantum passes on
/// sampled mixed states; classical and gbit fail with exhaustive witnesses.
VerificationReport check_purification_principle(const Theory& th, const SystemType& t,
                                                int n_samples, std::uint64_t seed);

//==========================================================================
// Quantum conversion helpers
//==========================================================================

CMatrix state_to_complex(const ProcessRep& s);
CMatrix effect_to_complex(const ProcessRep& e);
ProcessRep quantum_state(const CMatrix& rho, const TypeList& ts);
ProcessRep quantum_effect(const CMatrix& op, const TypeList& ts);

/// Real-coordinate superoperator of conjugation by a unitary.
ProcessRep quantum_channel_from_unitary(const CMatrix& u, const TypeList& ts);
ProcessRep quantum_channel_from_kraus(const std::vector<CMatrix>& kraus,
                                      const TypeList& in, const TypeList& out);

/// Complex-linear action of a quantum-process matrix on an arbitrary (not
/// necessarily Hermitian) operator, via the Hermitian/anti-Hermitian split.
CMatrix apply_superop_complex(const ProcessRep& p, const CMatrix& x);

/// Choi matrix of a quantum transformation (input ports as the first factor).
CMatrix channel_choi(const ProcessRep& p);

/// d^2 pure states spanning the Hermitian operators on C^d: basis projectors
/// plus the +/i superposition projectors for each index pair.
std::vector<CMatrix> spanning_pure_states(int d);

ProcessRep basis_state(int d, int index);          // |i><i| on q_d
ProcessRep basis_effect(int d, int index);         // Tr(|i><i| _) on q_d
ProcessRep classical_point_mass(int n, int index); // delta_i on c_n

}  // namespace gpt

#endif  // GPT_THEORY_HPP
