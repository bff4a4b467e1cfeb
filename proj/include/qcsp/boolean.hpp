#ifndef QCSP_BOOLEAN_HPP
#define QCSP_BOOLEAN_HPP

#include "qcsp/quantum_function.hpp"
#include "qcsp/structure.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcsp {

// Boolean tuples are bitmasks read as binary strings: position 1 is the most
// significant bit, so "100" is 4. The same value is the element index of the
// tuple in a direct power of a two-element structure, and the subset
// S = { i : s_i = 1 } is stored under that index as well.

using Mask = std::uint32_t;

Mask parse_mask(std::string_view bits);
std::string mask_string(Mask mask, int arity);
/// Power index of the subset S of [n] (elements 1-based).
Mask subset_mask(int n, std::initializer_list<int> elements);
/// "{1,2}" for the subset stored under `mask`.
std::string subset_string(Mask mask, int n);

struct BoolRelation {
    int arity = 0;
    std::set<Mask> masks;

    friend bool operator==(const BoolRelation&, const BoolRelation&) = default;
};

BoolRelation r_one_in_k(int k);
BoolRelation translate(const BoolRelation& r, Mask t);
BoolRelation translate(const BoolRelation& r, std::string_view t);
/// Projection onto the listed coordinates (1-based, in the given order).
BoolRelation projection(const BoolRelation& r, const std::vector<int>& coordinates);

struct MajorityCheck {
    bool preserved = true;
    std::array<Mask, 3> witness{}; // tuples of r whose majority leaves r
    Mask image = 0;
};

MajorityCheck majority_preserves(const BoolRelation& r);
/// Coordinates are 1-based with 1 <= i < j <= arity.
bool binary_projection_full(const BoolRelation& r, int i, int j);
bool has_full_binary_projection(const BoolRelation& r);
/// Not majority-preserved, every proper projection majority-preserved, no full binary projection.
bool property_triple(const BoolRelation& r);
/// The least t with r = translate(R_{1/k}, t), if any.
std::optional<Mask> classify_translate(const BoolRelation& r);

/// ({0,1}; R) with the relation stored as tuples.
Structure boolean_structure(const BoolRelation& r, const std::string& symbol = "R");
/// O_t: the t-translate of 1-in-k.
Structure o_t(int k, Mask t);
/// ({0,1}; S00, S11, S10) with S_ab = {0,1}^2 minus (a,b).
Structure build_b();

/// Quantum function {0,1}^n => {0,1} stored by its label-1 projectors Q_S;
/// the label-0 projector is I - Q_S.
struct SubsetIndexedQF {
    int n = 0;
    std::size_t dim = 1;
    std::vector<QMat> q; // indexed by subset mask

    QMat& operator[](Mask s) { return q.at(s); }
    const QMat& operator[](Mask s) const { return q.at(s); }

    QuantumFunction to_quantum_function() const;
    static SubsetIndexedQF from_quantum_function(const QuantumFunction& qf, int n);

    friend bool operator==(const SubsetIndexedQF&, const SubsetIndexedQF&) = default;
};

struct Polys100Report {
    bool ok = true;
    std::vector<std::string> failures;
};

/// Checks the four identities for non-oracular quantum polymorphisms of O_{(1,0,0)}:
/// disjoint S,T give Q_S Q_T = 0 and Q_{S u T} = Q_{S u T}(Q_S + Q_T); Q_S = Q_{S u T} Q_S;
/// Q_S = sum of Q_{i} over i in S. PreconditionViolation if Q fails verification.
Polys100Report check_polys100(const SubsetIndexedQF& q);

/// Unordered pairs S < T of subsets of [n] such that neither (S,T) nor (T,S) lies in a relation of B^n.
std::vector<std::pair<Mask, Mask>> forced_commutation_cover(int n);

/// Arity-4 quantum polymorphism of B: Q_T = I for |T| >= 3, Q_{12} = A, Q_{13} = B,
/// Q_{14} = C, and Q_T = I - Q_{[4] \ T} otherwise.
SubsetIndexedQF build_arity4_contextual(const QMat& a, const QMat& b, const QMat& c);
/// Default inputs diag(1,0), (1/2)[[1,1],[1,1]], (1/2)[[1,-1],[-1,1]].
SubsetIndexedQF build_arity4_contextual();

/// (flip Q)_S = I - Q_{complement of S}.
SubsetIndexedQF flip_dual(const SubsetIndexedQF& q);

// pp-definitions used in the closure arguments for translates of 1-in-k.

/// a = 0 as R(a,...,a) over O_{(1,0,...,0)} of arity k.
PPFormula pp_zero(int k);
/// R_{(1,0,0)}(x,y,z) as R(x,y,z,w,...,w) with R(w,...,w) over O_{(1,0,...,0)}, k >= 3.
PPFormula pp_r100(int k);
/// R_t(x,...,x,y,...,y) with the first l+1 places x, over O_t for t = 1^l 0^{k-l}.
PPFormula pp_neq_atom(int k, int l);

} // namespace qcsp

#endif
