#ifndef QCSP_QUANTUM_FUNCTION_HPP
#define QCSP_QUANTUM_FUNCTION_HPP

#include "qcsp/limits.hpp"
#include "qcsp/qmat.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qcsp {

/// Q : A => B over a d-dimensional space: one PVM (indexed by B) per element of A.
/// Construction does not validate; see is_quantum_function / validate.
struct QuantumFunction {
    std::vector<std::string> source;
    std::vector<std::string> target;
    std::size_t dim = 1;
    std::vector<std::vector<QMat>> proj; // proj[a][b]

    QuantumFunction() = default;
    /// All projectors zero.
    QuantumFunction(std::vector<std::string> source, std::vector<std::string> target, std::size_t dim);

    const QMat& operator()(std::size_t a, std::size_t b) const { return proj.at(a).at(b); }
    QMat& operator()(std::size_t a, std::size_t b) { return proj.at(a).at(b); }

    /// The d = 1 quantum function of a classical map.
    static QuantumFunction classical(std::vector<std::string> source, std::vector<std::string> target,
                                     const std::vector<int>& map);

    friend bool operator==(const QuantumFunction&, const QuantumFunction&) = default;
};

bool is_quantum_function(const QuantumFunction& q);
/// Throws InvalidArgument naming the first malformed PVM.
void validate(const QuantumFunction& q);

QuantumFunction direct_sum(const QuantumFunction& q, const QuantumFunction& r, const Limits& limits = default_limits());
/// (Q (x) Q')_{x,(b,c)} = Q_{x,b} (x) Q'_{x,c}; target labels "(b,c)" in lexicographic order.
QuantumFunction tensor(const QuantumFunction& q, const QuantumFunction& r, const Limits& limits = default_limits());
/// (R . Q)_{a,c} = sum_b R_{b,c} (x) Q_{a,b}; dimension dim(R) * dim(Q).
QuantumFunction compose(const QuantumFunction& r, const QuantumFunction& q, const Limits& limits = default_limits());

struct ContextualityWitness {
    std::size_t a, b, a2, b2; // [Q_{a,b}, Q_{a2,b2}] != 0
    QMat commutator;
};

/// Violating quadruples with a < a2, in lexicographic order of (a, b, a2, b2).
std::vector<ContextualityWitness> contextuality_witnesses(const QuantumFunction& q);
/// The lexicographically first violating quadruple, if any.
std::optional<ContextualityWitness> contextuality_witness(const QuantumFunction& q);
bool is_noncontextual(const QuantumFunction& q);

struct ClassicalDecomposition {
    std::vector<QMat> basis;                  // pairwise orthogonal column vectors, leading entry 1
    std::vector<std::vector<int>> components; // components[i] : A -> B, paired with basis[i]
};

/// Joint eigenbasis of a commuting family. Throws PreconditionViolation on contextual input.
ClassicalDecomposition decompose_noncontextual(const QuantumFunction& q);

/// Q_{a,b} = sum_i [h_i(a) = b] e_i e_i^T / <e_i, e_i>. The default basis is the standard one.
QuantumFunction from_classical_family(const std::vector<std::string>& source, const std::vector<std::string>& target,
                                      const std::vector<std::vector<int>>& family,
                                      const std::optional<std::vector<QMat>>& basis = std::nullopt,
                                      const Limits& limits = default_limits());
QuantumFunction from_classical_family(const std::vector<std::string>& source, const std::vector<std::string>& target,
                                      const ClassicalDecomposition& decomposition,
                                      const Limits& limits = default_limits());

} // namespace qcsp

#endif
