#ifndef QCSP_QHOM_HPP
#define QCSP_QHOM_HPP

#include "qcsp/quantum_function.hpp"
#include "qcsp/structure.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcsp {

/// Oracular homomorphisms satisfy QH1 and QH2; non-oracular ones QH1 only.
enum class Mode { Oracular, NonOracular };

std::string_view to_string(Mode mode);
std::optional<Mode> mode_from_string(std::string_view text);

struct QHomCandidate {
    Structure source;
    Structure target;
    QuantumFunction qf;
    Mode mode = Mode::Oracular;
};

/// Throws InvalidArgument unless signatures agree, the labels of `qf` are the
/// domains of source and target, and `qf` is a quantum function.
void validate(const QHomCandidate& c);

struct QH1Violation {
    std::size_t symbol;
    Tuple source_tuple;
    Tuple target_tuple; // not in the target relation
    QMat product;       // Q_{a1,b1} ... Q_{ar,br}, nonzero
};

struct QH2Violation {
    int a, a2;
    int b, b2;
    QMat commutator; // [Q_{a,b}, Q_{a2,b2}], nonzero
};

struct VerificationReport {
    bool pass = true;
    std::vector<QH1Violation> qh1;
    std::vector<QH2Violation> qh2;
};

struct VerifyOptions {
    unsigned jobs = 1;
};

/// QH1 for every source tuple against every non-tuple of the target (position-ordered
/// products), and in oracular mode QH2 along Gaifman edges in both orientations.
/// Witnesses are listed in lexicographic order.
VerificationReport verify(const QHomCandidate& c, const VerifyOptions& options = {});

/// verify with source = A^n and target = A.
VerificationReport is_quantum_polymorphism(const Structure& a, int n, const QuantumFunction& qf,
                                           Mode mode = Mode::Oracular, const VerifyOptions& options = {});

struct ClosureResult {
    bool in_closure = false;
    std::optional<ClassicalDecomposition> decomposition;
    std::optional<ContextualityWitness> witness;
};

/// Non-contextual candidates decompose into classical homomorphisms; each
/// component is checked. Throws PreconditionViolation if one is not a homomorphism.
ClosureResult in_quantum_closure(const QHomCandidate& c);

/// Sum over x of Q_{x,y} is the identity for every y. Requires source and target to be
/// the same core and the candidate to be non-contextual (PreconditionViolation otherwise).
bool core_column_sums(const QHomCandidate& c);

struct WalkViolation {
    std::size_t symbol;
    int length;
    int x, x2; // an l-walk x -> x2 exists in the source
    int y, y2; // no l-walk y -> y2 in the target
    QMat product;
};

/// Q_{x,y} Q_{x2,y2} = 0 whenever the source has a directed l-walk x -> x2 and the
/// target has none from y to y2, for 1 <= l <= max_length. Walks are taken per symbol.
std::vector<WalkViolation> walk_orthogonality_check(const QHomCandidate& c, int max_length);

struct Bifurcation {
    std::vector<int> path; // x_0 .. x_w
    int a0 = 0, a0_alt = 0;
    std::vector<int> inner; // a_1 .. a_{w-1}
    int aw = 0, aw_alt = 0;

    std::size_t length() const noexcept { return path.empty() ? 0 : path.size() - 1; }
    friend bool operator==(const Bifurcation&, const Bifurcation&) = default;
};

/// Lexicographically least bifurcation over simple paths of length 2..diameter of
/// the undirected reduct, or none. Requires a binary signature and a connected source.
std::optional<Bifurcation> find_bifurcation(const QHomCandidate& c);
/// Checks the defining conditions of a bifurcation directly.
bool is_bifurcation(const QHomCandidate& c, const Bifurcation& b);

} // namespace qcsp

#endif
