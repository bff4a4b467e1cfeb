#ifndef QCSP_GADGETS_HPP
#define QCSP_GADGETS_HPP

#include "qcsp/certificate.hpp"
#include "qcsp/qhom.hpp"
#include "qcsp/structure.hpp"

#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace qcsp {

/// Pairs (a_i, b_i) of target elements; their columns u = (a_1..a_n), v = (b_1..b_n) index A^n.
using GeneratorSet = std::vector<std::pair<int, int>>;

struct GeneratorCheck {
    bool holds = true;
    /// One polymorphism g with g(u) = c, g(v) = d for each (c, d) in lexicographic order,
    /// up to the first missing pair.
    std::vector<ClassicalHom> witnesses;
    std::optional<std::pair<int, int>> missing;
};

GeneratorCheck check_generators(const Structure& a, const GeneratorSet& gs, const Limits& limits = default_limits());

/// A^n with u, v as above. Throws PreconditionViolation if the generator check fails.
/// The attached certificate is the c2 verdict from check_c2 without candidates.
GadgetSpec build_power_comm_gadget(const Structure& a, const GeneratorSet& gs,
                                   const Limits& limits = default_limits());

/// If g is A^n with distinguished (u, v) whose columns pass check_generators, those columns.
std::optional<GeneratorSet> power_generators(const GadgetSpec& g, const Structure& a,
                                             const Limits& limits = default_limits());

/// Closure theorems the target is recognised to satisfy: K_m (m >= 3) in the oracular
/// setting; odd cycles and Boolean structures without a majority polymorphism in both.
struct TheoremFlags {
    bool oracular = false;
    bool nonoracular = false;
    std::vector<std::string> tags;
};

TheoremFlags theorem_flags(const Structure& a);

struct ExtensionCheck {
    bool holds = true;
    std::optional<Tuple> missing; // first tuple with no classical extension
};

// c1 and q1 are decided exactly by classical extension search. A commuting quantum
// function on the distinguished vertices is a direct sum of classical maps; at d = 1
// this forces a classical extension of each summand, and the direct sum of those
// extensions extends the original function.

/// Every (a, b) in A^2 extends to a homomorphism G -> A with u -> a, v -> b.
ExtensionCheck check_c1(const GadgetSpec& g, const Structure& a);
/// Q_{u,a} = Q_{v,b} = I witnesses for all (a, b); the same classical search as check_c1.
ExtensionCheck check_c1_prime(const GadgetSpec& g, const Structure& a);
/// Every tuple of s extends to a homomorphism G -> A sending g_i to s_i.
ExtensionCheck check_q1(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s);
/// Restrictions of homomorphisms G -> A to the distinguished tuple are exactly s.
bool is_classical_gadget(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s);

/// Certificate for an exact extension check under the given condition name.
Certificate extension_certificate(const ExtensionCheck& check, const std::string& condition);

/// c2 (oracular) or noc2 (non-oracular). Candidates are quantum functions G => A that
/// must verify in `mode` (PreconditionViolation otherwise).
Certificate check_c2(const GadgetSpec& g, const Structure& a, const std::vector<QuantumFunction>& candidates,
                     Mode mode = Mode::Oracular);
/// q2 (oracular) or noq2 (non-oracular).
Certificate check_q2(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s,
                     const std::vector<QuantumFunction>& candidates, Mode mode = Mode::Oracular);

inline ExtensionCheck check_noc1(const GadgetSpec& g, const Structure& a) { return check_c1(g, a); }
inline ExtensionCheck check_noq1(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s)
{
    return check_q1(g, a, s);
}
inline Certificate check_noc2(const GadgetSpec& g, const Structure& a, const std::vector<QuantumFunction>& candidates)
{
    return check_c2(g, a, candidates, Mode::NonOracular);
}
inline Certificate check_noq2(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s,
                              const std::vector<QuantumFunction>& candidates)
{
    return check_q2(g, a, s, candidates, Mode::NonOracular);
}

/// Glues one copy of the commutativity gadget h onto every unordered pair of distinct
/// elements of g (u to the smaller index). Requires g to be a classical gadget for s
/// over a. The result carries a q2 certificate derived from the c2 verdict for h.
GadgetSpec build_qdef(const GadgetSpec& g, const GadgetSpec& h, const Structure& a, const std::set<Tuple>& s,
                      const Limits& limits = default_limits());

} // namespace qcsp

#endif
