#ifndef QCSP_REDUCE_HPP
#define QCSP_REDUCE_HPP

#include "qcsp/certificate.hpp"
#include "qcsp/qhom.hpp"
#include "qcsp/structure.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qcsp {

/// Gadget substitution: one gadget over A per symbol of the source signature, plus
/// a commutativity gadget for the non-oracular compiler.
struct ReductionRecipe {
    Signature source_signature;
    std::map<std::string, GadgetSpec> gadgets;
    std::optional<GadgetSpec> comm_gadget;
    Mode mode = Mode::Oracular;
    /// When present, certificates are derived for the gadgets over this target.
    std::optional<Structure> target;

    /// Throws InvalidArgument on missing gadgets, arity or signature mismatches, or a
    /// non-oracular recipe without a commutativity gadget.
    void validate() const;
};

struct CompileOptions {
    /// One commutativity-gadget copy per unordered Gaifman pair instead of per directed edge.
    bool dedupe_pairs = false;
};

struct CompiledInstance {
    Structure instance;
    /// For each output element, the origin tags glued into it; the first one names it.
    std::vector<std::vector<std::string>> provenance;
    /// True when every gadget carries a positive certificate for the recipe's mode.
    bool certified = false;
    /// (subject, certificate) with subjects "gadget:<symbol>" and "comm".
    std::vector<std::pair<std::string, Certificate>> certificates;
};

/// Y = X plus one gadget copy per tuple, distinguished copies glued to the tuple entries.
CompiledInstance compile_oracular(const Structure& x, const ReductionRecipe& recipe,
                                  const Limits& limits = default_limits());
/// As compile_oracular, plus one copy of H per directed Gaifman edge (x, y) of X with
/// u glued to x and v glued to y.
CompiledInstance compile_nonoracular(const Structure& x, const ReductionRecipe& recipe,
                                     const CompileOptions& options = {}, const Limits& limits = default_limits());
/// Dispatches on recipe.mode.
CompiledInstance compile(const Structure& x, const ReductionRecipe& recipe, const CompileOptions& options = {},
                         const Limits& limits = default_limits());

/// Adds y_4..y_m, makes {x, y_4..y_m} a clique for every vertex x, then glues a copy of H
/// onto every unordered pair {y_i, w} of distinct vertices with u at y_i.
CompiledInstance clique_lift(const Structure& x, int m, const GadgetSpec& h, const Limits& limits = default_limits());

struct EquivalenceResult {
    bool equivalent = false;
    bool source_maps = false;   // X -> B
    bool compiled_maps = false; // compile(X) -> A
};

/// (X -> B) iff (compile(X) -> A), by classical search with the configured node budget.
EquivalenceResult classical_equivalence_check(const Structure& x, const ReductionRecipe& recipe, const Structure& b,
                                              const Structure& a, const CompileOptions& options = {},
                                              const Limits& limits = default_limits());

} // namespace qcsp

#endif
