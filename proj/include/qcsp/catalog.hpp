#ifndef QCSP_CATALOG_HPP
#define QCSP_CATALOG_HPP

#include "qcsp/qhom.hpp"
#include "qcsp/structure.hpp"

#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcsp {

// Fixed flag vocabulary. Each flag on an entry is accompanied by the theorem tags
// (certificate.hpp) that justify it.
namespace flags {
inline constexpr std::string_view kQpolEqQcpol = "qpol-eq-qcpol";
inline constexpr std::string_view kQnopolEqQcpol = "qnopol-eq-qcpol";
inline constexpr std::string_view kTree = "tree";
inline constexpr std::string_view kContextualQpol = "contextual-qpol";
inline constexpr std::string_view kNoCommGadget = "no-comm-gadget";
inline constexpr std::string_view kCommGadget = "comm-gadget";
} // namespace flags

using CatalogPayload = std::variant<Structure, GadgetSpec, QHomCandidate>;

struct CatalogEntry {
    std::string name;
    CatalogPayload payload;
    std::set<std::string> flags;
    std::vector<std::string> tags;
    std::string description;

    bool is_structure() const { return std::holds_alternative<Structure>(payload); }
    bool is_gadget() const { return std::holds_alternative<GadgetSpec>(payload); }
    bool is_candidate() const { return std::holds_alternative<QHomCandidate>(payload); }
    const Structure& structure() const { return std::get<Structure>(payload); }
    const GadgetSpec& gadget() const { return std::get<GadgetSpec>(payload); }
    const QHomCandidate& candidate() const { return std::get<QHomCandidate>(payload); }
};

struct CatalogTemplate {
    std::string name; // with parameter placeholders, e.g. "clique(m)"
    std::string kind; // structure | gadget | candidate
    std::string description;
};

/// Looks up `name(p1,p2)` or `name:p1,p2`. Candidate entries are verified before
/// they are returned. Throws InvalidArgument on unknown names or bad parameters.
CatalogEntry catalog_get(std::string_view name);

std::vector<CatalogTemplate> catalog_templates();

/// Concrete names covering every template at small parameters; used by `catalog list`.
std::vector<std::string> catalog_fixture_names();

// Fixtures by name.
QHomCandidate k2_contextual_poly();
QHomCandidate c7_to_c5();
QHomCandidate b4_contextual();
/// K_m^n with u = (0,..,0) and v = (0,1,..,1); n >= 2, m >= 3.
GadgetSpec km_power_gadget(int m, int n);
/// C_m^n with u = (0,..,0) and v = (0,1,..,n-1), n = (m+1)/2; m odd.
GadgetSpec cycle_power_gadget(int m);
/// Directed path 0 -> 1 -> .. -> l with distinguished endpoints.
GadgetSpec path_gadget(int length);

} // namespace qcsp

#endif
