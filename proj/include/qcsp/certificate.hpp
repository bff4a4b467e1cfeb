#ifndef QCSP_CERTIFICATE_HPP
#define QCSP_CERTIFICATE_HPP

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcsp {

// How a condition that quantifies over every finite dimension was settled.
// classical-exact: decided by classical extension search (c1, q1 and their variants).
// tree-backed: non-oracular q-definition certified by the tree gadget lemma.
// theorem-backed: follows from a catalogued closure theorem for the target.
// witness-refuted: a verified quantum homomorphism violates the condition.
// inconclusive: none of the above applies.
enum class CertificateKind { ClassicalExact, TreeBacked, TheoremBacked, WitnessRefuted, Inconclusive };

std::string_view to_string(CertificateKind kind);
std::optional<CertificateKind> certificate_kind_from_string(std::string_view text);

struct Certificate {
    CertificateKind kind = CertificateKind::Inconclusive;
    std::string condition;          // c1, c2, q1, q2, noc1, noc2, noq1, noq2
    std::vector<std::string> tags;  // theorem tags backing the verdict
    std::string witness;            // human-readable refutation witness

    bool holds() const noexcept
    {
        return kind == CertificateKind::ClassicalExact || kind == CertificateKind::TreeBacked ||
               kind == CertificateKind::TheoremBacked;
    }
    bool refuted() const noexcept { return kind == CertificateKind::WitnessRefuted; }

    friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Append-only store keyed by query. A refutation is never replaced by a positive verdict,
/// and an inconclusive entry is upgraded by any decisive one.
class CertificateStore {
public:
    /// Returns the certificate that is stored after the merge.
    const Certificate& record(const std::string& query, const Certificate& certificate);
    const Certificate* find(const std::string& query) const;
    const std::map<std::string, Certificate>& entries() const noexcept { return entries_; }

private:
    std::map<std::string, Certificate> entries_;
};

// Theorem tags. Each names a closure result qPol = qcPol (or its non-oracular
// analogue) or a structural lemma the certificates lean on.
namespace tags {
inline constexpr std::string_view kCliqueClosure = "clique-qpol-closure";          // K_m, m >= 3
inline constexpr std::string_view kOddCycleClosure = "odd-cycle-qpol-closure";     // C_m odd, both modes
inline constexpr std::string_view kBooleanNonMajority = "boolean-nonmajority-closure"; // O_t, k >= 3
inline constexpr std::string_view kGeneratorPower = "generator-power-gadget";      // A^n with generators is a comm gadget
inline constexpr std::string_view kPpPlusComm = "pp-plus-comm-gadget";             // classical gadget + comm gadget
inline constexpr std::string_view kTreeGadget = "tree-gadget";                     // tree gadgets are noq-definitions
inline constexpr std::string_view kK2Contextual = "k2-contextual-polymorphism";    // K_2 has no comm gadget
inline constexpr std::string_view kBContextual = "b-contextual-polymorphism";      // B has contextual qpols, arity >= 4
} // namespace tags

} // namespace qcsp

#endif
