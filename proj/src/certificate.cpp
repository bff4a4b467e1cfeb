#include "qcsp/certificate.hpp"

#include <array>
#include <utility>

namespace qcsp {

namespace {

constexpr std::array<std::pair<CertificateKind, std::string_view>, 5> kNames{{
    {CertificateKind::ClassicalExact, "classical-exact"},
    {CertificateKind::TreeBacked, "tree-backed"},
    {CertificateKind::TheoremBacked, "theorem-backed"},
    {CertificateKind::WitnessRefuted, "witness-refuted"},
    {CertificateKind::Inconclusive, "inconclusive"},
}};

} // namespace

std::string_view to_string(CertificateKind kind)
{
    for (const auto& [k, name] : kNames)
        if (k == kind)
            return name;
    return "inconclusive";
}

std::optional<CertificateKind> certificate_kind_from_string(std::string_view text)
{
    for (const auto& [k, name] : kNames)
        if (name == text)
            return k;
    return std::nullopt;
}

const Certificate& CertificateStore::record(const std::string& query, const Certificate& certificate)
{
    auto [it, inserted] = entries_.emplace(query, certificate);
    if (inserted)
        return it->second;
    Certificate& stored = it->second;
    if (stored.refuted())
        return stored;
    if (certificate.refuted() || stored.kind == CertificateKind::Inconclusive)
        stored = certificate;
    return stored;
}

const Certificate* CertificateStore::find(const std::string& query) const
{
    auto it = entries_.find(query);
    return it == entries_.end() ? nullptr : &it->second;
}

} // namespace qcsp
