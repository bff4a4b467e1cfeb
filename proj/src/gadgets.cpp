#include "qcsp/gadgets.hpp"

#include "qcsp/boolean.hpp"
#include "qcsp/errors.hpp"

#include <algorithm>

namespace qcsp {

namespace {

void require_comm_gadget(const GadgetSpec& g)
{
    if (g.distinguished.size() != 2)
        throw InvalidArgument("a commutativity gadget has exactly two distinguished elements");
    if (g.distinguished[0] == g.distinguished[1])
        throw InvalidArgument("commutativity gadget needs u != v");
}

void require_same_signature(const GadgetSpec& g, const Structure& a)
{
    if (!(g.structure.signature() == a.signature()))
        throw InvalidArgument("gadget and target signatures differ");
}

std::string tuple_text(const Structure& a, const Tuple& t)
{
    std::string s = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i)
            s += ',';
        s += a.label(t[i]);
    }
    return s + ")";
}

bool is_clique_structure(const Structure& a)
{
    if (a.signature().size() != 1 || a.signature()[0].arity != 2 || a.size() < 3)
        return false;
    const auto n = static_cast<int>(a.size());
    if (a.relation(0).size() != a.size() * (a.size() - 1))
        return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !a.contains(0, {i, j}))
                return false;
    return true;
}

bool is_odd_cycle_structure(const Structure& a)
{
    if (a.signature().size() != 1 || a.signature()[0].arity != 2 || a.size() < 3 || a.size() % 2 == 0)
        return false;
    for (const auto& t : a.relation(0))
        if (t[0] == t[1] || !a.contains(0, {t[1], t[0]}))
            return false;
    if (a.relation(0).size() != 2 * a.size() || !is_connected(a))
        return false;
    for (const auto& nb : gaifman_adjacency(a))
        if (nb.size() != 2)
            return false;
    return true;
}

bool is_boolean_without_majority(const Structure& a)
{
    if (a.size() != 2)
        return false;
    for (std::size_t k = 0; k < a.signature().size(); ++k) {
        BoolRelation r{a.signature()[k].arity, {}};
        if (r.arity > 24)
            continue;
        for (const auto& t : a.relation(k)) {
            Mask m = 0;
            for (int e : t)
                m = (m << 1) | static_cast<Mask>(e);
            r.masks.insert(m);
        }
        if (!majority_preserves(r).preserved)
            return true;
    }
    return false;
}

bool condition_matches(const Certificate& c, const std::string& condition)
{
    return c.condition == condition && c.holds();
}

// An attached certificate only counts if the facts its tags cite hold for this target.
bool attached_applies(const Certificate& c, const GadgetSpec& g, const Structure& a)
{
    std::optional<TheoremFlags> flags;
    for (const auto& t : c.tags) {
        if (t == tags::kCliqueClosure || t == tags::kOddCycleClosure || t == tags::kBooleanNonMajority) {
            if (!flags)
                flags = theorem_flags(a);
            if (std::find(flags->tags.begin(), flags->tags.end(), t) == flags->tags.end())
                return false;
        } else if (t == tags::kGeneratorPower && (c.condition == "c2" || c.condition == "noc2")) {
            // on a q-definition the tag describes the glued comm gadget, not g itself
            if (!power_generators(g, a, default_limits()))
                return false;
        } else if (t == tags::kTreeGadget) {
            if (!is_tree(g.structure))
                return false;
        }
    }
    return true;
}

} // namespace

GeneratorCheck check_generators(const Structure& a, const GeneratorSet& gs, const Limits& limits)
{
    if (gs.empty())
        throw InvalidArgument("generator set must be non-empty");
    const int m = static_cast<int>(a.size());
    std::vector<int> us, vs;
    for (auto [x, y] : gs) {
        if (x < 0 || y < 0 || x >= m || y >= m)
            throw InvalidArgument("generator pair outside the domain");
        us.push_back(x);
        vs.push_back(y);
    }
    const Structure power = direct_power(a, static_cast<int>(gs.size()), limits);
    const int u = static_cast<int>(power_index(us, a.size()));
    const int v = static_cast<int>(power_index(vs, a.size()));
    GeneratorCheck out;
    for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
            std::optional<ClassicalHom> h;
            if (u != v || c == d) {
                SearchOptions opts;
                opts.pins = {{u, c}, {v, d}};
                opts.node_limit = limits.max_search_nodes;
                h = hom_search(power, a, opts);
            }
            if (!h) {
                out.holds = false;
                out.missing = std::make_pair(c, d);
                return out;
            }
            out.witnesses.push_back(std::move(*h));
        }
    return out;
}

std::optional<GeneratorSet> power_generators(const GadgetSpec& g, const Structure& a, const Limits& limits)
{
    if (g.distinguished.size() != 2 || a.size() < 2 || !(g.structure.signature() == a.signature()))
        return std::nullopt;
    std::size_t count = 1;
    int n = 0;
    while (count < g.structure.size()) {
        count *= a.size();
        ++n;
    }
    if (count != g.structure.size() || n < 1)
        return std::nullopt;
    if (!g.structure.same_relations(direct_power(a, n, limits)))
        return std::nullopt;
    auto us = power_components(static_cast<std::size_t>(g.distinguished[0]), a.size(), static_cast<std::size_t>(n));
    auto vs = power_components(static_cast<std::size_t>(g.distinguished[1]), a.size(), static_cast<std::size_t>(n));
    GeneratorSet gs;
    for (int i = 0; i < n; ++i)
        gs.emplace_back(us[static_cast<std::size_t>(i)], vs[static_cast<std::size_t>(i)]);
    if (!check_generators(a, gs, limits).holds)
        return std::nullopt;
    return gs;
}

TheoremFlags theorem_flags(const Structure& a)
{
    TheoremFlags f;
    if (is_clique_structure(a)) {
        f.oracular = true;
        f.tags.emplace_back(tags::kCliqueClosure);
    }
    if (is_odd_cycle_structure(a)) {
        f.oracular = f.nonoracular = true;
        f.tags.emplace_back(tags::kOddCycleClosure);
    }
    if (is_boolean_without_majority(a)) {
        f.oracular = f.nonoracular = true;
        f.tags.emplace_back(tags::kBooleanNonMajority);
    }
    return f;
}

GadgetSpec build_power_comm_gadget(const Structure& a, const GeneratorSet& gs, const Limits& limits)
{
    auto check = check_generators(a, gs, limits);
    if (!check.holds)
        throw PreconditionViolation("build_power_comm_gadget: pairs do not generate A^2; (" +
                                    a.label(check.missing->first) + "," + a.label(check.missing->second) +
                                    ") is not reached");
    std::vector<int> us, vs;
    for (auto [x, y] : gs) {
        us.push_back(x);
        vs.push_back(y);
    }
    GadgetSpec g(direct_power(a, static_cast<int>(gs.size()), limits),
                 {static_cast<int>(power_index(us, a.size())), static_cast<int>(power_index(vs, a.size()))});
    const TheoremFlags flags = theorem_flags(a);
    Certificate cert;
    cert.condition = flags.nonoracular && !flags.oracular ? "noc2" : "c2";
    if (flags.oracular || flags.nonoracular) {
        cert.kind = CertificateKind::TheoremBacked;
        cert.tags = flags.tags;
        cert.tags.emplace_back(tags::kGeneratorPower);
    } else {
        cert.witness = "target matches no catalogued closure theorem";
    }
    g.certificate = cert;
    return g;
}

ExtensionCheck check_c1(const GadgetSpec& g, const Structure& a)
{
    require_comm_gadget(g);
    require_same_signature(g, a);
    ExtensionCheck out;
    const int m = static_cast<int>(a.size());
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            SearchOptions opts;
            opts.pins = {{g.distinguished[0], x}, {g.distinguished[1], y}};
            if (!hom_search(g.structure, a, opts)) {
                out.holds = false;
                out.missing = Tuple{x, y};
                return out;
            }
        }
    return out;
}

ExtensionCheck check_c1_prime(const GadgetSpec& g, const Structure& a)
{
    return check_c1(g, a);
}

ExtensionCheck check_q1(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s)
{
    require_same_signature(g, a);
    ExtensionCheck out;
    for (const auto& t : s) {
        if (t.size() != g.distinguished.size())
            throw InvalidArgument("check_q1: relation arity differs from the number of distinguished elements");
        SearchOptions opts;
        bool consistent = true;
        for (std::size_t i = 0; i < t.size() && consistent; ++i) {
            if (t[i] < 0 || static_cast<std::size_t>(t[i]) >= a.size())
                throw InvalidArgument("check_q1: relation tuple outside the domain");
            auto [it, inserted] = opts.pins.emplace(g.distinguished[i], t[i]);
            consistent = inserted || it->second == t[i];
        }
        if (!consistent || !hom_search(g.structure, a, opts)) {
            out.holds = false;
            out.missing = t;
            return out;
        }
    }
    return out;
}

bool is_classical_gadget(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s)
{
    require_same_signature(g, a);
    return restriction_set(g.structure, a, g.distinguished) == s;
}

Certificate extension_certificate(const ExtensionCheck& check, const std::string& condition)
{
    Certificate c;
    c.condition = condition;
    c.kind = check.holds ? CertificateKind::ClassicalExact : CertificateKind::WitnessRefuted;
    if (!check.holds && check.missing) {
        std::string s = "no classical extension for (";
        for (std::size_t i = 0; i < check.missing->size(); ++i)
            s += (i ? "," : "") + std::to_string((*check.missing)[i]);
        c.witness = s + ")";
    }
    return c;
}

namespace {

void require_verified(const GadgetSpec& g, const Structure& a, const std::vector<QuantumFunction>& candidates,
                      Mode mode)
{
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        QHomCandidate c{g.structure, a, candidates[i], mode};
        if (!verify(c).pass)
            throw PreconditionViolation("candidate " + std::to_string(i) + " is not a " +
                                        std::string(to_string(mode)) + " quantum homomorphism from the gadget");
    }
}

std::string projector_name(const GadgetSpec& g, const Structure& a, int x, int b)
{
    return "Q_{" + g.structure.label(x) + "," + a.label(b) + "}";
}

} // namespace

Certificate check_c2(const GadgetSpec& g, const Structure& a, const std::vector<QuantumFunction>& candidates, Mode mode)
{
    require_comm_gadget(g);
    require_same_signature(g, a);
    require_verified(g, a, candidates, mode);
    Certificate cert;
    cert.condition = mode == Mode::Oracular ? "c2" : "noc2";
    const auto u = static_cast<std::size_t>(g.distinguished[0]);
    const auto v = static_cast<std::size_t>(g.distinguished[1]);
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = 0; y < a.size(); ++y) {
                QMat k = commutator(candidates[i](u, x), candidates[i](v, y));
                if (!k.is_zero()) {
                    cert.kind = CertificateKind::WitnessRefuted;
                    cert.witness = "candidate " + std::to_string(i) + ": [" +
                                   projector_name(g, a, static_cast<int>(u), static_cast<int>(x)) + ", " +
                                   projector_name(g, a, static_cast<int>(v), static_cast<int>(y)) +
                                   "] = " + k.to_string();
                    return cert;
                }
            }
    const TheoremFlags flags = theorem_flags(a);
    if ((mode == Mode::Oracular ? flags.oracular : flags.nonoracular) && power_generators(g, a)) {
        cert.kind = CertificateKind::TheoremBacked;
        cert.tags = flags.tags;
        cert.tags.emplace_back(tags::kGeneratorPower);
        return cert;
    }
    if (g.certificate && condition_matches(*g.certificate, cert.condition) && attached_applies(*g.certificate, g, a))
        return *g.certificate;
    return cert;
}

Certificate check_q2(const GadgetSpec& g, const Structure& a, const std::set<Tuple>& s,
                     const std::vector<QuantumFunction>& candidates, Mode mode)
{
    require_same_signature(g, a);
    const std::size_t r = g.distinguished.size();
    for (const auto& t : s)
        if (t.size() != r)
            throw InvalidArgument("check_q2: relation arity differs from the number of distinguished elements");
    require_verified(g, a, candidates, mode);
    Certificate cert;
    cert.condition = mode == Mode::Oracular ? "q2" : "noq2";

    // a classical homomorphism restricting outside s is a d = 1 counterexample
    for (const auto& t : restriction_set(g.structure, a, g.distinguished))
        if (!s.count(t)) {
            cert.kind = CertificateKind::WitnessRefuted;
            cert.witness = "classical homomorphism restricts to " + tuple_text(a, t);
            return cert;
        }

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const auto& q = candidates[i];
        Tuple b(r, 0);
        const std::size_t total = [&] {
            std::size_t n = 1;
            for (std::size_t j = 0; j < r; ++j)
                n *= a.size();
            return n;
        }();
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto comps = power_components(idx, a.size(), r);
            if (s.count(comps))
                continue;
            QMat prod = QMat::identity(q.dim);
            for (std::size_t j = 0; j < r && !prod.is_zero(); ++j)
                prod = prod * q(static_cast<std::size_t>(g.distinguished[j]), static_cast<std::size_t>(comps[j]));
            if (!prod.is_zero()) {
                cert.kind = CertificateKind::WitnessRefuted;
                cert.witness = "candidate " + std::to_string(i) + ": product at " + tuple_text(a, comps) +
                               " is " + prod.to_string();
                return cert;
            }
        }
        if (mode == Mode::Oracular)
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t l = j + 1; l < r; ++l) {
                    const auto x = static_cast<std::size_t>(g.distinguished[j]);
                    const auto y = static_cast<std::size_t>(g.distinguished[l]);
                    if (x == y)
                        continue;
                    for (std::size_t p = 0; p < a.size(); ++p)
                        for (std::size_t w = 0; w < a.size(); ++w) {
                            QMat k = commutator(q(x, p), q(y, w));
                            if (!k.is_zero()) {
                                cert.kind = CertificateKind::WitnessRefuted;
                                cert.witness = "candidate " + std::to_string(i) + ": [" +
                                               projector_name(g, a, static_cast<int>(x), static_cast<int>(p)) + ", " +
                                               projector_name(g, a, static_cast<int>(y), static_cast<int>(w)) +
                                               "] = " + k.to_string();
                                return cert;
                            }
                        }
                }
    }

    if (mode == Mode::NonOracular && r <= 2 && is_tree(g.structure) && check_q1(g, a, s).holds) {
        cert.kind = CertificateKind::TreeBacked;
        cert.tags.emplace_back(tags::kTreeGadget);
        return cert;
    }
    if (g.certificate && condition_matches(*g.certificate, cert.condition) && attached_applies(*g.certificate, g, a))
        return *g.certificate;
    return cert;
}

GadgetSpec build_qdef(const GadgetSpec& g, const GadgetSpec& h, const Structure& a, const std::set<Tuple>& s,
                      const Limits& limits)
{
    require_comm_gadget(h);
    require_same_signature(g, a);
    require_same_signature(h, a);
    if (!is_classical_gadget(g, a, s))
        throw PreconditionViolation("build_qdef: the gadget is not a classical gadget for the relation");
    const std::size_t n = g.structure.size();
    const std::size_t extra = h.structure.size() - 2;
    const std::size_t pairs = n < 2 ? 0 : n * (n - 1) / 2;
    const std::size_t total = n + pairs * extra;
    if (total > limits.max_vertices)
        throw CapExceeded("build_qdef: result would have " + std::to_string(total) + " elements, above the cap of " +
                          std::to_string(limits.max_vertices));

    const int hu = h.distinguished[0], hv = h.distinguished[1];
    std::vector<std::string> labels = g.structure.labels();
    std::vector<std::vector<int>> copy_map; // per pair, local element -> element of the result
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            std::vector<int> local(h.structure.size(), -1);
            for (std::size_t e = 0; e < h.structure.size(); ++e) {
                if (static_cast<int>(e) == hu)
                    local[e] = static_cast<int>(x);
                else if (static_cast<int>(e) == hv)
                    local[e] = static_cast<int>(y);
                else {
                    local[e] = static_cast<int>(labels.size());
                    labels.push_back("[" + g.structure.label(static_cast<int>(x)) + "," +
                                     g.structure.label(static_cast<int>(y)) + "]:" +
                                     h.structure.label(static_cast<int>(e)));
                }
            }
            copy_map.push_back(std::move(local));
        }
    Structure out(g.structure.signature(), std::move(labels), g.structure.name() + "+comm");
    for (std::size_t k = 0; k < g.structure.signature().size(); ++k) {
        for (const auto& t : g.structure.relation(k))
            out.add_tuple(k, t);
        for (const auto& local : copy_map)
            for (const auto& t : h.structure.relation(k)) {
                Tuple u;
                for (int e : t)
                    u.push_back(local[static_cast<std::size_t>(e)]);
                out.add_tuple(k, std::move(u));
            }
    }
    GadgetSpec result(std::move(out), g.distinguished);
    Certificate comm = check_c2(h, a, {}, Mode::Oracular);
    Certificate cert;
    cert.condition = "q2";
    if (comm.holds()) {
        cert.kind = CertificateKind::TheoremBacked;
        cert.tags = comm.tags;
        cert.tags.emplace_back(tags::kPpPlusComm);
    } else {
        cert.witness = "commutativity gadget is not certified";
    }
    result.certificate = cert;
    return result;
}

} // namespace qcsp
