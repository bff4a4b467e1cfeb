#include "qcsp/catalog.hpp"

#include "qcsp/boolean.hpp"
#include "qcsp/certificate.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/gadgets.hpp"

#include <charconv>
#include <map>

namespace qcsp {

namespace {

QMat plus_projector() { return QMat{{make_rational(1, 2), make_rational(1, 2)}, {make_rational(1, 2), make_rational(1, 2)}}; }
QMat minus_projector()
{
    return QMat{{make_rational(1, 2), make_rational(-1, 2)}, {make_rational(-1, 2), make_rational(1, 2)}};
}
QMat diag2(int a, int b) { return QMat{{make_rational(a), 0}, {0, make_rational(b)}}; }

void require_verified(const QHomCandidate& c, const std::string& name)
{
    if (!verify(c).pass)
        throw PreconditionViolation("catalog fixture '" + name + "' failed verification");
}

struct ParsedName {
    std::string base;
    std::vector<std::string> params;
};

ParsedName parse_name(std::string_view text)
{
    ParsedName p;
    std::string_view rest;
    if (auto open = text.find('('); open != std::string_view::npos) {
        if (text.back() != ')')
            throw InvalidArgument("catalog: malformed name '" + std::string(text) + "'");
        p.base = std::string(text.substr(0, open));
        rest = text.substr(open + 1, text.size() - open - 2);
    } else if (auto colon = text.find(':'); colon != std::string_view::npos) {
        p.base = std::string(text.substr(0, colon));
        rest = text.substr(colon + 1);
    } else {
        p.base = std::string(text);
        return p;
    }
    while (true) {
        auto comma = rest.find(',');
        std::string_view item = rest.substr(0, comma);
        while (!item.empty() && item.front() == ' ')
            item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ')
            item.remove_suffix(1);
        if (item.empty())
            throw InvalidArgument("catalog: empty parameter in '" + std::string(text) + "'");
        p.params.emplace_back(item);
        if (comma == std::string_view::npos)
            break;
        rest.remove_prefix(comma + 1);
    }
    return p;
}

int int_param(const ParsedName& p, std::size_t i)
{
    const std::string& s = p.params.at(i);
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument("catalog: parameter '" + s + "' of " + p.base + " is not an integer");
    return value;
}

void expect_params(const ParsedName& p, std::size_t count)
{
    if (p.params.size() != count)
        throw InvalidArgument("catalog: " + p.base + " takes " + std::to_string(count) + " parameter(s)");
}

std::string canonical(const ParsedName& p)
{
    if (p.params.empty())
        return p.base;
    std::string out = p.base + "(";
    for (std::size_t i = 0; i < p.params.size(); ++i)
        out += (i ? "," : "") + p.params[i];
    return out + ")";
}

void add_flags(CatalogEntry& e, const TheoremFlags& f)
{
    if (f.oracular)
        e.flags.emplace(flags::kQpolEqQcpol);
    if (f.nonoracular)
        e.flags.emplace(flags::kQnopolEqQcpol);
    e.tags.insert(e.tags.end(), f.tags.begin(), f.tags.end());
}

void add_gadget_flags(CatalogEntry& e, const GadgetSpec& g)
{
    if (g.certificate && g.certificate->holds()) {
        e.flags.emplace(flags::kCommGadget);
        e.tags.insert(e.tags.end(), g.certificate->tags.begin(), g.certificate->tags.end());
    }
}

} // namespace

QHomCandidate k2_contextual_poly()
{
    const Structure k2 = clique(2);
    QHomCandidate c{direct_power(k2, 2), k2, {}, Mode::Oracular};
    QuantumFunction q(c.source.labels(), k2.labels(), 2);
    // Source order (0,0), (0,1), (1,0), (1,1).
    q(0, 0) = diag2(1, 0);
    q(0, 1) = diag2(0, 1);
    q(1, 0) = minus_projector();
    q(1, 1) = plus_projector();
    q(2, 0) = plus_projector();
    q(2, 1) = minus_projector();
    q(3, 0) = diag2(0, 1);
    q(3, 1) = diag2(1, 0);
    c.qf = std::move(q);
    return c;
}

QHomCandidate c7_to_c5()
{
    const Structure c5_plain = cycle(5);
    Structure c5(c5_plain.signature(), {"0", "1", "2", "5", "6"}, "C5");
    for (const auto& t : c5_plain.relation(0))
        c5.add_tuple(0, t);
    const Structure c7 = cycle(7);
    // Two homomorphisms from the labelled 5-cycle to itself, keyed by label.
    const std::map<std::string, std::string> h{{"5", "0"}, {"6", "1"}, {"0", "2"}, {"1", "5"}, {"2", "6"}};
    const std::map<std::string, std::string> g{{"5", "0"}, {"6", "6"}, {"0", "5"}, {"1", "2"}, {"2", "1"}};
    QuantumFunction q(c7.labels(), c5.labels(), 2);
    auto set_diagonal = [&](int vertex, const std::string& key) {
        for (std::size_t b = 0; b < c5.size(); ++b)
            q(static_cast<std::size_t>(vertex), b) =
                diag2(h.at(key) == c5.label(static_cast<int>(b)), g.at(key) == c5.label(static_cast<int>(b)));
    };
    for (int v : {0, 1, 2, 5, 6})
        set_diagonal(v, std::to_string(v));
    set_diagonal(3, "5");
    q(4, static_cast<std::size_t>(*c5.index_of("1"))) = plus_projector();
    q(4, static_cast<std::size_t>(*c5.index_of("6"))) = minus_projector();
    return {c7, c5, std::move(q), Mode::Oracular};
}

QHomCandidate b4_contextual()
{
    const Structure b = build_b();
    return {direct_power(b, 4), b, build_arity4_contextual().to_quantum_function(), Mode::Oracular};
}

GadgetSpec km_power_gadget(int m, int n)
{
    if (m < 3 || n < 2)
        throw InvalidArgument("km_power_gadget needs m >= 3 and n >= 2");
    GeneratorSet gs{{0, 0}};
    for (int i = 1; i < n; ++i)
        gs.emplace_back(0, 1);
    return build_power_comm_gadget(clique(m), gs);
}

GadgetSpec cycle_power_gadget(int m)
{
    if (m < 3 || m % 2 == 0)
        throw InvalidArgument("cycle_power_gadget needs an odd m >= 3");
    GeneratorSet gs;
    for (int i = 0; i < (m + 1) / 2; ++i)
        gs.emplace_back(0, i);
    return build_power_comm_gadget(cycle(m), gs);
}

GadgetSpec path_gadget(int length)
{
    if (length < 1)
        throw InvalidArgument("path_gadget needs length >= 1");
    return GadgetSpec(directed_path(length), {0, length});
}

CatalogEntry catalog_get(std::string_view name)
{
    const ParsedName p = parse_name(name);
    CatalogEntry e;
    e.name = canonical(p);
    if (p.base == "clique") {
        expect_params(p, 1);
        const int m = int_param(p, 0);
        Structure s = clique(m);
        add_flags(e, theorem_flags(s));
        if (m == 2) {
            e.flags.emplace(flags::kContextualQpol);
            e.flags.emplace(flags::kNoCommGadget);
            e.tags.emplace_back(tags::kK2Contextual);
        }
        e.description = "complete graph on " + std::to_string(m) + " vertices";
        e.payload = std::move(s);
    } else if (p.base == "cycle") {
        expect_params(p, 1);
        Structure s = cycle(int_param(p, 0));
        add_flags(e, theorem_flags(s));
        e.description = "symmetric cycle";
        if (s.size() % 2 == 0)
            e.description += "; even, bipartite, behaves like K2 and carries no closure flag";
        e.payload = std::move(s);
    } else if (p.base == "o_t") {
        expect_params(p, 2);
        const int k = int_param(p, 0);
        if (static_cast<int>(p.params[1].size()) != k)
            throw InvalidArgument("catalog: o_t translate must be a bitstring of length k");
        Structure s = o_t(k, parse_mask(p.params[1]));
        add_flags(e, theorem_flags(s));
        e.description = "translate of 1-in-" + std::to_string(k) + " by " + p.params[1];
        e.payload = std::move(s);
    } else if (p.base == "b_structure") {
        expect_params(p, 0);
        e.flags.emplace(flags::kContextualQpol);
        e.tags.emplace_back(tags::kBContextual);
        e.description = "({0,1}; S00, S11, S10), contextual quantum polymorphisms from arity 4";
        e.payload = build_b();
    } else if (p.base == "k2_contextual_poly") {
        expect_params(p, 0);
        auto c = k2_contextual_poly();
        require_verified(c, e.name);
        e.flags.emplace(flags::kContextualQpol);
        e.tags.emplace_back(tags::kK2Contextual);
        e.description = "binary contextual quantum polymorphism of K2, d = 2";
        e.payload = std::move(c);
    } else if (p.base == "c7_to_c5") {
        expect_params(p, 0);
        auto c = c7_to_c5();
        require_verified(c, e.name);
        e.description = "contextual quantum homomorphism C7 => C5, d = 2";
        e.payload = std::move(c);
    } else if (p.base == "b4_contextual") {
        expect_params(p, 0);
        auto c = b4_contextual();
        require_verified(c, e.name);
        e.flags.emplace(flags::kContextualQpol);
        e.tags.emplace_back(tags::kBContextual);
        e.description = "arity-4 contextual quantum polymorphism of B, d = 2";
        e.payload = std::move(c);
    } else if (p.base == "km_power_gadget") {
        expect_params(p, 2);
        GadgetSpec g = km_power_gadget(int_param(p, 0), int_param(p, 1));
        add_gadget_flags(e, g);
        e.description = "power of K_m with distinguished (0,..,0) and (0,1,..,1)";
        e.payload = std::move(g);
    } else if (p.base == "cycle_power_gadget") {
        expect_params(p, 1);
        GadgetSpec g = cycle_power_gadget(int_param(p, 0));
        add_gadget_flags(e, g);
        e.description = "power of C_m with distinguished (0,..,0) and (0,1,..,n-1)";
        e.payload = std::move(g);
    } else if (p.base == "path_gadget") {
        expect_params(p, 1);
        GadgetSpec g = path_gadget(int_param(p, 0));
        e.flags.emplace(flags::kTree);
        e.tags.emplace_back(tags::kTreeGadget);
        e.description = "directed path with distinguished endpoints";
        e.payload = std::move(g);
    } else if (p.base == "pp_zero" || p.base == "pp_r100" || p.base == "pp_neq") {
        expect_params(p, p.base == "pp_neq" ? 2 : 1);
        const int k = int_param(p, 0);
        PPFormula f = p.base == "pp_zero" ? pp_zero(k) : p.base == "pp_r100" ? pp_r100(k) : pp_neq_atom(k, int_param(p, 1));
        GadgetSpec g = pp_to_gadget(f);
        if (is_tree(g.structure)) {
            e.flags.emplace(flags::kTree);
            e.tags.emplace_back(tags::kTreeGadget);
        }
        e.description = p.base == "pp_zero" ? "defines the constant 0 in O_(1,0,..,0)"
                        : p.base == "pp_r100" ? "defines R_(1,0,0) in O_(1,0,..,0) with the constant 0"
                                              : "R_t(x,..,x,y,..,y) with l+1 copies of x in O_t, t = 1^l 0^(k-l)";
        e.payload = std::move(g);
    } else {
        throw InvalidArgument("catalog: unknown entry '" + std::string(name) + "'");
    }
    return e;
}

std::vector<CatalogTemplate> catalog_templates()
{
    return {
        {"clique(m)", "structure", "complete graph K_m"},
        {"cycle(m)", "structure", "symmetric cycle C_m"},
        {"o_t(k,t)", "structure", "Boolean translate of 1-in-k by the bitstring t"},
        {"b_structure", "structure", "({0,1}; S00, S11, S10)"},
        {"k2_contextual_poly", "candidate", "binary contextual quantum polymorphism of K2"},
        {"c7_to_c5", "candidate", "contextual quantum homomorphism C7 => C5"},
        {"b4_contextual", "candidate", "arity-4 contextual quantum polymorphism of B"},
        {"km_power_gadget(m,n)", "gadget", "K_m^n commutativity gadget"},
        {"cycle_power_gadget(m)", "gadget", "C_m^((m+1)/2) commutativity gadget, m odd"},
        {"path_gadget(l)", "gadget", "directed path of length l"},
        {"pp_zero(k)", "gadget", "pp-definition of 0 in O_(1,0,..,0)"},
        {"pp_r100(k)", "gadget", "pp-definition of R_(1,0,0) in O_(1,0,..,0)"},
        {"pp_neq(k,l)", "gadget", "one-atom formula R_t(x,..,x,y,..,y) in O_t, t = 1^l 0^(k-l)"},
    };
}

std::vector<std::string> catalog_fixture_names()
{
    return {"clique(2)",          "clique(3)",     "clique(4)",     "cycle(4)",
            "cycle(5)",           "cycle(7)",      "o_t(3,100)",    "o_t(3,000)",
            "o_t(4,1100)",        "b_structure",   "k2_contextual_poly", "c7_to_c5",
            "b4_contextual",      "km_power_gadget(3,2)", "km_power_gadget(4,2)", "cycle_power_gadget(5)",
            "path_gadget(2)",     "path_gadget(3)", "pp_zero(4)", "pp_r100(4)", "pp_neq(4,1)"};
}

} // namespace qcsp
