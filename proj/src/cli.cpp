#include "qcsp/cli.hpp"

#include "qcsp/boolean.hpp"
#include "qcsp/catalog.hpp"
#include "qcsp/errors.hpp"
#include "qcsp/gadgets.hpp"
#include "qcsp/io.hpp"
#include "qcsp/qhom.hpp"
#include "qcsp/reduce.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <ostream>

namespace qcsp {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

struct Context {
    std::ostream& out;
    std::ostream& err;
    std::string verb;
    std::vector<json> lines;
    Limits limits = default_limits();
    VerifyOptions verify_options;

    void report(json line)
    {
        line["verb"] = verb;
        lines.push_back(std::move(line));
    }
};

struct LoadedCandidate {
    QHomCandidate candidate;
    bool from_catalog = false;
};

QuantumFunction load_qfun(const std::string& ref, const Limits& limits)
{
    QuantumFunction q;
    if (ref.rfind("catalog:", 0) == 0) {
        auto e = catalog_get(ref.substr(8));
        if (!e.is_candidate())
            throw InvalidArgument("catalog entry '" + e.name + "' is not a quantum function");
        q = e.candidate().qf;
    } else {
        q = parse_qfun(read_file(ref));
    }
    if (q.dim > limits.max_dimension)
        throw CapExceeded("quantum function dimension " + std::to_string(q.dim) + " exceeds the cap of " +
                          std::to_string(limits.max_dimension));
    return q;
}

LoadedCandidate load_candidate(const std::string& source, const std::string& target, const std::string& qfun,
                               const std::string& mode, const Limits& limits)
{
    LoadedCandidate lc;
    if (qfun.rfind("catalog:", 0) == 0) {
        auto e = catalog_get(qfun.substr(8));
        if (!e.is_candidate())
            throw InvalidArgument("catalog entry '" + e.name + "' is not a quantum function");
        lc.candidate = e.candidate();
        lc.from_catalog = true;
    } else {
        if (source.empty() || target.empty())
            throw InvalidArgument("--source and --target are required unless --qfun names a catalog candidate");
        lc.candidate.qf = load_qfun(qfun, limits);
    }
    if (!source.empty())
        lc.candidate.source = load_structure(source);
    if (!target.empty())
        lc.candidate.target = load_structure(target);
    if (!mode.empty()) {
        auto m = mode_from_string(mode);
        if (!m)
            throw InvalidArgument("unknown mode '" + mode + "'");
        lc.candidate.mode = *m;
    }
    if (lc.candidate.qf.dim > limits.max_dimension)
        throw CapExceeded("quantum function dimension exceeds the cap");
    validate(lc.candidate);
    return lc;
}

const std::string& label(const std::vector<std::string>& labels, std::size_t i) { return labels.at(i); }

int report_verification(Context& ctx, const QHomCandidate& c, const VerificationReport& r)
{
    ctx.report({{"event", "summary"},
                {"pass", r.pass},
                {"mode", std::string(to_string(c.mode))},
                {"dimension", c.qf.dim},
                {"qh1_violations", r.qh1.size()},
                {"qh2_violations", r.qh2.size()}});
    for (const auto& v : r.qh1)
        ctx.report({{"event", "qh1"},
                    {"symbol", c.source.signature()[v.symbol].name},
                    {"source_tuple", tuple_json(c.source, v.source_tuple)},
                    {"target_tuple", tuple_json(c.target, v.target_tuple)},
                    {"product", to_json(v.product)}});
    for (const auto& v : r.qh2)
        ctx.report({{"event", "qh2"},
                    {"a", c.source.label(v.a)},
                    {"b", c.target.label(v.b)},
                    {"a2", c.source.label(v.a2)},
                    {"b2", c.target.label(v.b2)},
                    {"commutator", to_json(v.commutator)}});
    if (r.pass) {
        ctx.out << "PASS " << to_string(c.mode) << " quantum homomorphism " << c.source.name() << " => "
                << c.target.name() << " (d = " << c.qf.dim << ")\n";
        return kPass;
    }
    ctx.out << "FAIL " << r.qh1.size() << " QH1 violation(s), " << r.qh2.size() << " QH2 violation(s)\n";
    if (!r.qh1.empty()) {
        const auto& v = r.qh1.front();
        ctx.out << "  first QH1: " << c.source.signature()[v.symbol].name << tuple_json(c.source, v.source_tuple).dump()
                << " -> " << tuple_json(c.target, v.target_tuple).dump() << " product " << v.product.to_string() << "\n";
    }
    if (!r.qh2.empty()) {
        const auto& v = r.qh2.front();
        ctx.out << "  first QH2: [Q_{" << c.source.label(v.a) << "," << c.target.label(v.b) << "}, Q_{"
                << c.source.label(v.a2) << "," << c.target.label(v.b2) << "}] = " << v.commutator.to_string() << "\n";
    }
    return kFail;
}

std::set<Tuple> relation_for(const GadgetSpec& g, const Structure& a, const std::string& relation_file)
{
    if (relation_file.empty())
        return restriction_set(g.structure, a, g.distinguished);
    Structure s = load_structure(relation_file);
    if (s.signature().size() != 1 || s.signature()[0].arity != static_cast<int>(g.arity()))
        throw InvalidArgument("relation file must hold one relation of arity " + std::to_string(g.arity()));
    std::set<Tuple> out;
    for (const auto& t : s.relation(0)) {
        Tuple u;
        for (int e : t) {
            auto idx = a.index_of(s.label(e));
            if (!idx)
                throw InvalidArgument("relation element '" + s.label(e) + "' is not in the target domain");
            u.push_back(*idx);
        }
        out.insert(u);
    }
    return out;
}

void print_certificate(Context& ctx, const std::string& subject, const Certificate& c)
{
    ctx.out << subject << ": " << c.condition << " " << to_string(c.kind);
    if (!c.tags.empty()) {
        ctx.out << " [";
        for (std::size_t i = 0; i < c.tags.size(); ++i)
            ctx.out << (i ? ", " : "") << c.tags[i];
        ctx.out << "]";
    }
    if (!c.witness.empty())
        ctx.out << " (" << c.witness << ")";
    ctx.out << "\n";
    json line = to_json(c);
    line["event"] = "certificate";
    line["subject"] = subject;
    ctx.report(std::move(line));
}

fs::path default_output(const std::string& instance, const std::string& suffix)
{
    fs::path p(instance);
    return p.parent_path() / (p.stem().string() + suffix);
}

void write_provenance(const fs::path& path, const CompiledInstance& ci)
{
    std::string text;
    for (std::size_t v = 0; v < ci.provenance.size(); ++v)
        text += json({{"vertex", ci.instance.label(static_cast<int>(v))}, {"origins", ci.provenance[v]}}).dump() + "\n";
    write_file(path, text);
}

std::string subset_list(const std::vector<std::pair<Mask, Mask>>& pairs, int n)
{
    std::string s;
    for (auto [a, b] : pairs)
        s += (s.empty() ? "" : " ") + ("(" + subset_string(a, n) + "," + subset_string(b, n) + ")");
    return s;
}

int subset_arity(const QuantumFunction& q)
{
    int n = 0;
    while ((std::size_t{1} << n) < q.source.size())
        ++n;
    if ((std::size_t{1} << n) != q.source.size())
        throw InvalidArgument("quantum function source is not {0,1}^n");
    return n;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact verifier for quantum homomorphisms, commutativity gadgets and gadget reductions", "qcsp"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string report_path;
    unsigned jobs = 1;
    app.add_option("--report", report_path, "Write a JSON-lines report to this file");
    app.add_option("--jobs", jobs, "Worker threads for verification")->check(CLI::Range(1u, 256u));

    std::string source, target, qfun, mode, structure_ref, gadget_ref, comm_ref, relation_ref, out_path;
    std::string instance, recipe_ref, template_ref, condition, action, name;
    std::vector<std::string> candidates, bits;
    int arity = 0, m = 0, n = 0;
    bool decompose = false, all_witnesses = false, dedupe = false;

    auto* verify_cmd = app.add_subcommand("verify", "Check QH1 (and QH2 in oracular mode) for a candidate");
    verify_cmd->add_option("--source", source, "Source structure file or catalog:<name>");
    verify_cmd->add_option("--target", target, "Target structure file or catalog:<name>");
    verify_cmd->add_option("--qfun", qfun, "Quantum function file or catalog:<candidate>")->required();
    verify_cmd->add_option("--mode", mode, "oracular | nonoracular");

    auto* poly_cmd = app.add_subcommand("polymorphism", "Check a quantum polymorphism A^n => A");
    poly_cmd->add_option("--structure", structure_ref, "Structure A")->required();
    poly_cmd->add_option("--arity", arity, "n")->required()->check(CLI::Range(1, 24));
    poly_cmd->add_option("--qfun", qfun, "Quantum function file or catalog:<candidate>")->required();
    poly_cmd->add_option("--mode", mode, "oracular | nonoracular");

    auto* ctx_cmd = app.add_subcommand("contextual", "Check that all projectors commute (non-contextuality)");
    ctx_cmd->add_option("--qfun", qfun, "Quantum function file or catalog:<candidate>")->required();
    ctx_cmd->add_flag("--decompose", decompose, "Print the classical decomposition when non-contextual");
    ctx_cmd->add_flag("--all", all_witnesses, "Report every witness quadruple");

    auto* bif_cmd = app.add_subcommand("bifurcation", "Search for a bifurcation of a candidate");
    bif_cmd->add_option("--source", source, "Source structure");
    bif_cmd->add_option("--target", target, "Target structure");
    bif_cmd->add_option("--qfun", qfun, "Quantum function file or catalog:<candidate>")->required();
    bif_cmd->add_option("--mode", mode, "oracular | nonoracular");

    auto* gc_cmd = app.add_subcommand("gadget-check", "Decide or certify a gadget condition");
    gc_cmd->add_option("--gadget", gadget_ref, "Gadget file or catalog:<name>")->required();
    gc_cmd->add_option("--target", target, "Template A")->required();
    gc_cmd->add_option("--condition", condition, "c1 c1prime c2 q1 q2 noc1 noc2 noq1 noq2")
        ->required()
        ->check(CLI::IsMember({"c1", "c1prime", "c2", "q1", "q2", "noc1", "noc2", "noq1", "noq2"}));
    gc_cmd->add_option("--relation", relation_ref, "Relation S for q-conditions (default: the relation the gadget defines)");
    gc_cmd->add_option("--candidate", candidates, "Quantum functions G => A to test against c2/q2");

    auto* qdef_cmd = app.add_subcommand("qdef-build", "Glue a commutativity gadget onto a classical gadget");
    qdef_cmd->add_option("--gadget", gadget_ref, "Classical gadget G")->required();
    qdef_cmd->add_option("--comm", comm_ref, "Commutativity gadget H")->required();
    qdef_cmd->add_option("--target", target, "Template A")->required();
    qdef_cmd->add_option("--relation", relation_ref, "Relation S (default: the relation G defines)");
    qdef_cmd->add_option("--out", out_path, "Output gadget file")->required();

    auto* red_cmd = app.add_subcommand("reduce", "Compile, lift or check gadget reductions");
    red_cmd->add_option("action", action, "compile (default) | lift | check")
        ->check(CLI::IsMember({"compile", "lift", "check"}));
    red_cmd->add_option("--instance", instance, "Instance X")->required();
    red_cmd->add_option("--recipe", recipe_ref, "Recipe file");
    red_cmd->add_option("--mode", mode, "oracular | nonoracular (overrides the recipe)");
    red_cmd->add_option("--target", target, "Template A for certificates (overrides the recipe)");
    red_cmd->add_option("--out", out_path, "Output structure file");
    red_cmd->add_flag("--dedupe-pairs", dedupe, "One comm-gadget copy per unordered pair (deviation from the construction)");
    red_cmd->add_option("--m", m, "Clique size for lift");
    red_cmd->add_option("--gadget", gadget_ref, "Commutativity gadget over K_m for lift");
    red_cmd->add_option("--source-template", template_ref, "Template B for check");

    auto* bool_cmd = app.add_subcommand("boolean", "Boolean-domain utilities");
    bool_cmd->add_option("action", action, "classify | cover | arity4 | polys100 | flip")
        ->required()
        ->check(CLI::IsMember({"classify", "cover", "arity4", "polys100", "flip"}));
    bool_cmd->add_option("--relation", bits, "Tuples of the relation as bitstrings");
    bool_cmd->add_option("--structure", structure_ref, "Boolean structure file with one relation");
    bool_cmd->add_option("--n", n, "Arity for cover")->check(CLI::Range(1, 8));
    bool_cmd->add_option("--qfun", qfun, "Quantum function {0,1}^n => {0,1}");
    bool_cmd->add_option("--out", out_path, "Output qfun file");

    auto* cat_cmd = app.add_subcommand("catalog", "List or export built-in fixtures");
    cat_cmd->add_option("action", action, "list | export")->required()->check(CLI::IsMember({"list", "export"}));
    cat_cmd->add_option("name", name, "Entry name, e.g. clique(4) or cycle:5");
    cat_cmd->add_option("--out-dir", out_path, "Directory for exported files");

    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kPass;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }

    Context ctx{out, err, app.get_subcommands().front()->get_name(), {}, default_limits(), {}};
    ctx.verify_options.jobs = jobs;
    int code = kInputError;
    try {
        if (const char* cap = std::getenv("QCSP_DIM_CAP")) {
            std::size_t value = 0;
            std::string text(cap);
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
            if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
                throw InvalidArgument("QCSP_DIM_CAP must be a positive integer");
            ctx.limits.max_dimension = value;
        }

        if (verify_cmd->parsed()) {
            auto lc = load_candidate(source, target, qfun, mode, ctx.limits);
            code = report_verification(ctx, lc.candidate, verify(lc.candidate, ctx.verify_options));
        } else if (poly_cmd->parsed()) {
            Structure a = load_structure(structure_ref);
            QHomCandidate c{direct_power(a, arity, ctx.limits), a, load_qfun(qfun, ctx.limits), Mode::Oracular};
            if (!mode.empty()) {
                auto mm = mode_from_string(mode);
                if (!mm)
                    throw InvalidArgument("unknown mode '" + mode + "'");
                c.mode = *mm;
            }
            validate(c);
            code = report_verification(ctx, c, verify(c, ctx.verify_options));
        } else if (ctx_cmd->parsed()) {
            QuantumFunction q = load_qfun(qfun, ctx.limits);
            validate(q);
            auto ws = contextuality_witnesses(q);
            ctx.report({{"event", "summary"}, {"noncontextual", ws.empty()}, {"witnesses", ws.size()}});
            std::size_t shown = all_witnesses ? ws.size() : std::min<std::size_t>(ws.size(), 1);
            for (std::size_t i = 0; i < shown; ++i) {
                const auto& w = ws[i];
                ctx.report({{"event", "witness"},
                            {"a", label(q.source, w.a)},
                            {"b", label(q.target, w.b)},
                            {"a2", label(q.source, w.a2)},
                            {"b2", label(q.target, w.b2)},
                            {"commutator", to_json(w.commutator)}});
            }
            if (ws.empty()) {
                out << "non-contextual: all projectors commute\n";
                if (decompose) {
                    auto d = decompose_noncontextual(q);
                    for (std::size_t i = 0; i < d.components.size(); ++i) {
                        out << "  component " << i << ":";
                        json map = json::object();
                        for (std::size_t a = 0; a < q.source.size(); ++a) {
                            const auto& b = q.target[static_cast<std::size_t>(d.components[i][a])];
                            out << ' ' << q.source[a] << "->" << b;
                            map[q.source[a]] = b;
                        }
                        out << "\n";
                        ctx.report({{"event", "component"}, {"index", i}, {"map", map}, {"basis", to_json(d.basis[i])}});
                    }
                }
                code = kPass;
            } else {
                const auto& w = ws.front();
                out << "contextual: " << ws.size() << " non-commuting pair(s); first [Q_{" << label(q.source, w.a)
                    << "," << label(q.target, w.b) << "}, Q_{" << label(q.source, w.a2) << ","
                    << label(q.target, w.b2) << "}] = " << w.commutator.to_string() << "\n";
                code = kFail;
            }
        } else if (bif_cmd->parsed()) {
            auto lc = load_candidate(source, target, qfun, mode, ctx.limits);
            const auto& c = lc.candidate;
            auto b = find_bifurcation(c);
            if (!b) {
                out << "no bifurcation\n";
                ctx.report({{"event", "summary"}, {"found", false}});
                code = kFail;
            } else {
                json path = json::array(), inner = json::array();
                for (int v : b->path)
                    path.push_back(c.source.label(v));
                for (int v : b->inner)
                    inner.push_back(c.target.label(v));
                ctx.report({{"event", "summary"},
                            {"found", true},
                            {"length", b->length()},
                            {"path", path},
                            {"a0", c.target.label(b->a0)},
                            {"a0_alt", c.target.label(b->a0_alt)},
                            {"inner", inner},
                            {"aw", c.target.label(b->aw)},
                            {"aw_alt", c.target.label(b->aw_alt)}});
                out << "bifurcation of length " << b->length() << " along " << path.dump() << " with labels "
                    << c.target.label(b->a0) << "/" << c.target.label(b->a0_alt) << " " << inner.dump() << " "
                    << c.target.label(b->aw) << "/" << c.target.label(b->aw_alt) << "\n";
                code = kPass;
            }
        } else if (gc_cmd->parsed()) {
            GadgetSpec g = load_gadget(gadget_ref);
            Structure a = load_structure(target);
            const bool nono = condition.rfind("no", 0) == 0;
            const Mode cm = nono ? Mode::NonOracular : Mode::Oracular;
            std::vector<QuantumFunction> qs;
            for (const auto& ref : candidates)
                qs.push_back(load_qfun(ref, ctx.limits));
            Certificate cert;
            if (condition == "c1" || condition == "noc1" || condition == "c1prime") {
                auto check = condition == "c1prime" ? check_c1_prime(g, a) : check_c1(g, a);
                cert = extension_certificate(check, condition);
                if (check.missing)
                    cert.witness = "no extension for " + tuple_json(a, *check.missing).dump();
            } else if (condition == "q1" || condition == "noq1") {
                auto check = check_q1(g, a, relation_for(g, a, relation_ref));
                cert = extension_certificate(check, condition);
                if (check.missing)
                    cert.witness = "no extension for " + tuple_json(a, *check.missing).dump();
            } else if (condition == "c2" || condition == "noc2") {
                cert = check_c2(g, a, qs, cm);
            } else {
                cert = check_q2(g, a, relation_for(g, a, relation_ref), qs, cm);
            }
            print_certificate(ctx, g.structure.name().empty() ? "gadget" : g.structure.name(), cert);
            code = cert.holds() ? kPass : kFail;
        } else if (qdef_cmd->parsed()) {
            GadgetSpec g = load_gadget(gadget_ref);
            GadgetSpec h = load_gadget(comm_ref);
            Structure a = load_structure(target);
            GadgetSpec q = build_qdef(g, h, a, relation_for(g, a, relation_ref), ctx.limits);
            write_file(out_path, write_gadget(q));
            out << "wrote " << out_path << " with " << q.structure.size() << " elements\n";
            ctx.report({{"event", "summary"}, {"out", out_path}, {"elements", q.structure.size()}});
            if (q.certificate)
                print_certificate(ctx, "qdef", *q.certificate);
            code = kPass;
        } else if (red_cmd->parsed()) {
            Structure x = load_structure(instance);
            if (action.empty() || action == "compile" || action == "check") {
                if (recipe_ref.empty())
                    throw InvalidArgument("--recipe is required");
                ReductionRecipe r = read_recipe(recipe_ref);
                if (!mode.empty()) {
                    auto mm = mode_from_string(mode);
                    if (!mm)
                        throw InvalidArgument("unknown mode '" + mode + "'");
                    r.mode = *mm;
                }
                if (!target.empty())
                    r.target = load_structure(target);
                // Follow the instance's symbol order; arities are checked by validate.
                if (x.signature().size() == r.source_signature.size()) {
                    bool same = true;
                    for (const auto& s : x.signature().symbols())
                        same = same && r.source_signature.find(s.name).has_value();
                    if (same)
                        r.source_signature = x.signature();
                }
                CompileOptions opts{dedupe};
                if (action == "check") {
                    if (template_ref.empty() || !r.target)
                        throw InvalidArgument("check needs --source-template and a target");
                    Structure b = load_structure(template_ref);
                    auto res = classical_equivalence_check(x, r, b, *r.target, opts, ctx.limits);
                    out << (res.equivalent ? "equivalent" : "NOT equivalent") << ": X -> B "
                        << (res.source_maps ? "yes" : "no") << ", compiled -> A " << (res.compiled_maps ? "yes" : "no")
                        << "\n";
                    ctx.report({{"event", "summary"},
                                {"equivalent", res.equivalent},
                                {"source_maps", res.source_maps},
                                {"compiled_maps", res.compiled_maps}});
                    code = res.equivalent ? kPass : kFail;
                } else {
                    auto ci = compile(x, r, opts, ctx.limits);
                    fs::path dest = out_path.empty() ? default_output(instance, "_compiled.struct") : fs::path(out_path);
                    write_file(dest, write_structure(ci.instance));
                    fs::path side = dest.string() + ".provenance.jsonl";
                    write_provenance(side, ci);
                    out << "wrote " << dest.string() << " (" << ci.instance.size() << " elements, "
                        << ci.instance.tuple_count() << " tuples, " << to_string(r.mode) << ", "
                        << (ci.certified ? "certified" : "uncertified") << ")\n";
                    ctx.report({{"event", "summary"},
                                {"out", dest.string()},
                                {"provenance", side.string()},
                                {"elements", ci.instance.size()},
                                {"tuples", ci.instance.tuple_count()},
                                {"mode", std::string(to_string(r.mode))},
                                {"certified", ci.certified}});
                    for (const auto& [subject, c] : ci.certificates)
                        print_certificate(ctx, subject, c);
                    code = kPass;
                }
            } else {
                if (gadget_ref.empty() || m == 0)
                    throw InvalidArgument("lift needs --m and --gadget");
                GadgetSpec h = load_gadget(gadget_ref);
                auto ci = clique_lift(x, m, h, ctx.limits);
                fs::path dest = out_path.empty() ? default_output(instance, "_lift.struct") : fs::path(out_path);
                write_file(dest, write_structure(ci.instance));
                write_provenance(dest.string() + ".provenance.jsonl", ci);
                out << "wrote " << dest.string() << " (" << ci.instance.size() << " elements)\n";
                ctx.report({{"event", "summary"}, {"out", dest.string()}, {"elements", ci.instance.size()}});
                for (const auto& [subject, c] : ci.certificates)
                    print_certificate(ctx, subject, c);
                code = kPass;
            }
        } else if (bool_cmd->parsed()) {
            if (action == "classify") {
                BoolRelation r;
                if (!structure_ref.empty()) {
                    Structure s = load_structure(structure_ref);
                    if (s.signature().size() != 1)
                        throw InvalidArgument("classify expects a structure with one relation");
                    r.arity = s.signature()[0].arity;
                    for (const auto& t : s.relation(0)) {
                        std::string word;
                        for (int e : t)
                            word += s.label(e);
                        r.masks.insert(parse_mask(word));
                    }
                } else if (!bits.empty()) {
                    r.arity = static_cast<int>(bits.front().size());
                    for (const auto& b : bits) {
                        if (static_cast<int>(b.size()) != r.arity)
                            throw InvalidArgument("bitstrings of different lengths");
                        r.masks.insert(parse_mask(b));
                    }
                } else {
                    throw InvalidArgument("classify needs --relation or --structure");
                }
                auto maj = majority_preserves(r);
                bool full = has_full_binary_projection(r);
                bool triple = property_triple(r);
                auto t = classify_translate(r);
                out << "majority-preserved: " << (maj.preserved ? "yes" : "no") << "\n"
                    << "full binary projection: " << (full ? "yes" : "no") << "\n"
                    << "property triple: " << (triple ? "yes" : "no") << "\n"
                    << "translate of 1-in-" << r.arity << ": " << (t ? mask_string(*t, r.arity) : "none") << "\n";
                ctx.report({{"event", "summary"},
                            {"majority_preserved", maj.preserved},
                            {"full_binary_projection", full},
                            {"property_triple", triple},
                            {"translate", t ? json(mask_string(*t, r.arity)) : json(nullptr)}});
                code = t ? kPass : kFail;
            } else if (action == "cover") {
                if (n == 0)
                    throw InvalidArgument("cover needs --n");
                auto pairs = forced_commutation_cover(n);
                out << pairs.size() << " pair(s)" << (pairs.empty() ? "" : ": " + subset_list(pairs, n)) << "\n";
                json list = json::array();
                for (auto [a, b] : pairs)
                    list.push_back({subset_string(a, n), subset_string(b, n)});
                ctx.report({{"event", "summary"}, {"n", n}, {"pairs", list}});
                code = kPass;
            } else if (action == "arity4") {
                auto q = build_arity4_contextual();
                auto qf = q.to_quantum_function();
                auto rep = is_quantum_polymorphism(build_b(), 4, qf, Mode::Oracular, ctx.verify_options);
                bool contextual = !is_noncontextual(qf);
                out << "arity-4 quantum polymorphism of B: " << (rep.pass ? "verified" : "FAILED") << ", "
                    << (contextual ? "contextual" : "non-contextual") << "\n";
                ctx.report({{"event", "summary"}, {"verified", rep.pass}, {"contextual", contextual}});
                if (!out_path.empty())
                    write_file(out_path, write_qfun(qf));
                code = rep.pass && contextual ? kPass : kFail;
            } else if (action == "polys100") {
                QuantumFunction qf = load_qfun(qfun, ctx.limits);
                auto rep = check_polys100(SubsetIndexedQF::from_quantum_function(qf, subset_arity(qf)));
                out << (rep.ok ? "all four identities hold" : "identity failures: " + std::to_string(rep.failures.size()))
                    << "\n";
                for (const auto& f : rep.failures)
                    out << "  " << f << "\n";
                ctx.report({{"event", "summary"}, {"ok", rep.ok}, {"failures", rep.failures}});
                code = rep.ok ? kPass : kFail;
            } else {
                QuantumFunction qf = load_qfun(qfun, ctx.limits);
                auto flipped = flip_dual(SubsetIndexedQF::from_quantum_function(qf, subset_arity(qf)));
                std::string text = write_qfun(flipped.to_quantum_function());
                if (out_path.empty())
                    out << text;
                else
                    write_file(out_path, text);
                code = kPass;
            }
        } else if (cat_cmd->parsed()) {
            if (action == "list") {
                for (const auto& t : catalog_templates())
                    out << t.name << "\t" << t.kind << "\t" << t.description << "\n";
                for (const auto& fixture : catalog_fixture_names()) {
                    auto e = catalog_get(fixture);
                    json flags_json = json::array();
                    for (const auto& f : e.flags)
                        flags_json.push_back(f);
                    ctx.report({{"event", "entry"}, {"name", e.name}, {"flags", flags_json}, {"tags", e.tags}});
                }
                code = kPass;
            } else {
                if (name.empty())
                    throw InvalidArgument("catalog export needs a name");
                auto e = catalog_get(name);
                std::string base = e.name;
                for (char& ch : base)
                    if (ch == '(' || ch == ')' || ch == ',' || ch == ':')
                        ch = '_';
                while (!base.empty() && base.back() == '_')
                    base.pop_back();
                std::vector<std::pair<std::string, std::string>> files;
                if (e.is_structure())
                    files.emplace_back(base + ".struct", write_structure(e.structure()));
                else if (e.is_gadget())
                    files.emplace_back(base + ".gadget", write_gadget(e.gadget()));
                else {
                    files.emplace_back(base + ".qfun", write_qfun(e.candidate().qf));
                    files.emplace_back(base + ".source.struct", write_structure(e.candidate().source));
                    files.emplace_back(base + ".target.struct", write_structure(e.candidate().target));
                }
                if (out_path.empty()) {
                    out << files.front().second;
                } else {
                    fs::create_directories(out_path);
                    for (const auto& [file, text] : files) {
                        write_file(fs::path(out_path) / file, text);
                        out << "wrote " << (fs::path(out_path) / file).string() << "\n";
                    }
                }
                json flags_json = json::array();
                for (const auto& f : e.flags)
                    flags_json.push_back(f);
                ctx.report({{"event", "entry"}, {"name", e.name}, {"flags", flags_json}, {"tags", e.tags}});
                code = kPass;
            }
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        ctx.report({{"event", "error"}, {"kind", "parse"}, {"message", e.what()}});
        code = kInputError;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        ctx.report({{"event", "error"}, {"kind", "invalid-argument"}, {"message", e.what()}});
        code = kInputError;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        ctx.report({{"event", "error"}, {"kind", "cap-exceeded"}, {"message", e.what()}});
        code = kInputError;
    } catch (const PreconditionViolation& e) {
        err << "precondition failed: " << e.what() << "\n";
        ctx.report({{"event", "error"}, {"kind", "precondition"}, {"message", e.what()}});
        code = kFail;
    }

    if (!report_path.empty()) {
        std::string text;
        for (const auto& line : ctx.lines)
            text += line.dump() + "\n";
        try {
            write_file(report_path, text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kInputError;
        }
    }
    return code;
}

} // namespace qcsp
