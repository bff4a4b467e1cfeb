#include "qcsp/reduce.hpp"

#include "qcsp/errors.hpp"
#include "qcsp/gadgets.hpp"

#include <numeric>

namespace qcsp {

void ReductionRecipe::validate() const
{
    std::optional<Signature> sigma;
    for (const auto& sym : source_signature.symbols()) {
        auto it = gadgets.find(sym.name);
        if (it == gadgets.end())
            throw InvalidArgument("recipe: no gadget for symbol '" + sym.name + "'");
        if (it->second.arity() != static_cast<std::size_t>(sym.arity))
            throw InvalidArgument("recipe: gadget for '" + sym.name + "' has " +
                                  std::to_string(it->second.arity()) + " distinguished elements, expected " +
                                  std::to_string(sym.arity));
        if (sigma && !(*sigma == it->second.structure.signature()))
            throw InvalidArgument("recipe: gadgets use different signatures");
        sigma = it->second.structure.signature();
    }
    for (const auto& [name, g] : gadgets)
        if (!source_signature.find(name))
            throw InvalidArgument("recipe: gadget given for unknown symbol '" + name + "'");
    if (mode == Mode::NonOracular && !comm_gadget)
        throw InvalidArgument("recipe: the non-oracular compiler needs a commutativity gadget");
    if (comm_gadget) {
        if (comm_gadget->arity() != 2 || comm_gadget->distinguished[0] == comm_gadget->distinguished[1])
            throw InvalidArgument("recipe: commutativity gadget needs two distinct distinguished elements");
        if (sigma && !(*sigma == comm_gadget->structure.signature()))
            throw InvalidArgument("recipe: commutativity gadget signature differs from the gadgets");
    }
    if (target && sigma && !(*sigma == target->signature()))
        throw InvalidArgument("recipe: target signature differs from the gadgets");
}

namespace {

// Collects copies of gadgets and glues elements with union-find.
class Builder {
public:
    Builder(Signature signature, const Limits& limits) : signature_(std::move(signature)), limits_(limits) {}

    int add_node(std::string tag)
    {
        if (tags_.size() >= limits_.max_vertices * 4)
            throw CapExceeded("compiled instance exceeds the vertex cap");
        tags_.push_back(std::move(tag));
        parent_.push_back(static_cast<int>(parent_.size()));
        return static_cast<int>(tags_.size()) - 1;
    }

    std::vector<int> add_copy(const Structure& s, const std::string& prefix)
    {
        std::vector<int> ids;
        for (std::size_t e = 0; e < s.size(); ++e)
            ids.push_back(add_node(prefix + s.label(static_cast<int>(e))));
        for (std::size_t k = 0; k < s.signature().size(); ++k) {
            auto target = signature_.find(s.signature()[k].name);
            for (const auto& t : s.relation(k)) {
                Tuple u;
                for (int e : t)
                    u.push_back(ids[static_cast<std::size_t>(e)]);
                tuples_.emplace_back(*target, std::move(u));
            }
        }
        return ids;
    }

    void add_tuple(std::size_t symbol, Tuple t) { tuples_.emplace_back(symbol, std::move(t)); }

    void glue(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (b < a)
            std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
    }

    CompiledInstance finish(const std::string& name)
    {
        std::vector<int> index(tags_.size(), -1);
        std::vector<std::string> labels;
        std::vector<std::vector<std::string>> provenance;
        for (std::size_t v = 0; v < tags_.size(); ++v)
            if (find(static_cast<int>(v)) == static_cast<int>(v)) {
                index[v] = static_cast<int>(labels.size());
                labels.push_back(tags_[v]);
                provenance.push_back({tags_[v]});
            }
        if (labels.size() > limits_.max_vertices)
            throw CapExceeded("compiled instance has " + std::to_string(labels.size()) +
                              " elements, above the cap of " + std::to_string(limits_.max_vertices));
        for (std::size_t v = 0; v < tags_.size(); ++v) {
            int root = find(static_cast<int>(v));
            if (root != static_cast<int>(v))
                provenance[static_cast<std::size_t>(index[static_cast<std::size_t>(root)])].push_back(tags_[v]);
        }
        Structure out(signature_, std::move(labels), name);
        for (auto& [k, t] : tuples_) {
            for (int& e : t)
                e = index[static_cast<std::size_t>(find(e))];
            out.add_tuple(k, t);
        }
        CompiledInstance ci;
        ci.instance = std::move(out);
        ci.provenance = std::move(provenance);
        return ci;
    }

private:
    int find(int v)
    {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }

    Signature signature_;
    const Limits& limits_;
    std::vector<std::string> tags_;
    std::vector<int> parent_;
    std::vector<std::pair<std::size_t, Tuple>> tuples_;
};

Signature gadget_signature(const ReductionRecipe& recipe)
{
    if (!recipe.gadgets.empty())
        return recipe.gadgets.begin()->second.structure.signature();
    if (recipe.comm_gadget)
        return recipe.comm_gadget->structure.signature();
    if (recipe.target)
        return recipe.target->signature();
    return recipe.source_signature;
}

void certify(CompiledInstance& ci, const ReductionRecipe& recipe)
{
    const Mode mode = recipe.mode;
    const std::string q2 = mode == Mode::Oracular ? "q2" : "noq2";
    bool all = true;
    auto note = [&](std::string subject, Certificate c) {
        all = all && c.holds();
        ci.certificates.emplace_back(std::move(subject), std::move(c));
    };
    for (const auto& sym : recipe.source_signature.symbols()) {
        const GadgetSpec& g = recipe.gadgets.at(sym.name);
        Certificate c;
        if (recipe.target) {
            auto s = restriction_set(g.structure, *recipe.target, g.distinguished);
            c = check_q2(g, *recipe.target, s, {}, mode);
        } else if (g.certificate && g.certificate->condition == q2) {
            c = *g.certificate;
        } else {
            c.condition = q2;
        }
        note("gadget:" + sym.name, std::move(c));
    }
    if (mode == Mode::NonOracular) {
        const GadgetSpec& h = *recipe.comm_gadget;
        Certificate c;
        if (recipe.target)
            c = check_c2(h, *recipe.target, {}, Mode::NonOracular);
        else if (h.certificate && h.certificate->condition == "noc2")
            c = *h.certificate;
        else
            c.condition = "noc2";
        note("comm", std::move(c));
    }
    ci.certified = all;
}

CompiledInstance compile_impl(const Structure& x, const ReductionRecipe& recipe, bool with_comm, bool dedupe,
                              const Limits& limits)
{
    recipe.validate();
    if (!(x.signature() == recipe.source_signature))
        throw InvalidArgument("compile: instance signature differs from the recipe");
    Builder b(gadget_signature(recipe), limits);
    for (std::size_t v = 0; v < x.size(); ++v)
        b.add_node("x:" + x.label(static_cast<int>(v)));
    for (std::size_t k = 0; k < x.signature().size(); ++k) {
        const auto& sym = x.signature()[k];
        const GadgetSpec& g = recipe.gadgets.at(sym.name);
        std::size_t index = 0;
        for (const auto& t : x.relation(k)) {
            auto ids = b.add_copy(g.structure, "g:" + sym.name + ":" + std::to_string(index++) + ":");
            for (std::size_t i = 0; i < t.size(); ++i)
                b.glue(ids[static_cast<std::size_t>(g.distinguished[i])], t[i]);
        }
    }
    if (with_comm) {
        const GadgetSpec& h = *recipe.comm_gadget;
        auto adj = gaifman_adjacency(x);
        std::size_t edge = 0;
        for (std::size_t u = 0; u < adj.size(); ++u)
            for (int v : adj[u]) {
                if (dedupe && v < static_cast<int>(u))
                    continue;
                auto ids = b.add_copy(h.structure, "h:" + std::to_string(edge++) + ":");
                b.glue(ids[static_cast<std::size_t>(h.distinguished[0])], static_cast<int>(u));
                b.glue(ids[static_cast<std::size_t>(h.distinguished[1])], v);
            }
    }
    auto ci = b.finish(x.name().empty() ? "Y" : x.name() + "_compiled");
    certify(ci, recipe);
    return ci;
}

} // namespace

CompiledInstance compile_oracular(const Structure& x, const ReductionRecipe& recipe, const Limits& limits)
{
    if (recipe.mode != Mode::Oracular)
        throw InvalidArgument("compile_oracular: recipe is non-oracular");
    return compile_impl(x, recipe, false, false, limits);
}

CompiledInstance compile_nonoracular(const Structure& x, const ReductionRecipe& recipe, const CompileOptions& options,
                                     const Limits& limits)
{
    if (recipe.mode != Mode::NonOracular)
        throw InvalidArgument("compile_nonoracular: recipe is oracular");
    return compile_impl(x, recipe, true, options.dedupe_pairs, limits);
}

CompiledInstance compile(const Structure& x, const ReductionRecipe& recipe, const CompileOptions& options,
                         const Limits& limits)
{
    return recipe.mode == Mode::Oracular ? compile_oracular(x, recipe, limits)
                                         : compile_nonoracular(x, recipe, options, limits);
}

CompiledInstance clique_lift(const Structure& x, int m, const GadgetSpec& h, const Limits& limits)
{
    if (m < 3)
        throw InvalidArgument("clique_lift: m must be at least 3");
    if (x.signature().size() != 1 || x.signature()[0].arity != 2)
        throw InvalidArgument("clique_lift: instance must be a graph with one binary relation");
    if (!(h.structure.signature() == x.signature()))
        throw InvalidArgument("clique_lift: gadget signature differs from the instance");
    if (h.arity() != 2 || h.distinguished[0] == h.distinguished[1])
        throw InvalidArgument("clique_lift: commutativity gadget needs two distinct distinguished elements");
    for (const auto& t : x.relation(0))
        if (t[0] == t[1])
            throw InvalidArgument("clique_lift: instance has a loop");
    auto adj = gaifman_adjacency(x);
    for (std::size_t v = 0; v < adj.size(); ++v)
        if (adj[v].empty())
            throw InvalidArgument("clique_lift: vertex '" + x.label(static_cast<int>(v)) + "' is isolated");

    Builder b(x.signature(), limits);
    const int n = static_cast<int>(x.size());
    for (int v = 0; v < n; ++v)
        b.add_node("x:" + x.label(v));
    std::vector<int> ys;
    for (int i = 4; i <= m; ++i)
        ys.push_back(b.add_node("y:" + std::to_string(i)));
    for (const auto& t : x.relation(0))
        b.add_tuple(0, t);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        for (int v = 0; v < n; ++v) {
            b.add_tuple(0, {v, ys[i]});
            b.add_tuple(0, {ys[i], v});
        }
        for (std::size_t j = 0; j < ys.size(); ++j)
            if (i != j)
                b.add_tuple(0, {ys[i], ys[j]});
    }
    std::size_t pair = 0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        std::vector<int> others;
        for (int v = 0; v < n; ++v)
            others.push_back(v);
        for (std::size_t j = i + 1; j < ys.size(); ++j)
            others.push_back(ys[j]);
        for (int w : others) {
            auto ids = b.add_copy(h.structure, "h:" + std::to_string(pair++) + ":");
            b.glue(ids[static_cast<std::size_t>(h.distinguished[0])], ys[i]);
            b.glue(ids[static_cast<std::size_t>(h.distinguished[1])], w);
        }
    }
    auto ci = b.finish(x.name().empty() ? "Z" : x.name() + "_lift");
    Certificate c = check_c2(h, clique(m), {}, Mode::Oracular);
    ci.certified = c.holds();
    ci.certificates.emplace_back("comm", std::move(c));
    return ci;
}

EquivalenceResult classical_equivalence_check(const Structure& x, const ReductionRecipe& recipe, const Structure& b,
                                              const Structure& a, const CompileOptions& options, const Limits& limits)
{
    if (!(x.signature() == b.signature()))
        throw InvalidArgument("classical_equivalence_check: instance and source template signatures differ");
    ReductionRecipe plain = recipe;
    plain.target.reset();
    auto y = compile(x, plain, options, limits);
    SearchOptions opts;
    opts.node_limit = limits.max_search_nodes;
    EquivalenceResult r;
    r.source_maps = hom_search(x, b, opts).has_value();
    r.compiled_maps = hom_search(y.instance, a, opts).has_value();
    r.equivalent = r.source_maps == r.compiled_maps;
    return r;
}

} // namespace qcsp
