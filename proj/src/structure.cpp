#include "qcsp/structure.hpp"

#include "qcsp/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace qcsp {

// ---- Signature ------------------------------------------------------------

Signature::Signature(std::initializer_list<Symbol> symbols)
{
    for (const auto& s : symbols)
        add(s.name, s.arity);
}

std::size_t Signature::add(const std::string& name, int arity)
{
    if (arity < 1)
        throw InvalidArgument("symbol '" + name + "' must have positive arity");
    if (find(name))
        throw InvalidArgument("duplicate symbol '" + name + "'");
    symbols_.push_back({name, arity});
    return symbols_.size() - 1;
}

std::optional<std::size_t> Signature::find(const std::string& name) const
{
    for (std::size_t k = 0; k < symbols_.size(); ++k)
        if (symbols_[k].name == name)
            return k;
    return std::nullopt;
}

bool Signature::is_binary() const
{
    return std::all_of(symbols_.begin(), symbols_.end(), [](const Symbol& s) { return s.arity == 2; });
}

// ---- Structure ------------------------------------------------------------

Structure::Structure(Signature signature, std::vector<std::string> labels, std::string name)
    : name_(std::move(name)), signature_(std::move(signature)), labels_(std::move(labels)),
      relations_(signature_.size())
{
    std::set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw InvalidArgument("duplicate element label '" + l + "'");
}

Structure::Structure(Signature signature, std::size_t size, std::string name)
    : name_(std::move(name)), signature_(std::move(signature)), relations_(signature_.size())
{
    labels_.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        labels_.push_back(std::to_string(i));
}

std::optional<int> Structure::index_of(const std::string& label) const
{
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        return std::nullopt;
    return static_cast<int>(it - labels_.begin());
}

void Structure::add_tuple(std::size_t symbol, Tuple tuple)
{
    if (symbol >= signature_.size())
        throw InvalidArgument("unknown symbol index");
    if (tuple.size() != static_cast<std::size_t>(signature_[symbol].arity))
        throw InvalidArgument("tuple arity does not match symbol '" + signature_[symbol].name + "'");
    for (int e : tuple)
        if (e < 0 || static_cast<std::size_t>(e) >= labels_.size())
            throw InvalidArgument("tuple entry out of domain");
    relations_[symbol].insert(std::move(tuple));
}

void Structure::add_tuple(const std::string& symbol, Tuple tuple)
{
    auto k = signature_.find(symbol);
    if (!k)
        throw InvalidArgument("unknown symbol '" + symbol + "'");
    add_tuple(*k, std::move(tuple));
}

const std::set<Tuple>& Structure::relation(const std::string& symbol) const
{
    auto k = signature_.find(symbol);
    if (!k)
        throw InvalidArgument("unknown symbol '" + symbol + "'");
    return relations_[*k];
}

std::size_t Structure::tuple_count() const
{
    std::size_t n = 0;
    for (const auto& r : relations_)
        n += r.size();
    return n;
}

bool Structure::same_relations(const Structure& other) const
{
    return signature_ == other.signature_ && size() == other.size() && relations_ == other.relations_;
}

GadgetSpec::GadgetSpec(Structure s, std::vector<int> d) : structure(std::move(s)), distinguished(std::move(d))
{
    if (distinguished.empty())
        throw InvalidArgument("gadget needs at least one distinguished element");
    for (int g : distinguished)
        if (g < 0 || static_cast<std::size_t>(g) >= structure.size())
            throw InvalidArgument("distinguished element out of domain");
}

void PPFormula::validate() const
{
    std::set<std::string> f(free.begin(), free.end());
    std::set<std::string> b(bound.begin(), bound.end());
    if (f.size() != free.size() || b.size() != bound.size())
        throw InvalidArgument("pp-formula: repeated variable declaration");
    for (const auto& v : f)
        if (b.count(v))
            throw InvalidArgument("pp-formula: variable '" + v + "' is both free and bound");
    for (const auto& atom : atoms) {
        auto k = signature.find(atom.symbol);
        if (!k)
            throw InvalidArgument("pp-formula: unknown symbol '" + atom.symbol + "'");
        if (atom.variables.size() != static_cast<std::size_t>(signature[*k].arity))
            throw InvalidArgument("pp-formula: arity mismatch in atom " + atom.symbol);
        for (const auto& v : atom.variables)
            if (!f.count(v) && !b.count(v))
                throw InvalidArgument("pp-formula: undeclared variable '" + v + "'");
    }
}

// ---- constructions --------------------------------------------------------

namespace {

Signature edge_signature()
{
    return Signature{{"E", 2}};
}

std::string tuple_label(const std::vector<std::string>& parts)
{
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i)
            s += ',';
        s += parts[i];
    }
    return s + ")";
}

void require_same_signature(const Structure& a, const Structure& b, const char* what)
{
    if (!(a.signature() == b.signature()))
        throw InvalidArgument(std::string(what) + ": signature mismatch");
}

} // namespace

Structure clique(int m)
{
    if (m < 1)
        throw InvalidArgument("clique size must be positive");
    Structure k(edge_signature(), static_cast<std::size_t>(m), "K" + std::to_string(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (i != j)
                k.add_tuple(0, {i, j});
    return k;
}

Structure cycle(int m)
{
    if (m < 3)
        throw InvalidArgument("cycle length must be at least 3");
    Structure c(edge_signature(), static_cast<std::size_t>(m), "C" + std::to_string(m));
    for (int i = 0; i < m; ++i) {
        c.add_tuple(0, {i, (i + 1) % m});
        c.add_tuple(0, {(i + 1) % m, i});
    }
    return c;
}

Structure directed_path(int length)
{
    if (length < 0)
        throw InvalidArgument("path length must be non-negative");
    Structure p(edge_signature(), static_cast<std::size_t>(length + 1), "P" + std::to_string(length));
    for (int i = 0; i < length; ++i)
        p.add_tuple(0, {i, i + 1});
    return p;
}

Structure one_tuple_structure(const std::string& symbol, int arity)
{
    Signature sig;
    sig.add(symbol, arity);
    std::vector<std::string> labels;
    Tuple t;
    for (int i = 1; i <= arity; ++i) {
        labels.push_back(std::to_string(i));
        t.push_back(i - 1);
    }
    Structure r(sig, labels, "R");
    r.add_tuple(0, t);
    return r;
}

std::size_t power_index(const std::vector<int>& components, std::size_t base)
{
    std::size_t idx = 0;
    for (int c : components)
        idx = idx * base + static_cast<std::size_t>(c);
    return idx;
}

std::vector<int> power_components(std::size_t index, std::size_t base, std::size_t n)
{
    std::vector<int> c(n);
    for (std::size_t i = n; i-- > 0;) {
        c[i] = static_cast<int>(index % base);
        index /= base;
    }
    return c;
}

Structure direct_power(const Structure& a, int n, const Limits& limits)
{
    if (n < 1)
        throw InvalidArgument("direct_power: exponent must be at least 1");
    const std::size_t base = a.size();
    std::size_t count = 1;
    for (int i = 0; i < n; ++i) {
        if (base != 0 && count > limits.max_vertices / std::max<std::size_t>(base, 1))
            throw CapExceeded("direct_power: " + std::to_string(base) + "^" + std::to_string(n) +
                              " exceeds the vertex cap of " + std::to_string(limits.max_vertices));
        count *= base;
    }
    if (count > limits.max_vertices)
        throw CapExceeded("direct_power: vertex cap exceeded");

    std::vector<std::string> labels;
    labels.reserve(count);
    for (std::size_t idx = 0; idx < count; ++idx) {
        if (n == 1) {
            labels.push_back(a.label(static_cast<int>(idx)));
            continue;
        }
        std::vector<std::string> parts;
        for (int c : power_components(idx, base, static_cast<std::size_t>(n)))
            parts.push_back(a.label(c));
        labels.push_back(tuple_label(parts));
    }
    Structure p(a.signature(), std::move(labels),
                n == 1 ? a.name() : a.name() + "^" + std::to_string(n));

    for (std::size_t k = 0; k < a.signature().size(); ++k) {
        const std::vector<Tuple> rows(a.relation(k).begin(), a.relation(k).end());
        const std::size_t m = rows.size();
        if (m == 0)
            continue;
        std::size_t total = 1;
        for (int i = 0; i < n; ++i) {
            if (total > limits.max_tuples / m)
                throw CapExceeded("direct_power: tuple cap exceeded");
            total *= m;
        }
        const std::size_t r = static_cast<std::size_t>(a.signature()[k].arity);
        std::vector<std::size_t> choice(static_cast<std::size_t>(n), 0);
        for (std::size_t step = 0; step < total; ++step) {
            Tuple t(r);
            for (std::size_t j = 0; j < r; ++j) {
                std::size_t idx = 0;
                for (int i = 0; i < n; ++i)
                    idx = idx * base + static_cast<std::size_t>(rows[choice[static_cast<std::size_t>(i)]][j]);
                t[j] = static_cast<int>(idx);
            }
            p.add_tuple(k, std::move(t));
            for (std::size_t i = static_cast<std::size_t>(n); i-- > 0;) {
                if (++choice[i] < m)
                    break;
                choice[i] = 0;
            }
        }
    }
    return p;
}

Structure product(const Structure& a, const Structure& b, const Limits& limits)
{
    require_same_signature(a, b, "product");
    if (a.size() * b.size() > limits.max_vertices)
        throw CapExceeded("product: vertex cap exceeded");
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            labels.push_back(tuple_label({a.label(static_cast<int>(i)), b.label(static_cast<int>(j))}));
    Structure p(a.signature(), std::move(labels), a.name() + "x" + b.name());
    const int bs = static_cast<int>(b.size());
    for (std::size_t k = 0; k < a.signature().size(); ++k)
        for (const auto& s : a.relation(k))
            for (const auto& t : b.relation(k)) {
                Tuple u(s.size());
                for (std::size_t j = 0; j < s.size(); ++j)
                    u[j] = s[j] * bs + t[j];
                p.add_tuple(k, std::move(u));
            }
    return p;
}

std::vector<std::vector<int>> gaifman_adjacency(const Structure& x)
{
    std::vector<std::set<int>> adj(x.size());
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k))
            for (int u : t)
                for (int v : t)
                    if (u != v)
                        adj[static_cast<std::size_t>(u)].insert(v);
    std::vector<std::vector<int>> out;
    out.reserve(adj.size());
    for (const auto& s : adj)
        out.emplace_back(s.begin(), s.end());
    return out;
}

Structure gaifman(const Structure& x)
{
    Structure g(edge_signature(), x.labels(), "Gaif(" + x.name() + ")");
    auto adj = gaifman_adjacency(x);
    for (std::size_t u = 0; u < adj.size(); ++u)
        for (int v : adj[u])
            g.add_tuple(0, {static_cast<int>(u), v});
    return g;
}

Structure undirected_reduct(const Structure& x)
{
    if (!x.signature().is_binary())
        throw InvalidArgument("undirected_reduct: structure is not binary");
    Structure u(edge_signature(), x.labels(), x.name() + "^u");
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k)) {
            u.add_tuple(0, {t[0], t[1]});
            u.add_tuple(0, {t[1], t[0]});
        }
    return u;
}

namespace {

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int source)
{
    std::vector<int> dist(adj.size(), -1);
    std::deque<int> queue{source};
    dist[static_cast<std::size_t>(source)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)])
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
    }
    return dist;
}

} // namespace

Distance distance(const Structure& x, int from, int to)
{
    if (from < 0 || to < 0 || static_cast<std::size_t>(from) >= x.size() || static_cast<std::size_t>(to) >= x.size())
        throw InvalidArgument("distance: element out of domain");
    int d = bfs(gaifman_adjacency(x), from)[static_cast<std::size_t>(to)];
    if (d < 0)
        return std::nullopt;
    return d;
}

Distance diameter(const Structure& x)
{
    auto adj = gaifman_adjacency(x);
    int best = 0;
    for (std::size_t s = 0; s < x.size(); ++s)
        for (int d : bfs(adj, static_cast<int>(s))) {
            if (d < 0)
                return std::nullopt;
            best = std::max(best, d);
        }
    return best;
}

bool is_connected(const Structure& x)
{
    if (x.size() == 0)
        return true;
    auto dist = bfs(gaifman_adjacency(x), 0);
    return std::all_of(dist.begin(), dist.end(), [](int d) { return d >= 0; });
}

Structure with_relation(const Structure& a, int arity, const std::set<Tuple>& tuples)
{
    Signature sig;
    sig.add("R", arity);
    Structure s(sig, a.labels(), a.name() + "_S");
    for (const auto& t : tuples) {
        if (t.size() != static_cast<std::size_t>(arity))
            throw InvalidArgument("with_relation: ragged tuple arities");
        s.add_tuple(0, t);
    }
    return s;
}

Structure induced_substructure(const Structure& x, const std::vector<int>& elements)
{
    std::vector<int> position(x.size(), -1);
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        int e = elements[i];
        if (e < 0 || static_cast<std::size_t>(e) >= x.size() || position[static_cast<std::size_t>(e)] >= 0)
            throw InvalidArgument("induced_substructure: bad element list");
        position[static_cast<std::size_t>(e)] = static_cast<int>(i);
        labels.push_back(x.label(e));
    }
    Structure s(x.signature(), std::move(labels), x.name());
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k)) {
            Tuple u;
            bool inside = true;
            for (int e : t) {
                int p = position[static_cast<std::size_t>(e)];
                if (p < 0) {
                    inside = false;
                    break;
                }
                u.push_back(p);
            }
            if (inside)
                s.add_tuple(k, std::move(u));
        }
    return s;
}

bool is_tree(const Structure& x)
{
    // The counting condition holds for every family of tuples exactly when the
    // element/tuple incidence multigraph is a forest.
    std::vector<int> parent(x.size() + x.tuple_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) {
            parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
            v = parent[static_cast<std::size_t>(v)];
        }
        return v;
    };
    int node = static_cast<int>(x.size());
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k)) {
            for (int e : t) {
                int a = find(node), b = find(e);
                if (a == b)
                    return false;
                parent[static_cast<std::size_t>(a)] = b;
            }
            ++node;
        }
    return true;
}

bool is_homomorphism(const Structure& x, const Structure& a, const std::vector<int>& map)
{
    require_same_signature(x, a, "is_homomorphism");
    if (map.size() != x.size())
        return false;
    for (int v : map)
        if (v < 0 || static_cast<std::size_t>(v) >= a.size())
            return false;
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k)) {
            Tuple img(t.size());
            for (std::size_t j = 0; j < t.size(); ++j)
                img[j] = map[static_cast<std::size_t>(t[j])];
            if (!a.contains(k, img))
                return false;
        }
    return true;
}

GadgetSpec pp_to_gadget(const PPFormula& phi)
{
    phi.validate();
    std::vector<std::string> labels = phi.free;
    labels.insert(labels.end(), phi.bound.begin(), phi.bound.end());
    Structure s(phi.signature, labels, "X_phi");
    for (const auto& atom : phi.atoms) {
        Tuple t;
        for (const auto& v : atom.variables)
            t.push_back(*s.index_of(v));
        s.add_tuple(atom.symbol, std::move(t));
    }
    std::vector<int> distinguished(phi.free.size());
    std::iota(distinguished.begin(), distinguished.end(), 0);
    return GadgetSpec(std::move(s), std::move(distinguished));
}

std::set<Tuple> pp_relation(const PPFormula& phi, const Structure& a)
{
    phi.validate();
    if (!(phi.signature == a.signature()))
        throw InvalidArgument("pp_relation: signature mismatch");
    std::vector<std::string> vars = phi.free;
    vars.insert(vars.end(), phi.bound.begin(), phi.bound.end());
    std::map<std::string, std::size_t> slot;
    for (std::size_t i = 0; i < vars.size(); ++i)
        slot[vars[i]] = i;
    std::set<Tuple> out;
    const std::size_t base = a.size();
    if (base == 0)
        return out;
    std::vector<int> value(vars.size(), 0);
    while (true) {
        bool ok = true;
        for (const auto& atom : phi.atoms) {
            Tuple t;
            for (const auto& v : atom.variables)
                t.push_back(value[slot[v]]);
            if (!a.contains(*a.signature().find(atom.symbol), t)) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.insert(Tuple(value.begin(), value.begin() + static_cast<std::ptrdiff_t>(phi.free.size())));
        std::size_t i = vars.size();
        while (i > 0) {
            --i;
            if (static_cast<std::size_t>(++value[i]) < base)
                break;
            value[i] = 0;
            if (i == 0)
                return out;
        }
        if (vars.empty())
            return out;
    }
}

// ---- homomorphism search --------------------------------------------------

namespace {

// Backtracking with generalised arc consistency over bitmask domains.
class HomSolver {
public:
    HomSolver(const Structure& x, const Structure& a) : x_(x), a_(a)
    {
        require_same_signature(x, a, "homomorphism search");
        if (a.size() > 64)
            throw InvalidArgument("homomorphism search supports targets with at most 64 elements");
        full_ = a.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << a.size()) - 1);
        targets_.resize(a.signature().size());
        for (std::size_t k = 0; k < a.signature().size(); ++k)
            targets_[k].assign(a.relation(k).begin(), a.relation(k).end());
        var_cons_.resize(x.size());
        for (std::size_t k = 0; k < x.signature().size(); ++k)
            for (const auto& t : x.relation(k)) {
                for (int v : t) {
                    auto& vc = var_cons_[static_cast<std::size_t>(v)];
                    if (vc.empty() || vc.back() != cons_.size())
                        vc.push_back(cons_.size());
                }
                cons_.push_back({k, t});
            }
    }

    template <class OnSolution>
    void run(const SearchOptions& options, OnSolution&& on_solution)
    {
        limit_ = options.node_limit;
        nodes_ = 0;
        dom_.assign(x_.size(), full_);
        for (const auto& [var, value] : options.pins) {
            if (var < 0 || static_cast<std::size_t>(var) >= x_.size() || value < 0 ||
                static_cast<std::size_t>(value) >= a_.size())
                throw InvalidArgument("homomorphism search: pin out of range");
            dom_[static_cast<std::size_t>(var)] &= std::uint64_t{1} << value;
        }
        for (auto d : dom_)
            if (d == 0)
                return;
        std::vector<std::size_t> all(cons_.size());
        std::iota(all.begin(), all.end(), 0);
        if (!propagate(all))
            return;
        stop_ = false;
        search(on_solution);
    }

private:
    struct Constraint {
        std::size_t symbol;
        Tuple vars;
    };

    bool revise(const Constraint& c, std::vector<std::size_t>& changed)
    {
        const std::size_t r = c.vars.size();
        std::uint64_t support[16] = {};
        std::vector<std::uint64_t> big;
        std::uint64_t* sup = support;
        if (r > 16) {
            big.assign(r, 0);
            sup = big.data();
        }
        for (const auto& t : targets_[c.symbol]) {
            bool ok = true;
            for (std::size_t j = 0; j < r && ok; ++j) {
                if (!(dom_[static_cast<std::size_t>(c.vars[j])] >> t[j] & 1))
                    ok = false;
                for (std::size_t i = 0; i < j && ok; ++i)
                    if (c.vars[i] == c.vars[j] && t[i] != t[j])
                        ok = false;
            }
            if (!ok)
                continue;
            for (std::size_t j = 0; j < r; ++j)
                sup[j] |= std::uint64_t{1} << t[j];
        }
        for (std::size_t j = 0; j < r; ++j) {
            auto v = static_cast<std::size_t>(c.vars[j]);
            std::uint64_t nd = dom_[v] & sup[j];
            if (nd == 0)
                return false;
            if (nd != dom_[v]) {
                trail_.emplace_back(v, dom_[v]);
                dom_[v] = nd;
                changed.push_back(v);
            }
        }
        return true;
    }

    bool propagate(std::vector<std::size_t> queue)
    {
        std::vector<char> queued(cons_.size(), 0);
        for (auto c : queue)
            queued[c] = 1;
        std::vector<std::size_t> changed;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            std::size_t c = queue[head];
            queued[c] = 0;
            changed.clear();
            if (!revise(cons_[c], changed))
                return false;
            for (auto v : changed)
                for (auto c2 : var_cons_[v])
                    if (!queued[c2]) {
                        queued[c2] = 1;
                        queue.push_back(c2);
                    }
        }
        return true;
    }

    void undo(std::size_t mark)
    {
        while (trail_.size() > mark) {
            dom_[trail_.back().first] = trail_.back().second;
            trail_.pop_back();
        }
    }

    template <class OnSolution>
    void search(OnSolution& on_solution)
    {
        std::size_t best = x_.size();
        int best_count = 65;
        for (std::size_t v = 0; v < x_.size(); ++v) {
            int c = __builtin_popcountll(dom_[v]);
            if (c > 1 && c < best_count) {
                best = v;
                best_count = c;
            }
        }
        if (best == x_.size()) {
            std::vector<int> map(x_.size());
            for (std::size_t v = 0; v < x_.size(); ++v)
                map[v] = __builtin_ctzll(dom_[v]);
            if (!on_solution(map))
                stop_ = true;
            return;
        }
        const std::uint64_t domain = dom_[best];
        for (int value = 0; value < 64 && !stop_; ++value) {
            if (!(domain >> value & 1))
                continue;
            if (limit_ && ++nodes_ > limit_)
                throw CapExceeded("homomorphism search exceeded its node budget of " + std::to_string(limit_));
            std::size_t mark = trail_.size();
            trail_.emplace_back(best, dom_[best]);
            dom_[best] = std::uint64_t{1} << value;
            if (propagate(var_cons_[best]))
                search(on_solution);
            undo(mark);
        }
    }

    const Structure& x_;
    const Structure& a_;
    std::uint64_t full_ = 0;
    std::vector<std::vector<Tuple>> targets_;
    std::vector<Constraint> cons_;
    std::vector<std::vector<std::size_t>> var_cons_;
    std::vector<std::uint64_t> dom_;
    std::vector<std::pair<std::size_t, std::uint64_t>> trail_;
    std::size_t limit_ = 0;
    std::size_t nodes_ = 0;
    bool stop_ = false;
};

} // namespace

std::optional<ClassicalHom> hom_search(const Structure& x, const Structure& a, const SearchOptions& options)
{
    HomSolver solver(x, a);
    std::optional<ClassicalHom> found;
    solver.run(options, [&](const std::vector<int>& map) {
        found = ClassicalHom{map};
        return false;
    });
    return found;
}

std::vector<ClassicalHom> hom_enumerate(const Structure& x, const Structure& a, const SearchOptions& options)
{
    HomSolver solver(x, a);
    std::vector<ClassicalHom> all;
    solver.run(options, [&](const std::vector<int>& map) {
        all.push_back(ClassicalHom{map});
        return true;
    });
    std::sort(all.begin(), all.end());
    return all;
}

std::vector<ClassicalHom> polymorphisms(const Structure& a, int n, const Limits& limits)
{
    return hom_enumerate(direct_power(a, n, limits), a);
}

std::set<Tuple> restriction_set(const Structure& x, const Structure& a, const std::vector<int>& elements)
{
    std::set<Tuple> out;
    const std::size_t r = elements.size();
    if (a.size() == 0)
        return out;
    std::vector<int> t(r, 0);
    while (true) {
        SearchOptions opts;
        bool consistent = true;
        for (std::size_t i = 0; i < r && consistent; ++i) {
            auto [it, inserted] = opts.pins.emplace(elements[i], t[i]);
            if (!inserted && it->second != t[i])
                consistent = false;
        }
        if (consistent && hom_search(x, a, opts))
            out.insert(t);
        std::size_t i = r;
        while (true) {
            if (i == 0)
                return out;
            --i;
            if (static_cast<std::size_t>(++t[i]) < a.size())
                break;
            t[i] = 0;
        }
    }
}

CoreResult core(const Structure& x, const Limits& limits)
{
    const std::size_t n = x.size();
    if (n > limits.max_core_vertices)
        throw CapExceeded("core: exhaustive retract search is limited to " +
                          std::to_string(limits.max_core_vertices) + " elements");
    for (std::size_t k = n == 0 ? 0 : 1; k <= n; ++k) {
        // subsets of size k in lexicographic order
        std::vector<int> subset(k);
        std::iota(subset.begin(), subset.end(), 0);
        while (true) {
            Structure sub = induced_substructure(x, subset);
            if (auto h = hom_search(x, sub)) {
                // h restricted to the subset is an automorphism of the minimal retract
                std::vector<int> inverse(k);
                for (std::size_t i = 0; i < k; ++i)
                    inverse[static_cast<std::size_t>(h->map[static_cast<std::size_t>(subset[i])])] = static_cast<int>(i);
                ClassicalHom r;
                for (int v : h->map)
                    r.map.push_back(inverse[static_cast<std::size_t>(v)]);
                return CoreResult{std::move(sub), subset, std::move(r)};
            }
            std::size_t i = k;
            while (i > 0 && subset[i - 1] == static_cast<int>(n - k + i - 1))
                --i;
            if (i == 0)
                break;
            ++subset[i - 1];
            for (std::size_t j = i; j < k; ++j)
                subset[j] = subset[j - 1] + 1;
        }
    }
    return CoreResult{x, {}, {}};
}

bool is_core(const Structure& x)
{
    for (std::size_t v = 0; v < x.size(); ++v) {
        std::vector<int> rest;
        for (std::size_t u = 0; u < x.size(); ++u)
            if (u != v)
                rest.push_back(static_cast<int>(u));
        if (hom_search(x, induced_substructure(x, rest)))
            return false;
    }
    return true;
}

} // namespace qcsp
