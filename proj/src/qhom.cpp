#include "qcsp/qhom.hpp"

#include "qcsp/errors.hpp"

#include <algorithm>
#include <map>
#include <thread>
#include <tuple>

namespace qcsp {

std::string_view to_string(Mode mode)
{
    return mode == Mode::Oracular ? "oracular" : "nonoracular";
}

std::optional<Mode> mode_from_string(std::string_view text)
{
    if (text == "oracular")
        return Mode::Oracular;
    if (text == "nonoracular" || text == "non-oracular")
        return Mode::NonOracular;
    return std::nullopt;
}

void validate(const QHomCandidate& c)
{
    if (!(c.source.signature() == c.target.signature()))
        throw InvalidArgument("candidate: source and target signatures differ");
    if (c.qf.source != c.source.labels())
        throw InvalidArgument("candidate: quantum function source labels differ from the source domain");
    if (c.qf.target != c.target.labels())
        throw InvalidArgument("candidate: quantum function target labels differ from the target domain");
    validate(c.qf);
}

namespace {

struct WorkItem {
    std::size_t symbol;
    const Tuple* tuple;
};

void qh1_for_tuple(const QHomCandidate& c, std::size_t symbol, const Tuple& a, std::vector<QH1Violation>& out)
{
    const auto& rel = c.target.relation(symbol);
    const std::size_t r = a.size();
    const std::size_t m = c.target.size();
    Tuple b(r, 0);
    std::vector<QMat> partial(r);
    // depth-first over target tuples, pruning once a prefix product vanishes
    auto dfs = [&](auto&& self, std::size_t pos) -> void {
        for (std::size_t v = 0; v < m; ++v) {
            const QMat& p = c.qf.proj[static_cast<std::size_t>(a[pos])][v];
            if (p.is_zero())
                continue;
            partial[pos] = pos == 0 ? p : partial[pos - 1] * p;
            if (partial[pos].is_zero())
                continue;
            b[pos] = static_cast<int>(v);
            if (pos + 1 == r) {
                if (!rel.count(b))
                    out.push_back({symbol, a, b, partial[pos]});
            } else {
                self(self, pos + 1);
            }
        }
    };
    dfs(dfs, 0);
}

template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn)
{
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const unsigned n = static_cast<unsigned>(std::min<std::size_t>(jobs, count));
    for (unsigned t = 0; t < n; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += n)
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

} // namespace

VerificationReport verify(const QHomCandidate& c, const VerifyOptions& options)
{
    validate(c);
    VerificationReport report;

    std::vector<WorkItem> items;
    for (std::size_t k = 0; k < c.source.signature().size(); ++k)
        for (const auto& t : c.source.relation(k))
            items.push_back({k, &t});
    std::vector<std::vector<QH1Violation>> found(items.size());
    parallel_for(items.size(), options.jobs,
                 [&](std::size_t i) { qh1_for_tuple(c, items[i].symbol, *items[i].tuple, found[i]); });
    for (auto& f : found)
        for (auto& v : f)
            report.qh1.push_back(std::move(v));

    if (c.mode == Mode::Oracular) {
        auto adj = gaifman_adjacency(c.source);
        std::vector<std::pair<int, int>> edges;
        for (std::size_t x = 0; x < adj.size(); ++x)
            for (int y : adj[x])
                edges.emplace_back(static_cast<int>(x), y);
        std::vector<std::vector<QH2Violation>> comm(edges.size());
        const std::size_t m = c.target.size();
        parallel_for(edges.size(), options.jobs, [&](std::size_t i) {
            auto [x, y] = edges[i];
            for (std::size_t b = 0; b < m; ++b) {
                const QMat& p = c.qf.proj[static_cast<std::size_t>(x)][b];
                if (p.is_zero())
                    continue;
                for (std::size_t b2 = 0; b2 < m; ++b2) {
                    const QMat& q = c.qf.proj[static_cast<std::size_t>(y)][b2];
                    if (q.is_zero())
                        continue;
                    QMat k = commutator(p, q);
                    if (!k.is_zero())
                        comm[i].push_back({x, y, static_cast<int>(b), static_cast<int>(b2), std::move(k)});
                }
            }
        });
        for (auto& f : comm)
            for (auto& v : f)
                report.qh2.push_back(std::move(v));
    }
    report.pass = report.qh1.empty() && report.qh2.empty();
    return report;
}

VerificationReport is_quantum_polymorphism(const Structure& a, int n, const QuantumFunction& qf, Mode mode,
                                           const VerifyOptions& options)
{
    if (n < 1)
        throw InvalidArgument("polymorphism arity must be at least 1");
    QHomCandidate c{direct_power(a, n), a, qf, mode};
    if (qf.source.size() != c.source.size())
        throw InvalidArgument("quantum function source is not the domain of the requested power");
    return verify(c, options);
}

ClosureResult in_quantum_closure(const QHomCandidate& c)
{
    validate(c);
    ClosureResult result;
    if (auto w = contextuality_witness(c.qf)) {
        result.witness = std::move(w);
        return result;
    }
    auto dec = decompose_noncontextual(c.qf);
    for (const auto& h : dec.components)
        if (!is_homomorphism(c.source, c.target, h))
            throw PreconditionViolation("in_quantum_closure: a component of the decomposition is not a "
                                        "homomorphism; the candidate does not satisfy QH1");
    result.in_closure = true;
    result.decomposition = std::move(dec);
    return result;
}

bool core_column_sums(const QHomCandidate& c)
{
    validate(c);
    if (!c.source.same_relations(c.target))
        throw PreconditionViolation("core_column_sums: source and target must be the same structure");
    if (!is_core(c.source))
        throw PreconditionViolation("core_column_sums: source is not a core");
    if (!is_noncontextual(c.qf))
        throw PreconditionViolation("core_column_sums: candidate is contextual");
    const QMat id = QMat::identity(c.qf.dim);
    for (std::size_t y = 0; y < c.target.size(); ++y) {
        QMat sum = QMat::zero(c.qf.dim);
        for (std::size_t x = 0; x < c.source.size(); ++x)
            sum += c.qf.proj[x][y];
        if (!(sum == id))
            return false;
    }
    return true;
}

namespace {

using BoolMatrix = std::vector<std::vector<char>>;

BoolMatrix adjacency(const Structure& s, std::size_t symbol)
{
    BoolMatrix m(s.size(), std::vector<char>(s.size(), 0));
    for (const auto& t : s.relation(symbol))
        m[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(t[1])] = 1;
    return m;
}

BoolMatrix multiply(const BoolMatrix& lhs, const BoolMatrix& rhs)
{
    const std::size_t n = lhs.size();
    BoolMatrix out(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            if (lhs[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    out[i][j] |= rhs[k][j];
    return out;
}

void require_binary(const Structure& s, const char* what)
{
    if (!s.signature().is_binary())
        throw InvalidArgument(std::string(what) + ": requires a binary signature");
}

} // namespace

std::vector<WalkViolation> walk_orthogonality_check(const QHomCandidate& c, int max_length)
{
    validate(c);
    require_binary(c.source, "walk_orthogonality_check");
    std::vector<WalkViolation> out;
    const std::size_t n = c.source.size(), m = c.target.size();
    for (std::size_t k = 0; k < c.source.signature().size(); ++k) {
        const BoolMatrix ex = adjacency(c.source, k), ea = adjacency(c.target, k);
        BoolMatrix wx = ex, wa = ea;
        for (int len = 1; len <= max_length; ++len) {
            if (len > 1) {
                wx = multiply(wx, ex);
                wa = multiply(wa, ea);
            }
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t x2 = 0; x2 < n; ++x2) {
                    if (!wx[x][x2])
                        continue;
                    for (std::size_t y = 0; y < m; ++y) {
                        const QMat& p = c.qf.proj[x][y];
                        if (p.is_zero())
                            continue;
                        for (std::size_t y2 = 0; y2 < m; ++y2) {
                            if (wa[y][y2] || c.qf.proj[x2][y2].is_zero())
                                continue;
                            QMat prod = p * c.qf.proj[x2][y2];
                            if (!prod.is_zero())
                                out.push_back({k, len, static_cast<int>(x), static_cast<int>(x2), static_cast<int>(y),
                                               static_cast<int>(y2), std::move(prod)});
                        }
                    }
                }
        }
    }
    return out;
}

namespace {

// Memoised test Q_{x,a} Q_{y,b} != 0. Symmetric, since (PQ)^T = QP for projectors.
class Overlap {
public:
    explicit Overlap(const QuantumFunction& q) : q_(q) {}

    bool operator()(int x, int a, int y, int b)
    {
        auto key = std::make_tuple(x, a, y, b);
        if (std::tie(y, b) < std::tie(x, a))
            key = std::make_tuple(y, b, x, a);
        auto it = memo_.find(key);
        if (it != memo_.end())
            return it->second;
        bool nz = !(q_(static_cast<std::size_t>(x), static_cast<std::size_t>(a)) *
                    q_(static_cast<std::size_t>(y), static_cast<std::size_t>(b)))
                       .is_zero();
        memo_.emplace(key, nz);
        return nz;
    }

private:
    const QuantumFunction& q_;
    std::map<std::tuple<int, int, int, int>, bool> memo_;
};

struct Slot {
    int vertex;
    int label;
};

// Position of each slot: a0, a0', a1..a_{w-1}, aw, aw'. Slots 1 and the last are the exempt pair.
bool compatible(Overlap& nz, const std::vector<Slot>& slots, std::size_t upto, std::size_t total)
{
    const Slot& s = slots[upto];
    for (std::size_t i = 0; i < upto; ++i) {
        if (slots[i].vertex == s.vertex)
            continue;
        if (i == 1 && upto + 1 == total)
            continue;
        if (!nz(slots[i].vertex, slots[i].label, s.vertex, s.label))
            return false;
    }
    return true;
}

} // namespace

bool is_bifurcation(const QHomCandidate& c, const Bifurcation& b)
{
    const std::size_t w = b.length();
    if (w < 1 || b.inner.size() + 1 != w)
        return false;
    auto adj = gaifman_adjacency(c.source);
    for (std::size_t i = 0; i + 1 < b.path.size(); ++i) {
        const auto& nb = adj[static_cast<std::size_t>(b.path[i])];
        if (!std::binary_search(nb.begin(), nb.end(), b.path[i + 1]))
            return false;
    }
    if (b.a0 == b.a0_alt || b.aw == b.aw_alt)
        return false;
    std::vector<Slot> slots{{b.path[0], b.a0}, {b.path[0], b.a0_alt}};
    for (std::size_t i = 0; i < b.inner.size(); ++i)
        slots.push_back({b.path[i + 1], b.inner[i]});
    slots.push_back({b.path[w], b.aw});
    slots.push_back({b.path[w], b.aw_alt});
    Overlap nz(c.qf);
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (!compatible(nz, slots, i, slots.size()))
            return false;
    return true;
}

std::optional<Bifurcation> find_bifurcation(const QHomCandidate& c)
{
    validate(c);
    require_binary(c.source, "find_bifurcation");
    auto diam = diameter(c.source);
    if (!diam)
        throw InvalidArgument("find_bifurcation: the undirected reduct of the source is disconnected");
    auto adj = gaifman_adjacency(c.source);
    const int n = static_cast<int>(c.source.size());
    const int m = static_cast<int>(c.target.size());
    Overlap nz(c.qf);

    for (int w = 2; w <= *diam; ++w) {
        std::vector<int> path{0};
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        std::optional<Bifurcation> found;

        auto label_search = [&]() -> bool {
            std::vector<Slot> slots;
            slots.push_back({path[0], 0});
            slots.push_back({path[0], 0});
            for (int i = 1; i < w; ++i)
                slots.push_back({path[static_cast<std::size_t>(i)], 0});
            slots.push_back({path.back(), 0});
            slots.push_back({path.back(), 0});
            const std::size_t total = slots.size();
            auto assign = [&](auto&& self, std::size_t pos) -> bool {
                if (pos == total)
                    return true;
                for (int v = 0; v < m; ++v) {
                    if ((pos == 1 && v == slots[0].label) || (pos + 1 == total && v == slots[total - 2].label))
                        continue;
                    if (c.qf(static_cast<std::size_t>(slots[pos].vertex), static_cast<std::size_t>(v)).is_zero())
                        continue;
                    slots[pos].label = v;
                    if (compatible(nz, slots, pos, total) && self(self, pos + 1))
                        return true;
                }
                return false;
            };
            if (!assign(assign, 0))
                return false;
            Bifurcation b;
            b.path = path;
            b.a0 = slots[0].label;
            b.a0_alt = slots[1].label;
            for (int i = 1; i < w; ++i)
                b.inner.push_back(slots[static_cast<std::size_t>(i + 1)].label);
            b.aw = slots[total - 2].label;
            b.aw_alt = slots[total - 1].label;
            found = std::move(b);
            return true;
        };

        auto extend = [&](auto&& self) -> bool {
            if (static_cast<int>(path.size()) == w + 1)
                return label_search();
            for (int next : adj[static_cast<std::size_t>(path.back())]) {
                if (used[static_cast<std::size_t>(next)])
                    continue;
                used[static_cast<std::size_t>(next)] = 1;
                path.push_back(next);
                bool ok = self(self);
                path.pop_back();
                used[static_cast<std::size_t>(next)] = 0;
                if (ok)
                    return true;
            }
            return false;
        };

        for (int start = 0; start < n; ++start) {
            path.assign(1, start);
            used.assign(static_cast<std::size_t>(n), 0);
            used[static_cast<std::size_t>(start)] = 1;
            if (extend(extend))
                return found;
        }
    }
    return std::nullopt;
}

} // namespace qcsp
