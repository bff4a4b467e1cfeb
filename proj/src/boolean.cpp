#include "qcsp/boolean.hpp"

#include "qcsp/errors.hpp"
#include "qcsp/qhom.hpp"

#include <bit>

namespace qcsp {

namespace {

constexpr int kMaxArity = 24;

void require_arity(int k)
{
    if (k < 1 || k > kMaxArity)
        throw InvalidArgument("Boolean arity must be between 1 and " + std::to_string(kMaxArity));
}

Mask bit_at(int arity, int position) // position 1-based
{
    return Mask{1} << (arity - position);
}

} // namespace

Mask parse_mask(std::string_view bits)
{
    if (bits.empty() || bits.size() > kMaxArity)
        throw InvalidArgument("bad Boolean tuple '" + std::string(bits) + "'");
    Mask m = 0;
    for (char ch : bits) {
        if (ch != '0' && ch != '1')
            throw InvalidArgument("bad Boolean tuple '" + std::string(bits) + "'");
        m = (m << 1) | static_cast<Mask>(ch - '0');
    }
    return m;
}

std::string mask_string(Mask mask, int arity)
{
    std::string s;
    for (int i = 1; i <= arity; ++i)
        s += (mask & bit_at(arity, i)) ? '1' : '0';
    return s;
}

Mask subset_mask(int n, std::initializer_list<int> elements)
{
    Mask m = 0;
    for (int i : elements) {
        if (i < 1 || i > n)
            throw InvalidArgument("subset element out of range");
        m |= bit_at(n, i);
    }
    return m;
}

std::string subset_string(Mask mask, int n)
{
    std::string s = "{";
    bool first = true;
    for (int i = 1; i <= n; ++i)
        if (mask & bit_at(n, i)) {
            if (!first)
                s += ',';
            s += std::to_string(i);
            first = false;
        }
    return s + "}";
}

BoolRelation r_one_in_k(int k)
{
    require_arity(k);
    BoolRelation r{k, {}};
    for (int i = 0; i < k; ++i)
        r.masks.insert(Mask{1} << i);
    return r;
}

BoolRelation translate(const BoolRelation& r, Mask t)
{
    if (r.arity < 32 && (t >> r.arity) != 0)
        throw InvalidArgument("translate: tuple longer than the relation arity");
    BoolRelation out{r.arity, {}};
    for (Mask m : r.masks)
        out.masks.insert(m ^ t);
    return out;
}

BoolRelation translate(const BoolRelation& r, std::string_view t)
{
    if (static_cast<int>(t.size()) != r.arity)
        throw InvalidArgument("translate: tuple length differs from the relation arity");
    return translate(r, parse_mask(t));
}

BoolRelation projection(const BoolRelation& r, const std::vector<int>& coordinates)
{
    const int k = static_cast<int>(coordinates.size());
    for (int c : coordinates)
        if (c < 1 || c > r.arity)
            throw InvalidArgument("projection: coordinate out of range");
    BoolRelation out{k, {}};
    for (Mask m : r.masks) {
        Mask p = 0;
        for (int c : coordinates)
            p = (p << 1) | ((m & bit_at(r.arity, c)) ? 1u : 0u);
        out.masks.insert(p);
    }
    return out;
}

MajorityCheck majority_preserves(const BoolRelation& r)
{
    MajorityCheck out;
    for (Mask a : r.masks)
        for (Mask b : r.masks)
            for (Mask c : r.masks) {
                Mask m = (a & b) | (a & c) | (b & c);
                if (!r.masks.count(m)) {
                    out.preserved = false;
                    out.witness = {a, b, c};
                    out.image = m;
                    return out;
                }
            }
    return out;
}

bool binary_projection_full(const BoolRelation& r, int i, int j)
{
    if (i < 1 || j > r.arity || i >= j)
        throw InvalidArgument("binary_projection_full: need 1 <= i < j <= arity");
    return projection(r, {i, j}).masks.size() == 4;
}

bool has_full_binary_projection(const BoolRelation& r)
{
    for (int i = 1; i <= r.arity; ++i)
        for (int j = i + 1; j <= r.arity; ++j)
            if (binary_projection_full(r, i, j))
                return true;
    return false;
}

bool property_triple(const BoolRelation& r)
{
    if (majority_preserves(r).preserved || has_full_binary_projection(r))
        return false;
    const Mask all = (Mask{1} << r.arity) - 1;
    for (Mask sub = 1; sub < all; ++sub) {
        std::vector<int> coords;
        for (int i = 1; i <= r.arity; ++i)
            if (sub & bit_at(r.arity, i))
                coords.push_back(i);
        if (!majority_preserves(projection(r, coords)).preserved)
            return false;
    }
    return true;
}

std::optional<Mask> classify_translate(const BoolRelation& r)
{
    if (r.masks.size() != static_cast<std::size_t>(r.arity))
        return std::nullopt;
    const BoolRelation base = r_one_in_k(r.arity);
    const Mask first = *r.masks.begin();
    std::optional<Mask> best;
    for (int i = 0; i < r.arity; ++i) {
        Mask t = first ^ (Mask{1} << i);
        if (translate(base, t) == r && (!best || t < *best))
            best = t;
    }
    return best;
}

Structure boolean_structure(const BoolRelation& r, const std::string& symbol)
{
    Signature sig;
    sig.add(symbol, r.arity);
    Structure s(sig, 2);
    for (Mask m : r.masks) {
        Tuple t;
        for (int i = 1; i <= r.arity; ++i)
            t.push_back((m & bit_at(r.arity, i)) ? 1 : 0);
        s.add_tuple(0, t);
    }
    return s;
}

Structure o_t(int k, Mask t)
{
    Structure s = boolean_structure(translate(r_one_in_k(k), t));
    s.set_name("O_" + mask_string(t, k));
    return s;
}

Structure build_b()
{
    Structure b(Signature{{"S00", 2}, {"S11", 2}, {"S10", 2}}, 2, "B");
    const int forbidden[3][2] = {{0, 0}, {1, 1}, {1, 0}};
    for (std::size_t k = 0; k < 3; ++k)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                if (x != forbidden[k][0] || y != forbidden[k][1])
                    b.add_tuple(k, {x, y});
    return b;
}

QuantumFunction SubsetIndexedQF::to_quantum_function() const
{
    if (q.size() != (std::size_t{1} << n))
        throw InvalidArgument("subset-indexed function has the wrong number of projectors");
    std::vector<std::string> source;
    for (Mask s = 0; s < q.size(); ++s) {
        std::string label = "(";
        for (int i = 1; i <= n; ++i) {
            if (i > 1)
                label += ',';
            label += (s & bit_at(n, i)) ? '1' : '0';
        }
        source.push_back(n == 1 ? label.substr(1) : label + ")");
    }
    QuantumFunction out(std::move(source), {"0", "1"}, dim);
    const QMat id = QMat::identity(dim);
    for (Mask s = 0; s < q.size(); ++s) {
        out.proj[s][1] = q[s];
        out.proj[s][0] = id - q[s];
    }
    return out;
}

SubsetIndexedQF SubsetIndexedQF::from_quantum_function(const QuantumFunction& qf, int n)
{
    if (qf.source.size() != (std::size_t{1} << n) || qf.target.size() != 2)
        throw InvalidArgument("quantum function is not of the form {0,1}^n => {0,1}");
    SubsetIndexedQF out{n, qf.dim, {}};
    for (std::size_t s = 0; s < qf.source.size(); ++s)
        out.q.push_back(qf.proj[s][1]);
    return out;
}

Polys100Report check_polys100(const SubsetIndexedQF& q)
{
    auto report = is_quantum_polymorphism(o_t(3, parse_mask("100")), q.n, q.to_quantum_function(), Mode::NonOracular);
    if (!report.pass)
        throw PreconditionViolation("check_polys100: input is not a non-oracular quantum polymorphism of O_100");
    Polys100Report out;
    const Mask count = Mask{1} << q.n;
    auto fail = [&](const std::string& what) {
        out.ok = false;
        out.failures.push_back(what);
    };
    for (Mask s = 0; s < count; ++s) {
        for (Mask t = 0; t < count; ++t) {
            const QMat& qu = q[s | t];
            if ((s & t) == 0) {
                if (!(q[s] * q[t]).is_zero())
                    fail("Q_S Q_T != 0 for disjoint S=" + subset_string(s, q.n) + ", T=" + subset_string(t, q.n));
                if (!(qu == qu * (q[s] + q[t])))
                    fail("Q_{S u T} != Q_{S u T}(Q_S + Q_T) for S=" + subset_string(s, q.n) +
                         ", T=" + subset_string(t, q.n));
            }
            if (!(q[s] == qu * q[s]))
                fail("Q_S != Q_{S u T} Q_S for S=" + subset_string(s, q.n) + ", T=" + subset_string(t, q.n));
        }
        QMat sum = QMat::zero(q.dim);
        for (int i = 1; i <= q.n; ++i)
            if (s & bit_at(q.n, i))
                sum += q[bit_at(q.n, i)];
        if (!(sum == q[s]))
            fail("Q_S is not the sum of its singletons for S=" + subset_string(s, q.n));
    }
    return out;
}

std::vector<std::pair<Mask, Mask>> forced_commutation_cover(int n)
{
    if (n < 1)
        throw InvalidArgument("forced_commutation_cover: n must be at least 1");
    const Structure bn = direct_power(build_b(), n);
    std::vector<std::pair<Mask, Mask>> out;
    for (Mask s = 0; s < bn.size(); ++s)
        for (Mask t = s + 1; t < bn.size(); ++t) {
            bool covered = false;
            for (std::size_t k = 0; k < bn.signature().size() && !covered; ++k)
                covered = bn.contains(k, {static_cast<int>(s), static_cast<int>(t)}) ||
                          bn.contains(k, {static_cast<int>(t), static_cast<int>(s)});
            if (!covered)
                out.emplace_back(s, t);
        }
    return out;
}

SubsetIndexedQF build_arity4_contextual(const QMat& a, const QMat& b, const QMat& c)
{
    for (const QMat* m : {&a, &b, &c})
        if (!m->is_square() || !is_projector(*m))
            throw InvalidArgument("build_arity4_contextual: inputs must be projectors");
    if (a.rows() != b.rows() || a.rows() != c.rows())
        throw InvalidArgument("build_arity4_contextual: inputs must share a dimension");
    const std::size_t d = a.rows();
    SubsetIndexedQF q{4, d, std::vector<QMat>(16, QMat::zero(d))};
    const QMat id = QMat::identity(d);
    const Mask m12 = subset_mask(4, {1, 2}), m13 = subset_mask(4, {1, 3}), m14 = subset_mask(4, {1, 4});
    for (Mask t = 0; t < 16; ++t)
        if (std::popcount(t) >= 3)
            q[t] = id;
    q[m12] = a;
    q[m13] = b;
    q[m14] = c;
    for (Mask t = 0; t < 16; ++t)
        if (std::popcount(t) < 3 && t != m12 && t != m13 && t != m14)
            q[t] = id - q[15 ^ t];
    return q;
}

SubsetIndexedQF build_arity4_contextual()
{
    const Rational h(1, 2);
    QMat a{{1, 0}, {0, 0}};
    QMat b{{h, h}, {h, h}};
    QMat c{{h, -h}, {-h, h}};
    return build_arity4_contextual(a, b, c);
}

SubsetIndexedQF flip_dual(const SubsetIndexedQF& q)
{
    SubsetIndexedQF out = q;
    const Mask full = (Mask{1} << q.n) - 1;
    const QMat id = QMat::identity(q.dim);
    for (Mask s = 0; s <= full; ++s)
        out.q[s] = id - q.q[full ^ s];
    return out;
}

namespace {

PPFormula formula_over(int k)
{
    PPFormula f;
    f.signature.add("R", k);
    return f;
}

} // namespace

PPFormula pp_zero(int k)
{
    require_arity(k);
    PPFormula f = formula_over(k);
    f.free = {"a"};
    f.atoms.push_back({"R", std::vector<std::string>(static_cast<std::size_t>(k), "a")});
    return f;
}

PPFormula pp_r100(int k)
{
    if (k < 3)
        throw InvalidArgument("pp_r100 needs arity at least 3");
    PPFormula f = formula_over(k);
    f.free = {"x", "y", "z"};
    f.bound = {"w"};
    f.atoms.push_back({"R", std::vector<std::string>(static_cast<std::size_t>(k), "w")});
    std::vector<std::string> vars{"x", "y", "z"};
    vars.resize(static_cast<std::size_t>(k), "w");
    f.atoms.push_back({"R", vars});
    return f;
}

PPFormula pp_neq_atom(int k, int l)
{
    require_arity(k);
    if (l < 0 || l + 1 >= k)
        throw InvalidArgument("pp_neq_atom needs 0 <= l <= k - 2");
    PPFormula f = formula_over(k);
    f.free = {"x", "y"};
    std::vector<std::string> vars(static_cast<std::size_t>(k), "y");
    for (int i = 0; i <= l; ++i)
        vars[static_cast<std::size_t>(i)] = "x";
    f.atoms.push_back({"R", vars});
    return f;
}

} // namespace qcsp
