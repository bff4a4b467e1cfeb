#include "qcsp/quantum_function.hpp"

#include "qcsp/errors.hpp"

namespace qcsp {

QuantumFunction::QuantumFunction(std::vector<std::string> src, std::vector<std::string> tgt, std::size_t d)
    : source(std::move(src)), target(std::move(tgt)), dim(d),
      proj(source.size(), std::vector<QMat>(target.size(), QMat::zero(d)))
{
    if (d == 0)
        throw InvalidArgument("quantum function needs dimension at least 1");
}

QuantumFunction QuantumFunction::classical(std::vector<std::string> src, std::vector<std::string> tgt,
                                           const std::vector<int>& map)
{
    if (map.size() != src.size())
        throw InvalidArgument("classical map has wrong length");
    QuantumFunction q(std::move(src), std::move(tgt), 1);
    for (std::size_t a = 0; a < map.size(); ++a) {
        if (map[a] < 0 || static_cast<std::size_t>(map[a]) >= q.target.size())
            throw InvalidArgument("classical map leaves the target");
        q.proj[a][static_cast<std::size_t>(map[a])] = QMat::identity(1);
    }
    return q;
}

namespace {

std::string check_shape(const QuantumFunction& q)
{
    if (q.dim == 0)
        return "dimension must be at least 1";
    if (q.proj.size() != q.source.size())
        return "one PVM per source element required";
    for (std::size_t a = 0; a < q.proj.size(); ++a) {
        if (q.proj[a].size() != q.target.size())
            return "PVM at source '" + q.source[a] + "' has the wrong number of outcomes";
        for (const auto& p : q.proj[a])
            if (p.rows() != q.dim || p.cols() != q.dim)
                return "PVM at source '" + q.source[a] + "' has a projector of the wrong size";
    }
    return {};
}

void require_limits(std::size_t dim, const Limits& limits, const char* what)
{
    if (dim > limits.max_dimension)
        throw CapExceeded(std::string(what) + ": dimension " + std::to_string(dim) + " exceeds the cap of " +
                          std::to_string(limits.max_dimension));
}

} // namespace

void validate(const QuantumFunction& q)
{
    if (auto err = check_shape(q); !err.empty())
        throw InvalidArgument(err);
    for (std::size_t a = 0; a < q.proj.size(); ++a)
        if (!is_pvm(q.proj[a]))
            throw InvalidArgument("projectors at source '" + q.source[a] + "' do not form a PVM");
}

bool is_quantum_function(const QuantumFunction& q)
{
    if (!check_shape(q).empty())
        return false;
    for (const auto& pvm : q.proj)
        if (!is_pvm(pvm))
            return false;
    return true;
}

QuantumFunction direct_sum(const QuantumFunction& q, const QuantumFunction& r, const Limits& limits)
{
    if (q.source != r.source || q.target != r.target)
        throw InvalidArgument("direct_sum: label mismatch");
    require_limits(q.dim + r.dim, limits, "direct_sum");
    QuantumFunction out(q.source, q.target, q.dim + r.dim);
    for (std::size_t a = 0; a < q.source.size(); ++a)
        for (std::size_t b = 0; b < q.target.size(); ++b)
            out.proj[a][b] = direct_sum(q.proj[a][b], r.proj[a][b]);
    return out;
}

QuantumFunction tensor(const QuantumFunction& q, const QuantumFunction& r, const Limits& limits)
{
    if (q.source != r.source)
        throw InvalidArgument("tensor: source mismatch");
    require_limits(q.dim * r.dim, limits, "tensor");
    std::vector<std::string> target;
    for (const auto& b : q.target)
        for (const auto& c : r.target)
            target.push_back("(" + b + "," + c + ")");
    QuantumFunction out(q.source, std::move(target), q.dim * r.dim);
    for (std::size_t x = 0; x < q.source.size(); ++x)
        for (std::size_t b = 0; b < q.target.size(); ++b)
            for (std::size_t c = 0; c < r.target.size(); ++c)
                out.proj[x][b * r.target.size() + c] = kron(q.proj[x][b], r.proj[x][c]);
    return out;
}

QuantumFunction compose(const QuantumFunction& r, const QuantumFunction& q, const Limits& limits)
{
    if (q.target != r.source)
        throw InvalidArgument("compose: target of the inner function differs from source of the outer one");
    require_limits(q.dim * r.dim, limits, "compose");
    QuantumFunction out(q.source, r.target, r.dim * q.dim);
    for (std::size_t a = 0; a < q.source.size(); ++a)
        for (std::size_t b = 0; b < q.target.size(); ++b) {
            if (q.proj[a][b].is_zero())
                continue;
            for (std::size_t c = 0; c < r.target.size(); ++c)
                if (!r.proj[b][c].is_zero())
                    out.proj[a][c] += kron(r.proj[b][c], q.proj[a][b]);
        }
    return out;
}

std::vector<ContextualityWitness> contextuality_witnesses(const QuantumFunction& q)
{
    std::vector<ContextualityWitness> out;
    for (std::size_t a = 0; a < q.source.size(); ++a)
        for (std::size_t b = 0; b < q.target.size(); ++b) {
            if (q.proj[a][b].is_zero())
                continue;
            for (std::size_t a2 = a + 1; a2 < q.source.size(); ++a2)
                for (std::size_t b2 = 0; b2 < q.target.size(); ++b2) {
                    if (q.proj[a2][b2].is_zero())
                        continue;
                    QMat c = commutator(q.proj[a][b], q.proj[a2][b2]);
                    if (!c.is_zero())
                        out.push_back({a, b, a2, b2, std::move(c)});
                }
        }
    return out;
}

std::optional<ContextualityWitness> contextuality_witness(const QuantumFunction& q)
{
    for (std::size_t a = 0; a < q.source.size(); ++a)
        for (std::size_t b = 0; b < q.target.size(); ++b)
            for (std::size_t a2 = a + 1; a2 < q.source.size(); ++a2)
                for (std::size_t b2 = 0; b2 < q.target.size(); ++b2) {
                    QMat c = commutator(q.proj[a][b], q.proj[a2][b2]);
                    if (!c.is_zero())
                        return ContextualityWitness{a, b, a2, b2, std::move(c)};
                }
    return std::nullopt;
}

bool is_noncontextual(const QuantumFunction& q)
{
    return !contextuality_witness(q).has_value();
}

ClassicalDecomposition decompose_noncontextual(const QuantumFunction& q)
{
    validate(q);
    if (auto w = contextuality_witness(q))
        throw PreconditionViolation("decompose_noncontextual: contextual input, [Q_{" + q.source[w->a] + "," +
                                    q.target[w->b] + "}, Q_{" + q.source[w->a2] + "," + q.target[w->b2] +
                                    "}] = " + w->commutator.to_string());
    // Split the space by every PVM in turn. Since the family commutes, each
    // block is a product of projectors and stays an orthogonal projector.
    std::vector<QMat> blocks{QMat::identity(q.dim)};
    for (std::size_t a = 0; a < q.source.size(); ++a) {
        std::vector<QMat> next;
        for (const auto& p : blocks)
            for (std::size_t b = 0; b < q.target.size(); ++b) {
                QMat part = p * q.proj[a][b];
                if (!part.is_zero())
                    next.push_back(std::move(part));
            }
        blocks = std::move(next);
    }
    ClassicalDecomposition out;
    for (const auto& p : blocks) {
        std::vector<int> h(q.source.size(), -1);
        for (std::size_t a = 0; a < q.source.size(); ++a)
            for (std::size_t b = 0; b < q.target.size(); ++b)
                if (p * q.proj[a][b] == p) {
                    h[a] = static_cast<int>(b);
                    break;
                }
        for (auto& v : orthogonalize(p.column_space_basis())) {
            out.basis.push_back(std::move(v));
            out.components.push_back(h);
        }
    }
    return out;
}

QuantumFunction from_classical_family(const std::vector<std::string>& source, const std::vector<std::string>& target,
                                      const std::vector<std::vector<int>>& family,
                                      const std::optional<std::vector<QMat>>& basis, const Limits& limits)
{
    const std::size_t d = family.size();
    if (d == 0)
        throw InvalidArgument("from_classical_family: empty family");
    require_limits(d, limits, "from_classical_family");
    std::vector<QMat> vectors;
    if (basis) {
        if (basis->size() != d)
            throw InvalidArgument("from_classical_family: basis size differs from family size");
        for (const auto& v : *basis)
            if (v.rows() != d || v.cols() != 1 || v.is_zero())
                throw InvalidArgument("from_classical_family: basis vectors must be nonzero columns of length d");
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j)
                if (dot((*basis)[i], (*basis)[j]) != 0)
                    throw InvalidArgument("from_classical_family: basis is not orthogonal");
        vectors = *basis;
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            std::vector<Rational> e(d, Rational(0));
            e[i] = 1;
            vectors.push_back(QMat::column(e));
        }
    }
    QuantumFunction q(source, target, d);
    for (std::size_t i = 0; i < d; ++i) {
        if (family[i].size() != source.size())
            throw InvalidArgument("from_classical_family: component has the wrong length");
        QMat p = rank_one_projector(vectors[i]);
        for (std::size_t a = 0; a < source.size(); ++a) {
            int b = family[i][a];
            if (b < 0 || static_cast<std::size_t>(b) >= target.size())
                throw InvalidArgument("from_classical_family: component leaves the target");
            q.proj[a][static_cast<std::size_t>(b)] += p;
        }
    }
    return q;
}

QuantumFunction from_classical_family(const std::vector<std::string>& source, const std::vector<std::string>& target,
                                      const ClassicalDecomposition& decomposition, const Limits& limits)
{
    return from_classical_family(source, target, decomposition.components, decomposition.basis, limits);
}

} // namespace qcsp
