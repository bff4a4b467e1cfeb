// Brute-force reference implementations used to cross-check the library.
#pragma once

#include "qcsp/structure.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using qcsp::Structure;
using qcsp::Tuple;

inline bool preserves(const Structure& x, const Structure& a, const std::vector<int>& f)
{
    for (std::size_t k = 0; k < x.signature().size(); ++k)
        for (const auto& t : x.relation(k)) {
            Tuple img;
            for (int e : t)
                img.push_back(f[static_cast<std::size_t>(e)]);
            if (!a.relation(k).count(img))
                return false;
        }
    return true;
}

// Calls visit(f) for every map |x| -> |a| in lexicographic order.
inline void all_maps(std::size_t n, std::size_t m, const std::function<bool(const std::vector<int>&)>& visit)
{
    if (m == 0 && n > 0)
        return;
    std::vector<int> f(n, 0);
    while (true) {
        if (!visit(f))
            return;
        std::size_t i = n;
        while (true) {
            if (i == 0)
                return;
            --i;
            if (static_cast<std::size_t>(++f[i]) < m)
                break;
            f[i] = 0;
        }
    }
}

inline std::vector<std::vector<int>> homs(const Structure& x, const Structure& a)
{
    std::vector<std::vector<int>> out;
    all_maps(x.size(), a.size(), [&](const std::vector<int>& f) {
        if (preserves(x, a, f))
            out.push_back(f);
        return true;
    });
    return out;
}

inline bool has_hom(const Structure& x, const Structure& a)
{
    bool found = false;
    all_maps(x.size(), a.size(), [&](const std::vector<int>& f) {
        found = preserves(x, a, f);
        return !found;
    });
    return found;
}

// Restrictions of all homomorphisms x -> a to the listed elements.
inline std::set<Tuple> restrictions(const Structure& x, const Structure& a, const std::vector<int>& elements)
{
    std::set<Tuple> out;
    for (const auto& f : homs(x, a)) {
        Tuple t;
        for (int e : elements)
            t.push_back(f[static_cast<std::size_t>(e)]);
        out.insert(t);
    }
    return out;
}

// Canonical form under relabelling: least sorted relation list over all permutations.
inline std::vector<std::set<Tuple>> canonical(const Structure& x)
{
    std::vector<int> perm(x.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
        perm[i] = static_cast<int>(i);
    std::vector<std::set<Tuple>> best;
    bool first = true;
    do {
        std::vector<std::set<Tuple>> rel(x.signature().size());
        for (std::size_t k = 0; k < rel.size(); ++k)
            for (const auto& t : x.relation(k)) {
                Tuple u;
                for (int e : t)
                    u.push_back(perm[static_cast<std::size_t>(e)]);
                rel[k].insert(u);
            }
        if (first || rel < best) {
            best = rel;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace oracle
