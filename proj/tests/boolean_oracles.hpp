// Reference implementations for Boolean relations by direct enumeration.
#pragma once

#include "qcsp/boolean.hpp"

#include <set>
#include <utility>
#include <vector>

namespace boolean_oracle {

using qcsp::BoolRelation;
using qcsp::Mask;

inline int bit(Mask m, int k, int i) { return static_cast<int>(m >> (k - i) & 1); } // position i, 1-based

inline bool ref_majority(const BoolRelation& r)
{
    for (Mask a : r.masks)
        for (Mask b : r.masks)
            for (Mask c : r.masks)
                if (!r.masks.count((a & b) | (a & c) | (b & c)))
                    return false;
    return true;
}

inline BoolRelation ref_project(const BoolRelation& r, const std::vector<int>& keep)
{
    BoolRelation out{static_cast<int>(keep.size()), {}};
    for (Mask m : r.masks) {
        Mask p = 0;
        for (int i : keep)
            p = p << 1 | static_cast<Mask>(bit(m, r.arity, i));
        out.masks.insert(p);
    }
    return out;
}

inline bool ref_triple(const BoolRelation& r)
{
    const int k = r.arity;
    if (ref_majority(r))
        return false;
    for (Mask sub = 1; sub + 1 < (Mask{1} << k); ++sub) {
        std::vector<int> keep;
        for (int i = 1; i <= k; ++i)
            if (sub >> (k - i) & 1)
                keep.push_back(i);
        auto p = ref_project(r, keep);
        if (!ref_majority(p))
            return false;
        if (keep.size() == 2 && p.masks.size() == 4)
            return false;
    }
    return true;
}

inline bool ref_is_translate(const BoolRelation& r)
{
    for (Mask t = 0; t < (Mask{1} << r.arity); ++t) {
        std::set<Mask> tr;
        for (int i = 0; i < r.arity; ++i)
            tr.insert((Mask{1} << i) ^ t);
        if (tr == r.masks)
            return true;
    }
    return false;
}

// Uncovered pairs S < T by checking each relation of B^n positionwise.
inline std::vector<std::pair<Mask, Mask>> ref_cover(int n)
{
    auto in_power = [n](Mask s, Mask t, int a, int b) {
        for (int i = 1; i <= n; ++i)
            if (bit(s, n, i) == a && bit(t, n, i) == b)
                return false;
        return true;
    };
    std::vector<std::pair<Mask, Mask>> out;
    for (Mask s = 0; s < (Mask{1} << n); ++s)
        for (Mask t = s + 1; t < (Mask{1} << n); ++t) {
            bool covered = false;
            for (auto [a, b] : {std::pair{0, 0}, {1, 1}, {1, 0}})
                covered = covered || in_power(s, t, a, b) || in_power(t, s, a, b);
            if (!covered)
                out.push_back({s, t});
        }
    return out;
}

} // namespace boolean_oracle
