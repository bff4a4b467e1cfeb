#ifndef QCSP_LIMITS_HPP
#define QCSP_LIMITS_HPP

#include <cstddef>

namespace qcsp {

// Size caps shared by the constructions. All are plain values; callers that
// need different bounds pass their own copy.
struct Limits {
    std::size_t max_dimension = 64;          // Hilbert-space dimension of built quantum functions
    std::size_t max_vertices = 10000;        // constructed structures and gadgets
    std::size_t max_tuples = 2000000;        // tuples per relation of a constructed structure
    std::size_t max_core_vertices = 8;       // exhaustive retract search in core()
    std::size_t max_search_nodes = 10000000; // backtracking budget for desk-scale oracles
};

inline const Limits& default_limits() {
    static const Limits limits{};
    return limits;
}

} // namespace qcsp

#endif
