#ifndef QCSP_STRUCTURE_HPP
#define QCSP_STRUCTURE_HPP

#include "qcsp/certificate.hpp"
#include "qcsp/limits.hpp"

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qcsp {

using Tuple = std::vector<int>;

class Signature {
public:
    struct Symbol {
        std::string name;
        int arity;
        friend bool operator==(const Symbol&, const Symbol&) = default;
    };

    Signature() = default;
    Signature(std::initializer_list<Symbol> symbols);

    /// Appends a symbol; names must be unique and arities positive.
    std::size_t add(const std::string& name, int arity);

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const Symbol& operator[](std::size_t k) const { return symbols_.at(k); }
    std::optional<std::size_t> find(const std::string& name) const;
    bool is_binary() const;

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    std::vector<Symbol> symbols_;
};

/// Finite relational structure. Elements are indices 0..n-1; labels are kept for I/O.
class Structure {
public:
    Structure() = default;
    Structure(Signature signature, std::vector<std::string> labels, std::string name = {});
    /// Elements labelled "0".."n-1".
    Structure(Signature signature, std::size_t size, std::string name = {});

    const std::string& name() const noexcept { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    const Signature& signature() const noexcept { return signature_; }
    std::size_t size() const noexcept { return labels_.size(); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    const std::string& label(int element) const { return labels_.at(static_cast<std::size_t>(element)); }
    std::optional<int> index_of(const std::string& label) const;

    void add_tuple(std::size_t symbol, Tuple tuple);
    void add_tuple(const std::string& symbol, Tuple tuple);

    const std::set<Tuple>& relation(std::size_t symbol) const { return relations_.at(symbol); }
    const std::set<Tuple>& relation(const std::string& symbol) const;
    bool contains(std::size_t symbol, const Tuple& tuple) const { return relations_.at(symbol).count(tuple) > 0; }
    std::size_t tuple_count() const;

    /// Same signature, same size and identical tuple sets (labels ignored).
    bool same_relations(const Structure& other) const;

private:
    std::string name_;
    Signature signature_;
    std::vector<std::string> labels_;
    std::vector<std::set<Tuple>> relations_;
};

/// Structure with distinguished elements g_1..g_r, optionally carrying the
/// certificate it was built or loaded with.
struct GadgetSpec {
    Structure structure;
    std::vector<int> distinguished;
    std::optional<Certificate> certificate;

    GadgetSpec() = default;
    GadgetSpec(Structure s, std::vector<int> d);
    std::size_t arity() const noexcept { return distinguished.size(); }
};

struct ClassicalHom {
    std::vector<int> map;
    friend bool operator==(const ClassicalHom&, const ClassicalHom&) = default;
    friend auto operator<=>(const ClassicalHom&, const ClassicalHom&) = default;
};

/// Primitive positive formula: conjunction of atoms, some variables existentially bound.
struct PPFormula {
    struct Atom {
        std::string symbol;
        std::vector<std::string> variables;
    };
    Signature signature;
    std::vector<std::string> free;
    std::vector<std::string> bound;
    std::vector<Atom> atoms;

    /// Throws InvalidArgument if free/bound overlap, variables are undeclared, or arities mismatch.
    void validate() const;
};

// ---- constructions --------------------------------------------------------

Structure clique(int m);
Structure cycle(int m);
/// Directed path 0 -> 1 -> ... -> length over {E/2}.
Structure directed_path(int length);
/// The structure with domain [r] and the single tuple (1,..,r) under symbol `symbol`.
Structure one_tuple_structure(const std::string& symbol, int arity);

/// Element index of (c_1..c_n) in A^n: lexicographic with c_1 most significant.
std::size_t power_index(const std::vector<int>& components, std::size_t base);
std::vector<int> power_components(std::size_t index, std::size_t base, std::size_t n);

Structure direct_power(const Structure& a, int n, const Limits& limits = default_limits());
Structure product(const Structure& a, const Structure& b, const Limits& limits = default_limits());
Structure gaifman(const Structure& x);
Structure undirected_reduct(const Structure& x);

using Distance = std::optional<int>; // nullopt = unreachable
Distance distance(const Structure& x, int from, int to);
Distance diameter(const Structure& x);
bool is_connected(const Structure& x);
/// Adjacency lists of the Gaifman graph, sorted.
std::vector<std::vector<int>> gaifman_adjacency(const Structure& x);

Structure with_relation(const Structure& a, int arity, const std::set<Tuple>& tuples);
Structure induced_substructure(const Structure& x, const std::vector<int>& elements);

bool is_tree(const Structure& x);
bool is_homomorphism(const Structure& x, const Structure& a, const std::vector<int>& map);

GadgetSpec pp_to_gadget(const PPFormula& phi);
/// Relation defined by `phi` in `a`, by direct evaluation of the formula.
std::set<Tuple> pp_relation(const PPFormula& phi, const Structure& a);

// ---- classical homomorphisms ----------------------------------------------

struct SearchOptions {
    /// pins[x] fixes the image of x.
    std::map<int, int> pins;
    /// 0 = unlimited; CapExceeded when exceeded.
    std::size_t node_limit = 0;
};

std::optional<ClassicalHom> hom_search(const Structure& x, const Structure& a, const SearchOptions& options = {});
std::vector<ClassicalHom> hom_enumerate(const Structure& x, const Structure& a, const SearchOptions& options = {});
std::vector<ClassicalHom> polymorphisms(const Structure& a, int n, const Limits& limits = default_limits());

/// Set of restrictions of homomorphisms x -> a to `elements`, via pinned extension search.
std::set<Tuple> restriction_set(const Structure& x, const Structure& a, const std::vector<int>& elements);

struct CoreResult {
    Structure core;
    std::vector<int> elements; // elements of x forming the core
    ClassicalHom retraction;   // x -> core, identity on the core (indices into `core`)
};

CoreResult core(const Structure& x, const Limits& limits = default_limits());
bool is_core(const Structure& x);

} // namespace qcsp

#endif
