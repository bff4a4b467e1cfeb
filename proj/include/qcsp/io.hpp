#ifndef QCSP_IO_HPP
#define QCSP_IO_HPP

#include "qcsp/certificate.hpp"
#include "qcsp/qhom.hpp"
#include "qcsp/reduce.hpp"
#include "qcsp/structure.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace qcsp {

// Structure text format:
//   structure <name>
//   domain <label> <label> ...
//   relation <symbol> <arity>
//   (a,b) (b,c) ...          parenthesised tuples, or bitstrings such as 101 when
//                            every label is a single character
// Gadget files add `distinguished <label> ...` and optionally a certificate stanza:
//   certificate <condition> <kind>
//   tags <tag> ...
//   witness <free text>
//   end
// `#` starts a comment.

Structure parse_structure(std::string_view text);
GadgetSpec parse_gadget(std::string_view text);
std::string write_structure(const Structure& s);
std::string write_gadget(const GadgetSpec& g);

// Quantum-function format:
//   qfun d=<dim> source=<label> <label> ... target=<label> ...
//   proj <source label> <target label> <d*d rationals, row-major>
// Omitted pairs are zero. The result must be a quantum function.
QuantumFunction parse_qfun(std::string_view text);
std::string write_qfun(const QuantumFunction& q);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& contents);

// Recipe file, a small TOML subset:
//   mode = "oracular" | "nonoracular"
//   comm_gadget = "<file or catalog:name>"
//   target = "<file or catalog:name>"      optional
//   [gadgets]
//   <symbol> = "<file or catalog:name>"
// Relative paths resolve against the recipe's directory.
ReductionRecipe parse_recipe(std::string_view text, const std::filesystem::path& base_dir);
ReductionRecipe read_recipe(const std::filesystem::path& path);

/// Loads a structure or gadget from a file, or from the catalog for `catalog:<name>`.
Structure load_structure(const std::string& ref, const std::filesystem::path& base_dir = {});
GadgetSpec load_gadget(const std::string& ref, const std::filesystem::path& base_dir = {});

nlohmann::json to_json(const QMat& m);
nlohmann::json to_json(const Certificate& c);
nlohmann::json tuple_json(const Structure& s, const Tuple& t);

} // namespace qcsp

#endif
