#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gwa/core/graph.hpp"
#include "gwa/engine/automaton.hpp"
#include "gwa/hom/homomorphism.hpp"
#include "gwa/trees/tree_automaton.hpp"

namespace gwa {

using Json = nlohmann::json;

/// Parses JSON text. Syntax errors become ParseError "<source>:<line>:<col>:
/// ...".
Json parse_json(std::string_view text, const std::string& source);
/// Throws ParseError if the file cannot be read.
Json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
/// Two-space indentation, keys sorted, trailing newline. Serializing the same
/// value twice gives the same bytes.
std::string dump(const Json& j);

// Document formats. Declaration order of directions, labels and states is
// semantic and kept; every other list is sorted.
//
//   signature  {directions: [{name, opposite}], labels: [{name, initial, dirs}]}
//   graph      {nodes: [{id, label}], initial, edges: [{from, dir, to}]}
//              each physical edge once; an asymmetric slot is {..., half: true}
//   automaton  {states, initial, accept: [[state, label]],
//               transitions: [{state, label, next, dir}]}
//   hom        {source_sig, target_sig,
//               patterns: {label: {nodes, edges, ports: {dir: node}}}}
//   tree automaton {states, accept, delta: [{label, args, result}]}
//
// Graphs and automata may carry their signature inline under "signature".
// Readers take the inline one when present, else the one passed in; both
// present and different is an error. Errors are ParseError with a
// "<where>:<json pointer>: " prefix.

Json signature_to_json(const Signature& sig);
SignaturePtr signature_from_json(const Json& j, const std::string& where = "");

Json graph_to_json(const Graph& g, bool with_signature = false);
Graph graph_from_json(const Json& j, const SignaturePtr& sig, const std::string& where = "");

Json automaton_to_json(const WalkingAutomaton& a, bool with_signature = false);
WalkingAutomaton automaton_from_json(const Json& j, const SignaturePtr& sig, const std::string& where = "");

Json homomorphism_to_json(const Homomorphism& h);
Homomorphism homomorphism_from_json(const Json& j, const std::string& where = "");

Json tree_automaton_to_json(const TreeAutomaton& a, bool with_signature = true);
TreeAutomaton tree_automaton_from_json(const Json& j, const SignaturePtr& sig, const std::string& where = "");

/// The inline signature of a document, if any.
SignaturePtr embedded_signature(const Json& j, const std::string& where = "");

/// Graphviz rendering; half edges dashed.
std::string to_dot(const Graph& g, std::string_view name = "G");

}  // namespace gwa
