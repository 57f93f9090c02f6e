#pragma once

#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>

#include "fdesign/balancer.hpp"
#include "fdesign/hypergraph.hpp"
#include "fdesign/packing.hpp"
#include "fdesign/partite.hpp"
#include "fdesign/regularise.hpp"
#include "fdesign/set_function.hpp"
#include "fdesign/shifter.hpp"

namespace fdesign {

using Json = nlohmann::json;

// Malformed or invalid input. where() is "line:col" for syntax errors and a
// JSON pointer such as /edges/3 for structural ones.
class JsonError : public std::invalid_argument {
public:
    JsonError(const std::string& where, const std::string& what)
        : std::invalid_argument(where + ": " + what), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

Json parse_json(const std::string& text);

// {"r", "n", "edges", optional "mult", optional "vertices" (names)}. With
// "vertices", edges may list names instead of indices. Edges given as indices
// must be strictly increasing.
Json to_json(const RGraph& g);
Json to_json(const MultiRGraph& g);
RGraph hypergraph_from_json(const Json& j, const std::string& at = "");
MultiRGraph multigraph_from_json(const Json& j, const std::string& at = "");

Json to_json(const Packing& p);
Packing packing_from_json(const Json& j, const std::string& at = "");

Json to_json(const SetFunction& phi);
SetFunction set_function_from_json(const Json& j, const std::string& at = "");

// Grouped form {"q","f","r","classes"}; vertex p*q + x is element x of part p.
Json to_json(const ResolvableDecomposition& d);
ResolvableDecomposition resolvable_from_json(const Json& j, const std::string& at = "");

Json to_json(const Regularisation& reg);
Json to_json(const FDecomposition& fd);
// Accepts a regularisation or {"fstar", "decomposition"}.
FDecomposition fdecomposition_from_json(const Json& j, const std::string& at = "");

Json to_json(const Balancer& b);
Balancer balancer_from_json(const Json& j, const std::string& at = "");

Json to_json(const Multishifter& m);
Json to_json(const Shifter& s);
Shifter shifter_from_json(const Json& j, const std::string& at = "");

DivVector div_vector_from_json(const Json& j, const std::string& at = "");

}  // namespace fdesign
