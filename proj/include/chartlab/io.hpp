#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "chartlab/chart.hpp"
#include "chartlab/epset.hpp"
#include "chartlab/omega.hpp"
#include "chartlab/perm.hpp"
#include "chartlab/relstruct.hpp"
#include "chartlab/semigroup.hpp"
#include "chartlab/trees.hpp"

namespace chartlab::io {

using Json = nlohmann::ordered_json;

/// Parses JSON text; ParseError names the source with line and column.
Json parse(const std::string& text, const std::string& source = "<input>");
Json read_file(const std::string& path);

/// "omega" (or `infinite_name`) for the infinite value.
Json to_json(Card c, const char* infinite_name = "omega");
/// Accepts a non-negative integer, "omega" or "aleph0".
Card card_from_json(const Json& j, const std::string& where = "");

Json to_json(const Chart& f);
/// {"n":4,"pairs":[[0,2],[1,3]]} or the text form "4:[0>2,1>3]".
Chart chart_from_json(const Json& j, const std::string& where = "");
/// A list of charts, or an object carrying "generators" or "elements".
std::vector<Chart> charts_from_json(const Json& j, const std::string& where = "");

Json to_json(const FiniteSemigroup& s);

Json to_json(const RelStructure& r);
RelStructure structure_from_json(const Json& j, const std::string& where = "");

Json to_json(const TreeSpec& t);
TreeSpec tree_from_json(const Json& j, const std::string& where = "");
Json to_json(const FiniteTree& t);

Json to_json(const EPSet& s);
EPSet epset_from_json(const Json& j, const std::string& where = "");

/// Branches are written as {"start","step","image_start","image_step"}; the
/// affine form {"start","step","a","b"} is accepted on input.
Json to_json(const SymbolicChart& f);
SymbolicChart symbolic_from_json(const Json& j, const std::string& where = "");

/// The exception table [[x,y],...].
Json to_json(const FinSuppPerm& p);
FinSuppPerm perm_from_json(const Json& j, const std::string& where = "");

/// FNV-1a of the compact serialization, as 16 hex digits.
std::string digest(const Json& j);

}  // namespace chartlab::io
