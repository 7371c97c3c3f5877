#include "chartlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "chartlab/error.hpp"

namespace chartlab::io {

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ParseError((where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field \"") + key + "\"");
  return *it;
}

Nat natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0) fail(where, "expected a non-negative integer");
  return v;
}

Nat positive(const Json& j, const std::string& where) {
  const Nat v = natural(j, where);
  if (v == 0) fail(where, "expected a positive integer");
  return v;
}

std::vector<Nat> naturals(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  std::vector<Nat> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(natural(j[i], where + "/" + std::to_string(i)));
  return out;
}

std::vector<std::pair<Nat, Nat>> pairs_of(const Json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array of pairs");
  std::vector<std::pair<Nat, Nat>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "/" + std::to_string(i);
    if (!j[i].is_array() || j[i].size() != 2) fail(at, "expected a pair [x, y]");
    out.emplace_back(natural(j[i][0], at + "/0"), natural(j[i][1], at + "/1"));
  }
  return out;
}

// Library errors raised while building a value become parse errors at `where`.
template <typename F>
auto build(const std::string& where, F&& make) {
  try {
    return make();
  } catch (const ParseError& e) {
    fail(where, e.what());
  } catch (const RangeError& e) {
    fail(where, e.what());
  } catch (const PreconditionError& e) {
    fail(where, e.what());
  }
}

}  // namespace

Json parse(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON");
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

Json to_json(Card c, const char* infinite_name) {
  if (c.is_infinite()) return infinite_name;
  return c.value();
}

Card card_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "omega" || s == "aleph0") return Card::omega();
    fail(where, "expected an integer, \"omega\" or \"aleph0\"");
  }
  return Card(static_cast<std::uint64_t>(natural(j, where)));
}

Json to_json(const Chart& f) {
  Json pairs = Json::array();
  for (const auto& [x, y] : f.pairs()) pairs.push_back({x, y});
  return Json{{"n", f.ground_size()}, {"pairs", pairs}};
}

Chart chart_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) return build(where, [&] { return chart_from_text(j.get<std::string>()); });
  const Nat n = natural(field(j, "n", where), where + "/n");
  const auto raw = pairs_of(field(j, "pairs", where), where + "/pairs");
  std::vector<PointPair> pairs;
  for (const auto& [x, y] : raw) {
    if (x > INT32_MAX || y > INT32_MAX) fail(where + "/pairs", "point out of range");
    pairs.emplace_back(static_cast<Point>(x), static_cast<Point>(y));
  }
  return build(where, [&] { return Chart::from_pairs(static_cast<std::size_t>(n), pairs); });
}

std::vector<Chart> charts_from_json(const Json& j, const std::string& where) {
  if (j.is_object()) {
    if (j.contains("generators")) return charts_from_json(j["generators"], where + "/generators");
    if (j.contains("elements")) return charts_from_json(j["elements"], where + "/elements");
    fail(where, "expected a list of charts or an object with \"generators\" or \"elements\"");
  }
  if (!j.is_array()) fail(where, "expected a list of charts");
  std::vector<Chart> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(chart_from_json(j[i], where + "/" + std::to_string(i)));
  return out;
}

Json to_json(const FiniteSemigroup& s) {
  Json elements = Json::array();
  for (const auto& f : s.sorted_elements()) elements.push_back(to_json(f));
  return Json{{"n", s.ground_size()}, {"order", s.order()}, {"elements", elements}};
}

Json to_json(const RelStructure& r) {
  Json relations = Json::array();
  for (const auto& rel : r.relations()) {
    Json tuples = Json::array();
    for (const auto& t : rel.tuples) tuples.push_back(t);
    relations.push_back({{"name", rel.name}, {"arity", rel.arity}, {"tuples", tuples}});
  }
  return Json{{"n", r.ground_size()}, {"relations", relations}};
}

RelStructure structure_from_json(const Json& j, const std::string& where) {
  const Nat n = natural(field(j, "n", where), where + "/n");
  const Json& rels = field(j, "relations", where);
  if (!rels.is_array()) fail(where + "/relations", "expected an array");
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < rels.size(); ++i) {
    const std::string at = where + "/relations/" + std::to_string(i);
    Relation rel;
    const Json& name = field(rels[i], "name", at);
    if (!name.is_string()) fail(at + "/name", "expected a string");
    rel.name = name.get<std::string>();
    rel.arity = static_cast<std::size_t>(positive(field(rels[i], "arity", at), at + "/arity"));
    const Json& tuples = field(rels[i], "tuples", at);
    if (!tuples.is_array()) fail(at + "/tuples", "expected an array");
    for (std::size_t k = 0; k < tuples.size(); ++k) {
      Tuple t;
      for (Nat x : naturals(tuples[k], at + "/tuples/" + std::to_string(k))) {
        if (x > INT32_MAX) fail(at + "/tuples/" + std::to_string(k), "point out of range");
        t.push_back(static_cast<Point>(x));
      }
      rel.tuples.insert(std::move(t));
    }
    relations.push_back(std::move(rel));
  }
  return build(where, [&] { return RelStructure(static_cast<std::size_t>(n), relations); });
}

Json to_json(const TreeSpec& t) {
  Json edges = Json::object();
  for (std::size_t s = 0; s < t.state_count(); ++s) {
    Json list = Json::array();
    for (const auto& e : t.edges(s)) {
      Json delay = e.all_delays() ? Json("all") : Json(*e.delay);
      list.push_back({{"delay", delay}, {"child", t.states()[e.child]}, {"mult", to_json(e.mult)}});
    }
    edges[t.states()[s]] = list;
  }
  return Json{{"states", t.states()}, {"root", t.states()[t.root()]}, {"edges", edges}};
}

TreeSpec tree_from_json(const Json& j, const std::string& where) {
  const Json& states_json = field(j, "states", where);
  if (!states_json.is_array() || states_json.empty())
    fail(where + "/states", "expected a non-empty array of names");
  std::vector<std::string> states;
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    if (!states_json[i].is_string()) fail(where + "/states/" + std::to_string(i), "expected a string");
    states.push_back(states_json[i].get<std::string>());
    for (std::size_t k = 0; k + 1 < states.size(); ++k)
      if (states[k] == states.back()) fail(where + "/states/" + std::to_string(i), "duplicate state name");
  }
  auto index = [&](const Json& name, const std::string& at) {
    if (!name.is_string()) fail(at, "expected a state name");
    for (std::size_t k = 0; k < states.size(); ++k)
      if (states[k] == name.get<std::string>()) return k;
    fail(at, "unknown state \"" + name.get<std::string>() + "\"");
  };
  const std::size_t root = index(field(j, "root", where), where + "/root");
  std::vector<std::vector<TreeEdge>> edges(states.size());
  if (j.contains("edges")) {
    const Json& all = j["edges"];
    if (!all.is_object()) fail(where + "/edges", "expected an object keyed by state");
    for (const auto& [name, list] : all.items()) {
      const std::string at = where + "/edges/" + name;
      const std::size_t s = index(Json(name), at);
      if (!list.is_array()) fail(at, "expected an array of edges");
      for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string eat = at + "/" + std::to_string(i);
        TreeEdge e;
        const Json& delay = field(list[i], "delay", eat);
        if (delay.is_string()) {
          if (delay.get<std::string>() != "all") fail(eat + "/delay", "expected an integer or \"all\"");
        } else {
          e.delay = static_cast<std::uint64_t>(natural(delay, eat + "/delay"));
        }
        e.child = index(field(list[i], "child", eat), eat + "/child");
        e.mult = card_from_json(field(list[i], "mult", eat), eat + "/mult");
        if (e.mult == Card(0)) fail(eat + "/mult", "multiplicity must be positive");
        edges[s].push_back(e);
      }
    }
  }
  return build(where, [&] { return TreeSpec(states, root, edges); });
}

Json to_json(const FiniteTree& t) {
  return Json{{"vertices", t.size()},
              {"parent", t.parent},
              {"level_sizes", t.level_sizes()},
              {"truncated", t.truncated}};
}

Json to_json(const EPSet& s) {
  return Json{{"threshold", s.threshold()},
              {"period", s.period()},
              {"residues", s.residues()},
              {"low", s.low()}};
}

EPSet epset_from_json(const Json& j, const std::string& where) {
  const Nat threshold = natural(field(j, "threshold", where), where + "/threshold");
  const Nat period = positive(field(j, "period", where), where + "/period");
  auto residues = naturals(field(j, "residues", where), where + "/residues");
  auto low = j.contains("low") ? naturals(j["low"], where + "/low") : std::vector<Nat>{};
  return build(where, [&] { return EPSet(threshold, period, residues, low); });
}

Json to_json(const SymbolicChart& f) {
  Json branches = Json::array();
  for (const auto& b : f.branches())
    branches.push_back({{"start", b.domain.start},
                        {"step", b.domain.step},
                        {"image_start", b.image.start},
                        {"image_step", b.image.step}});
  Json exceptions = Json::array();
  for (const auto& [x, y] : f.exceptions()) exceptions.push_back({x, y});
  return Json{{"branches", branches}, {"exceptions", exceptions}};
}

SymbolicChart symbolic_from_json(const Json& j, const std::string& where) {
  const Json& list = field(j, "branches", where);
  if (!list.is_array()) fail(where + "/branches", "expected an array");
  std::vector<AffineBranch> branches;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + "/branches/" + std::to_string(i);
    const Nat start = natural(field(list[i], "start", at), at + "/start");
    const Nat step = positive(field(list[i], "step", at), at + "/step");
    if (list[i].contains("a")) {
      const Nat a = positive(list[i]["a"], at + "/a");
      const Json& b = field(list[i], "b", at);
      if (!b.is_number_integer()) fail(at + "/b", "expected an integer");
      const Nat offset = b.get<std::int64_t>();
      branches.push_back(build(at, [&] { return AffineBranch::from_affine(start, step, a, offset); }));
    } else {
      const Nat image_start = natural(field(list[i], "image_start", at), at + "/image_start");
      const Nat image_step = positive(field(list[i], "image_step", at), at + "/image_step");
      branches.push_back({{start, step}, {image_start, image_step}});
    }
  }
  std::vector<SymbolicChart::Pair> exceptions;
  if (j.contains("exceptions")) exceptions = pairs_of(j["exceptions"], where + "/exceptions");
  return build(where, [&] { return SymbolicChart(branches, exceptions); });
}

Json to_json(const FinSuppPerm& p) {
  Json table = Json::array();
  for (const auto& [x, y] : p.table()) table.push_back({x, y});
  return table;
}

FinSuppPerm perm_from_json(const Json& j, const std::string& where) {
  const Json& table = j.is_object() ? field(j, "exceptions", where) : j;
  const auto pairs = pairs_of(table, j.is_object() ? where + "/exceptions" : where);
  return build(where, [&] { return FinSuppPerm(pairs); });
}

std::string digest(const Json& j) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace chartlab::io
