#include <omp.h>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "chartlab/acceptance.hpp"
#include "chartlab/engine.hpp"
#include "chartlab/error.hpp"
#include "chartlab/io.hpp"
#include "chartlab/omega.hpp"
#include "chartlab/perm.hpp"
#include "chartlab/relstruct.hpp"
#include "chartlab/semigroup.hpp"
#include "chartlab/trees.hpp"

using namespace chartlab;
using io::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitResource = 2;
constexpr int kExitUsage = 64;

struct Report {
  Json inputs = Json::object();
  Json results = Json::object();
  std::vector<VerificationCheck> checks;
  bool resource_capped = false;

  void check(std::string name, bool ok, std::string witness = "") {
    checks.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
  }
};

struct Options {
  bool pretty = false;
  bool timing = false;
  int threads = 0;
  std::uint64_t seed = acceptance::kDefaultSeed;

  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t bound = 1;
  std::size_t depth = 3;
  std::size_t width = 2;
  std::string f, g, gens, target = "ix", structure, semigroup, builtin, spec, k_card = "2",
                           mode = "strong", cls, gamma, parts, astab, p, level = "quick";
  bool reference = false;
};

// A value naming an existing file is read from disk; anything else is taken
// as inline JSON, and failing that as a bare string (the chart text form).
Json load(const std::string& arg, const std::string& what) {
  if (arg.empty()) throw ParameterError("missing --" + what);
  Json j;
  if (std::filesystem::is_regular_file(arg)) {
    j = io::read_file(arg);
  } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[' || arg.front() == '"')) {
    j = io::parse(arg, "--" + what);
  } else {
    j = arg;
  }
  // Reports produced by this tool are accepted as input: use their results.
  if (j.is_object() && j.contains("command") && j.contains("results")) j = j["results"];
  return j;
}

Json charts_json(std::span<const Chart> charts) {
  Json out = Json::array();
  for (const auto& c : charts) out.push_back(io::to_json(c));
  return out;
}

std::vector<Chart> load_charts(const std::string& arg, const std::string& what) {
  return io::charts_from_json(load(arg, what), "--" + what);
}

std::size_t ground_of(std::span<const Chart> charts, std::size_t n) {
  if (n == 0 && !charts.empty()) return charts.front().ground_size();
  return n;
}

FiniteSemigroup target_semigroup(const std::string& name, std::size_t n) {
  if (name == "ix") return FiniteSemigroup(n, enumerate_all(n), {});
  if (name == "sym") return closure(symmetric_group_generators(n), n);
  if (name == "e") return idempotents(n);
  throw ParameterError("unknown --target '" + name + "' (expected ix, sym or e)");
}

Card parse_card(const std::string& text) {
  if (text == "omega" || text == "aleph0") return Card::omega();
  return io::card_from_json(io::parse(text, "--k"), "--k");
}

TreeSpec load_tree(const Options& o, Report& r) {
  if (!o.builtin.empty() == !o.spec.empty())
    throw ParameterError("give exactly one of --builtin and --spec");
  if (!o.builtin.empty()) {
    r.inputs["builtin"] = o.builtin;
    if (o.builtin == "regular") r.inputs["k"] = o.k_card;
    return builtin(o.builtin, parse_card(o.k_card));
  }
  const Json j = load(o.spec, "spec");
  r.inputs["spec"] = j;
  return io::tree_from_json(j.contains("tree") ? j["tree"] : j, "--spec");
}

SymbolicChart load_symbolic(const std::string& arg, const std::string& what, Report& r) {
  const Json j = load(arg, what);
  r.inputs[what] = j;
  return io::symbolic_from_json(j, "--" + what);
}

FinSuppPerm load_perm(const std::string& arg, Report& r) {
  const Json j = load(arg, "p");
  r.inputs["p"] = j;
  return io::perm_from_json(j, "--p");
}

Json card(Card c) { return io::to_json(c); }

// ---- chart

Report chart_show(const Options& o) {
  Report r;
  const Chart f = io::chart_from_json(load(o.f, "f"), "--f");
  r.inputs["f"] = io::to_json(f);
  const auto m = measures(f);
  r.results = {{"chart", io::to_json(f)},     {"text", to_text(f)},
               {"rank", m.rank},              {"defect", m.defect},
               {"collapse", m.collapse},      {"domain", f.domain()},
               {"image", f.image()},          {"permutation", f.is_permutation()},
               {"partial_identity", f.is_partial_identity()}};
  r.check("rank + defect = n", m.rank + m.defect == f.ground_size());
  return r;
}

Report chart_compose(const Options& o) {
  Report r;
  const Chart f = io::chart_from_json(load(o.f, "f"), "--f");
  const Chart g = io::chart_from_json(load(o.g, "g"), "--g");
  r.inputs = {{"f", io::to_json(f)}, {"g", io::to_json(g)}};
  r.results = {{"product", io::to_json(f * g)}};
  return r;
}

Report chart_invert(const Options& o) {
  Report r;
  const Chart f = io::chart_from_json(load(o.f, "f"), "--f");
  r.inputs["f"] = io::to_json(f);
  const Chart fi = invert(f);
  r.results = {{"inverse", io::to_json(fi)}};
  const Chart e = f * fi;
  r.check("f f^-1 is the identity on dom f", e == Chart::partial_identity(f.ground_size(), f.domain()),
          to_text(e));
  return r;
}

Report chart_enumerate(const Options& o) {
  Report r;
  r.inputs["n"] = o.n;
  const auto all = enumerate_all(o.n);
  r.results = {{"n", o.n}, {"order", all.size()}};
  r.check("order matches the closed form", all.size() == symmetric_inverse_monoid_order(o.n),
          std::to_string(all.size()));
  return r;
}

// ---- semigroup

Report semigroup_closure(const Options& o) {
  Report r;
  const auto gens = load_charts(o.gens, "gens");
  const std::size_t n = ground_of(gens, o.n);
  r.inputs = {{"n", n}, {"gens", charts_json(gens)}, {"reference", o.reference}};
  if (o.reference) {
    r.results = io::to_json(closure_reference(gens, n));
  } else {
    const auto res = closure_report(gens, n);
    r.results = io::to_json(res.semigroup);
    r.results["frontier_sizes"] = res.frontier_sizes;
  }
  const auto elems = io::charts_from_json(r.results);
  r.check("product-closed", is_product_closed(elems));
  return r;
}

Report semigroup_relrank(const Options& o) {
  Report r;
  std::vector<Chart> s;
  if (!o.gens.empty()) s = load_charts(o.gens, "gens");
  const std::size_t n = ground_of(s, o.n);
  if (n == 0) throw ParameterError("--n is required without --gens");
  r.inputs = {{"n", n}, {"target", o.target}, {"bound", o.bound}, {"gens", charts_json(s)}};
  const auto target = target_semigroup(o.target, n);
  const auto res = relative_rank(s, target, o.bound);
  if (res) {
    r.results = {{"rank", res->rank}, {"witness", charts_json(res->witness)}};
    const auto g = relative_generates(s, res->witness, target);
    r.check("S with the witness generates the target", g.succeeded,
            g.missing ? to_text(*g.missing) : "");
  } else {
    r.results = {{"rank", nullptr}};
    r.check("relative rank is at most " + std::to_string(o.bound), false,
            "no set of size <= " + std::to_string(o.bound) + " generates the target");
  }
  return r;
}

// ---- maximal

Report maximal_verify(const Options& o) {
  Report r;
  r.inputs["n"] = o.n;
  const auto rep = verify_xiuliang(o.n);
  r.results = {{"n", rep.n},
               {"family_size", rep.family_size},
               {"rank_deficient_generators_checked", rep.rank_deficient_generators_checked}};
  if (rep.brute_force_maximal) r.results["brute_force_maximal"] = *rep.brute_force_maximal;
  if (rep.brute_force_maximal_nonempty)
    r.results["brute_force_maximal_nonempty"] = *rep.brute_force_maximal_nonempty;
  r.results["notes"] = rep.notes;
  r.checks = rep.checks;
  return r;
}

Report maximal_family(const Options& o) {
  Report r;
  r.inputs["n"] = o.n;
  Json members = Json::array();
  for (const auto& m : xiuliang_family(o.n))
    members.push_back({{"name", m.name},
                       {"order", m.semigroup.order()},
                       {"generators", charts_json(greedy_generators(m.semigroup))}});
  r.results = {{"n", o.n}, {"members", members}};
  return r;
}

Report maximal_subgroups(const Options& o) {
  Report r;
  r.inputs["n"] = o.n;
  Json groups = Json::array();
  for (const auto& g : maximal_subgroups_sym(o.n)) {
    const FiniteSemigroup s(o.n, g, {});
    groups.push_back({{"order", g.size()}, {"generators", charts_json(greedy_generators(s))}});
  }
  r.results = {{"n", o.n}, {"maximal_subgroups", groups}};
  return r;
}

// ---- relstruct

RelStructure load_structure(const Options& o, Report& r) {
  const Json j = load(o.structure, "structure");
  r.inputs["structure"] = j;
  return io::structure_from_json(j.contains("structure") ? j["structure"] : j, "--structure");
}

FiniteSemigroup load_semigroup(const Options& o, Report& r) {
  const auto charts = load_charts(o.semigroup, "semigroup");
  const std::size_t n = ground_of(charts, o.n);
  r.inputs = {{"n", n}, {"semigroup", charts_json(charts)}};
  return closure(charts, n);
}

Report relstruct_morphisms(const Options& o, bool automorphisms) {
  Report r;
  const auto rs = load_structure(o, r);
  const auto s = automorphisms ? p_aut(rs) : ip_end(rs);
  r.results = io::to_json(s);
  if (automorphisms) r.check("inverse-closed", predicates(s).inverse_closed);
  if (o.reference) {
    const auto ref = automorphisms ? p_aut_reference(rs) : ip_end_reference(rs);
    r.check("agrees with the serial reference", ref.same_elements(s),
            std::to_string(ref.order()) + " vs " + std::to_string(s.order()));
  }
  return r;
}

Report relstruct_canonical(const Options& o) {
  Report r;
  const auto s = load_semigroup(o, r);
  r.results = {{"structure", io::to_json(canonical_structure(s))}};
  return r;
}

Report relstruct_verify(const Options& o) {
  Report r;
  const auto s = load_semigroup(o, r);
  const auto rep = verify_correspondence(s);
  r.results = {{"order", s.order()}};
  r.check("S = ipEnd(canonical(S))", rep.roundtrip, io::to_json(s).dump());
  r.check("pAut = ipEnd ∩ ipEnd^-1", rep.paut_is_intersection, io::to_json(s).dump());
  return r;
}

// ---- tree

Report tree_classify(const Options& o) {
  Report r;
  const auto t = load_tree(o, r);
  const TreeClass c = classify(t);
  r.results = {{"class", to_string(c)}};
  const bool uncountable = uncountable_paths(t);
  r.check("Bottom iff countably many paths", (c == TreeClass::kBottom) != uncountable,
          io::to_json(t).dump());
  return r;
}

Report tree_prune(const Options& o) {
  Report r;
  const auto t = load_tree(o, r);
  if (o.mode != "weak" && o.mode != "strong")
    throw ParameterError("--mode must be weak or strong");
  r.inputs["mode"] = o.mode;
  const auto res = prune_fixpoint(t, o.mode == "weak" ? PruneMode::kWeak : PruneMode::kStrong);
  r.results = {{"tree", io::to_json(res.tree)}, {"steps", res.steps}};
  r.check("fixpoint within |edges| steps", res.steps <= t.edge_count(), std::to_string(res.steps));
  return r;
}

Report tree_levels(const Options& o) {
  Report r;
  const auto t = load_tree(o, r);
  r.inputs["k"] = o.k;
  Json levels = Json::array();
  for (std::size_t k = 0; k <= o.k; ++k) {
    const auto p = level_profile(t, k);
    levels.push_back({{"level", k},
                      {"finite_degree", card(p.finite_degree)},
                      {"infinite_degree", card(p.infinite_degree)}});
  }
  r.results = {{"levels", levels}};
  return r;
}

Report tree_path_semigroup(const Options& o) {
  Report r;
  const auto t = load_tree(o, r);
  r.inputs["depth"] = o.depth;
  r.inputs["width"] = o.width;
  FiniteTree ft = materialize(t, o.depth, o.width);
  // Cutting ω families to `width` still gives a finite tree to work with.
  const bool truncated = ft.truncated;
  ft.truncated = false;
  const auto s = path_semigroup(ft);
  std::size_t expected = 0;
  for (auto n : ft.level_sizes()) expected += n * n;
  r.results = {{"tree", io::to_json(ft)}, {"truncated", truncated}, {"order", s.order()}};
  r.check("order = sum of squared level sizes", s.order() == expected,
          std::to_string(s.order()) + " != " + std::to_string(expected));
  r.check("inverse-closed", predicates(s).inverse_closed);
  return r;
}

// ---- omega

Report omega_measures(const Options& o) {
  Report r;
  const auto f = load_symbolic(o.f, "f", r);
  const auto m = measures(f);
  const auto mi = measures(invert(f));
  r.results = {{"chart", io::to_json(f)},
               {"rank", card(m.rank)},
               {"defect", card(m.defect)},
               {"collapse", card(m.collapse)},
               {"domain", io::to_json(f.domain())},
               {"image", io::to_json(f.image())}};
  r.check("c(f) = d(f^-1) and d(f) = c(f^-1)", m.collapse == mi.defect && m.defect == mi.collapse);
  return r;
}

Report omega_member(const Options& o) {
  Report r;
  const auto f = load_symbolic(o.f, "f", r);
  const OmegaClass c = parse_omega_class(o.cls);
  r.inputs["class"] = to_string(c);
  std::optional<std::vector<Nat>> gamma;
  if (!o.gamma.empty()) {
    const Json j = load(o.gamma, "gamma");
    r.inputs["gamma"] = j;
    gamma = j.get<std::vector<Nat>>();
  }
  r.results = {{"class", to_string(c)}, {"member", is_member(f, c, gamma)}};
  return r;
}

Report omega_rho(const Options& o) {
  Report r;
  const auto f = load_symbolic(o.f, "f", r);
  const Json pj = load(o.parts, "parts");
  r.inputs["parts"] = pj;
  std::vector<EPSet> parts;
  const Json& list = pj.is_object() && pj.contains("parts") ? pj["parts"] : pj;
  if (!list.is_array()) throw ParseError("--parts: expected an array of sets");
  for (std::size_t i = 0; i < list.size(); ++i)
    parts.push_back(io::epset_from_json(list[i], "--parts/" + std::to_string(i)));
  check_partition(parts);
  Json pairs = Json::array();
  for (const auto& [i, j] : rho(f, parts)) pairs.push_back({i, j});
  r.results = {{"rho", pairs}};
  if (!o.astab.empty()) {
    r.inputs["astab"] = o.astab;
    r.results["astab"] = o.astab;
    r.results["member"] = astab_member(f, parts, parse_astab_variant(o.astab));
  }
  return r;
}

bool agree_on_prefix(const SymbolicChart& a, const SymbolicChart& b, Nat limit) {
  for (Nat x = 0; x < limit; ++x)
    if (a.apply(x) != b.apply(x)) return false;
  return true;
}

Report omega_conjugate(const Options& o) {
  Report r;
  const auto f = load_symbolic(o.f, "f", r);
  const auto w = conjugation_witness(f);
  r.results = {{"g", io::to_json(w.g)}, {"h", io::to_json(w.h)}};
  const auto m = measures(w.h);
  r.check("h is a permutation of omega", m.defect == Card(0) && m.collapse == Card(0),
          io::to_json(w.h).dump());
  const auto back = compose(w.g, w.h, invert(w.g));
  r.check("g h g^-1 = f", equivalent(back, f) && agree_on_prefix(back, f, 1000),
          io::to_json(back).dump());
  return r;
}

Report omega_factor(const Options& o) {
  Report r;
  const auto f = load_symbolic(o.f, "f", r);
  const auto w = monotone_factorization(f);
  r.results = {{"g", io::to_json(w.g)}, {"h", io::to_json(w.h)}};
  r.check("g is increasing", is_increasing(w.g), io::to_json(w.g).dump());
  r.check("h is decreasing", is_decreasing(w.h), io::to_json(w.h).dump());
  const auto gh = compose(w.g, w.h);
  r.check("g h = f", equivalent(gh, f) && agree_on_prefix(gh, f, 1000), io::to_json(gh).dump());
  return r;
}

// ---- perm

bool products_to(const std::vector<FinSuppPerm>& factors, const FinSuppPerm& p) {
  FinSuppPerm acc;
  for (const auto& f : factors) acc = acc * f;
  return acc == p;
}

Report perm_factor_locals(const Options& o) {
  Report r;
  const auto p = load_perm(o.p, r);
  const auto factors = four_locals(p);
  Json fs = Json::array();
  for (const auto& f : factors) fs.push_back(io::to_json(f));
  r.results = {{"factors", fs}};
  r.check("product of the factors is p", products_to(factors, p));
  for (std::size_t i = 0; i < factors.size(); ++i)
    r.check("factor " + std::to_string(i) + " is local", is_local(factors[i]).local,
            io::to_json(factors[i]).dump());
  return r;
}

Report perm_two_involutions(const Options& o) {
  Report r;
  const auto p = load_perm(o.p, r);
  const auto [a, b] = two_involutions(p);
  r.results = {{"i1", io::to_json(a)}, {"i2", io::to_json(b)}};
  r.check("i1 and i2 are involutions", a.is_involution() && b.is_involution());
  r.check("i1 i2 = p", products_to({a, b}, p));
  return r;
}

// ---- verify-all

Report verify_all(const Options& o, bool timing) {
  Report r;
  if (o.level != "quick" && o.level != "full") throw ParameterError("--level must be quick or full");
  r.inputs = {{"level", o.level}, {"seed", o.seed}};
  const auto level = o.level == "full" ? acceptance::Level::kFull : acceptance::Level::kQuick;
  Json criteria = Json::array();
  for (const auto& c : acceptance::run_all(level, o.seed)) {
    Json entry = {{"id", c.id}, {"title", c.title}, {"passed", c.passed()}, {"checks", c.checks.size()}};
    if (timing) entry["seconds"] = c.seconds;
    if (c.resource_error) {
      entry["resource_error"] = *c.resource_error;
      r.resource_capped = true;
    }
    criteria.push_back(entry);
    for (const auto& ch : c.checks)
      r.checks.push_back({"criterion " + std::to_string(c.id) + ": " + ch.name, ch.passed, ch.witness});
    if (!c.within_time())
      r.check("criterion " + std::to_string(c.id) + ": within time limit", false,
              std::to_string(c.seconds) + "s");
  }
  r.results = {{"criteria", criteria}};
  return r;
}

// Presentation and scheduling flags are left out so that the report does not
// depend on them.
std::string command_echo(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--pretty" || a == "--timing" || a.starts_with("--threads=")) continue;
    if (a == "--threads") {
      ++i;
      continue;
    }
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

int emit(const Report& r, const std::string& command, const Options& o, double seconds) {
  Json out = {{"command", command}, {"inputs_digest", io::digest(r.inputs)}, {"results", r.results}};
  Json checks = Json::array();
  bool ok = true;
  for (const auto& c : r.checks) {
    Json entry = {{"name", c.name}, {"passed", c.passed}};
    if (!c.witness.empty()) entry["witness"] = c.witness;
    checks.push_back(entry);
    ok = ok && c.passed;
  }
  out["checks"] = checks;
  if (o.timing) out["timing"] = {{"seconds", seconds}};
  std::cout << (o.pretty ? out.dump(2) : out.dump()) << '\n';
  if (!ok) return kExitRefuted;
  return r.resource_capped ? kExitResource : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chartlab: charts, inverse semigroups and their verification"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--pretty", o.pretty, "Indented JSON output");
  app.add_flag("--timing", o.timing, "Include wall-clock timing in the report");
  app.add_option("--threads", o.threads, "OpenMP threads for the engine kernels")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", o.seed, "Seed for randomized checks");

  std::function<Report()> action;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help,
                  std::function<Report()> run) {
    CLI::App* sub = parent->add_subcommand(name, help);
    sub->callback([&action, run] { action = run; });
    return sub;
  };
  auto group = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->require_subcommand(1);
    return sub;
  };

  auto* chart = group("chart", "Single charts in I_n");
  leaf(chart, "show", "Measures, domain and image", [&] { return chart_show(o); })
      ->add_option("--f", o.f, "Chart (file, JSON or text form)")->required();
  auto* compose_cmd = leaf(chart, "compose", "Left-to-right product f g", [&] { return chart_compose(o); });
  compose_cmd->add_option("--f", o.f)->required();
  compose_cmd->add_option("--g", o.g)->required();
  leaf(chart, "invert", "Inverse chart", [&] { return chart_invert(o); })->add_option("--f", o.f)->required();
  leaf(chart, "enumerate", "Order of I_n by enumeration", [&] { return chart_enumerate(o); })
      ->add_option("--n", o.n)->required();

  auto* sg = group("semigroup", "Finite semigroups of charts");
  auto* cl = leaf(sg, "closure", "Semigroup generated by a chart list", [&] { return semigroup_closure(o); });
  cl->add_option("--n", o.n, "Ground size (default: from the generators)");
  cl->add_option("--gens", o.gens, "Generator list")->required();
  cl->add_flag("--reference", o.reference, "Use the serial reference kernel");
  auto* rr = leaf(sg, "relrank", "Relative rank of a chart list in a target", [&] { return semigroup_relrank(o); });
  rr->add_option("--n", o.n);
  rr->add_option("--target", o.target, "ix | sym | e")->check(CLI::IsMember({"ix", "sym", "e"}));
  rr->add_option("--gens", o.gens, "The set S (default: empty)");
  rr->add_option("--bound", o.bound)->check(CLI::Range(std::size_t{0}, kRelativeRankBoundCap));

  auto* mx = group("maximal", "Maximal subsemigroups of I_n");
  leaf(mx, "verify", "Check the classified family", [&] { return maximal_verify(o); })
      ->add_option("--n", o.n)->required();
  leaf(mx, "family", "List the classified family", [&] { return maximal_family(o); })
      ->add_option("--n", o.n)->required();
  leaf(mx, "subgroups", "Maximal subgroups of Sym(n)", [&] { return maximal_subgroups(o); })
      ->add_option("--n", o.n)->required();

  auto* rs = group("relstruct", "Relational structures");
  for (auto [name, aut] : {std::pair{"paut", true}, std::pair{"ipend", false}}) {
    auto* cmd = leaf(rs, name, aut ? "Partial automorphisms" : "Injective partial endomorphisms",
                     [&o, aut] { return relstruct_morphisms(o, aut); });
    cmd->add_option("--structure", o.structure)->required();
    cmd->add_flag("--reference", o.reference, "Cross-check against the serial filter");
  }
  for (auto [name, help] : {std::pair{"canonical", "Canonical structure of a full submonoid"},
                            std::pair{"verify", "Check S = ipEnd(canonical(S))"}}) {
    const bool canon = std::string(name) == "canonical";
    auto* cmd = leaf(rs, name, help, [&o, canon] { return canon ? relstruct_canonical(o) : relstruct_verify(o); });
    cmd->add_option("--semigroup", o.semigroup, "Generators of the submonoid")->required();
    cmd->add_option("--n", o.n);
  }

  auto* tr = group("tree", "Regular trees");
  auto tree_inputs = [&](CLI::App* cmd) {
    cmd->add_option("--builtin", o.builtin, "trivial | unary | regular | recursive");
    cmd->add_option("--k", o.k_card, "Children per vertex for --builtin regular");
    cmd->add_option("--spec", o.spec, "TreeSpec JSON");
    return cmd;
  };
  tree_inputs(leaf(tr, "classify", "Bottom, Mid or Top", [&] { return tree_classify(o); }));
  tree_inputs(leaf(tr, "prune", "Pruning fixpoint", [&] { return tree_prune(o); }))
      ->add_option("--mode", o.mode, "weak | strong");
  {
    auto* cmd = leaf(tr, "levels", "Level profile", [&] { return tree_levels(o); });
    cmd->add_option("--builtin", o.builtin);
    cmd->add_option("--spec", o.spec);
    cmd->add_option("--regular-k", o.k_card, "Children per vertex for --builtin regular");
    cmd->add_option("--k", o.k, "Deepest level")->check(CLI::Range(std::size_t{0}, kLevelDepthCap));
  }
  tree_inputs(leaf(tr, "path-semigroup", "Path-bijection semigroup of a finite cut", [&] { return tree_path_semigroup(o); }))
      ->add_option("--depth", o.depth);
  tr->get_subcommand("path-semigroup")->add_option("--width", o.width, "Children kept per omega family");

  auto* om = group("omega", "Charts on omega");
  leaf(om, "measures", "Rank, defect and collapse", [&] { return omega_measures(o); })->add_option("--f", o.f)->required();
  {
    auto* cmd = leaf(om, "member", "Class membership", [&] { return omega_member(o); });
    cmd->add_option("--f", o.f)->required();
    cmd->add_option("--class", o.cls)->required();
    cmd->add_option("--gamma", o.gamma, "List of cardinals for the Gamma classes");
  }
  {
    auto* cmd = leaf(om, "rho", "Block relation for a partition", [&] { return omega_rho(o); });
    cmd->add_option("--f", o.f)->required();
    cmd->add_option("--parts", o.parts)->required();
    cmd->add_option("--astab", o.astab, "A | A_inv | calA");
  }
  leaf(om, "conjugate", "g h g^-1 witness", [&] { return omega_conjugate(o); })->add_option("--f", o.f)->required();
  leaf(om, "factor", "Increasing-decreasing factorization", [&] { return omega_factor(o); })
      ->add_option("--f", o.f)->required();

  auto* pm = group("perm", "Finitary permutations of omega");
  leaf(pm, "factor-locals", "Four local factors", [&] { return perm_factor_locals(o); })->add_option("--p", o.p)->required();
  leaf(pm, "two-involutions", "Two involutions", [&] { return perm_two_involutions(o); })->add_option("--p", o.p)->required();

  leaf(&app, "verify-all", "Run the acceptance suite", [&] { return verify_all(o, o.timing); })
      ->add_option("--level", o.level, "quick | full");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (o.threads > 0) omp_set_num_threads(o.threads);
  const auto start = std::chrono::steady_clock::now();
  try {
    const Report r = action();
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit(r, command_echo(argc, argv), o, seconds);
  } catch (const ResourceError& e) {
    std::cerr << "chartlab: resource cap: " << e.what() << " (partial " << e.partial() << ")\n";
    return kExitResource;
  } catch (const InternalError& e) {
    std::cerr << "chartlab: internal check failed: " << e.what() << '\n';
    return kExitRefuted;
  } catch (const Error& e) {
    std::cerr << "chartlab: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Json::exception& e) {
    std::cerr << "chartlab: " << e.what() << '\n';
    return kExitUsage;
  }
}
