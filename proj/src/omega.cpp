#include "chartlab/omega.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "chartlab/error.hpp"

namespace chartlab {

namespace {

// Inverse of a modulo m, for gcd(a, m) = 1.
Nat mod_inverse(Nat a, Nat m) {
  Nat g = m, x = 0, x1 = 1, r = a % m;
  while (r != 0) {
    const Nat q = g / r;
    std::tie(g, r) = std::make_pair(r, g - q * r);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  return ((x % m) + m) % m;
}

void check_step(Nat step) {
  if (step > kPeriodCap)
    throw ResourceError("progression step " + std::to_string(step) + " exceeds cap " +
                        std::to_string(kPeriodCap));
}

// {k ≥ 0 : p.at(k) ∈ a}
EPSet index_set(const EPSet& a, const Progression& p) {
  const Nat period = a.period() / std::gcd(p.step, a.period());
  const Nat threshold =
      a.threshold() <= p.start ? 0 : (a.threshold() - p.start + p.step - 1) / p.step;
  std::vector<Nat> low, residues;
  for (Nat k = 0; k < threshold; ++k)
    if (a.contains(p.at(k))) low.push_back(k);
  for (Nat k = threshold; k < threshold + period; ++k)
    if (a.contains(p.at(k))) residues.push_back(k % period);
  return EPSet(threshold, period, std::move(residues), std::move(low));
}

// {p.at(k) : k ∈ indices}
EPSet progression_image(const EPSet& indices, const Progression& p) {
  check_step(indices.period() * p.step);
  const Nat period = indices.period() * p.step;
  const Nat threshold = p.at(indices.threshold());
  std::vector<Nat> low, residues;
  for (Nat k : indices.low()) low.push_back(p.at(k));
  for (Nat r : indices.residues()) residues.push_back((p.start + r * p.step) % period);
  return EPSet(threshold, period, std::move(residues), std::move(low));
}

Nat index_in(const Progression& p, Nat x) { return (x - p.start) / p.step; }

}  // namespace

std::optional<Progression> intersect(const Progression& a, const Progression& b) {
  const Nat g = std::gcd(a.step, b.step);
  const Nat diff = b.start - a.start;
  if (diff % g != 0) return std::nullopt;
  const Nat l = capped_lcm(a.step, b.step);
  const Nat n = b.step / g;
  Nat t = 0;
  if (n > 1) {
    const Nat rhs = ((diff / g) % n + n) % n;
    t = static_cast<Nat>(static_cast<__int128>(rhs) * mod_inverse((a.step / g) % n, n) % n);
  }
  Nat x = (a.start + a.step * t) % l;
  const Nat lo = std::max(a.start, b.start);
  if (x < lo) x += (lo - x + l - 1) / l * l;
  return Progression{x, l};
}

AffineBranch AffineBranch::from_affine(Nat start, Nat step, Nat a, Nat b) {
  if (start < 0 || step < 1 || a < 1) throw RangeError("invalid affine branch");
  if (a * start + b < 0) throw RangeError("affine branch maps below zero");
  check_step(step);
  check_step(a * step);
  return AffineBranch{{start, step}, {a * start + b, a * step}};
}

SymbolicChart::SymbolicChart(std::vector<AffineBranch> branches, std::vector<Pair> exceptions)
    : branches_(std::move(branches)), exceptions_(std::move(exceptions)) {
  for (const auto& b : branches_) {
    if (b.domain.start < 0 || b.image.start < 0 || b.domain.step < 1 || b.image.step < 1)
      throw RangeError("invalid branch progression");
    check_step(b.domain.step);
    check_step(b.image.step);
  }
  for (const auto& [x, y] : exceptions_)
    if (x < 0 || y < 0) throw RangeError("negative exception point");

  // Absorb exceptions that extend a branch one step downwards.
  for (bool grew = true; grew;) {
    grew = false;
    for (auto& b : branches_) {
      const Nat x = b.domain.start - b.domain.step, y = b.image.start - b.image.step;
      if (x < 0 || y < 0) continue;
      auto it = std::find(exceptions_.begin(), exceptions_.end(), Pair{x, y});
      if (it == exceptions_.end()) continue;
      exceptions_.erase(it);
      b.domain.start = x;
      b.image.start = y;
      grew = true;
    }
  }
  std::sort(branches_.begin(), branches_.end());
  std::sort(exceptions_.begin(), exceptions_.end());

  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      if (intersect(branches_[i].domain, branches_[j].domain))
        throw RangeError("branch domains overlap");
      if (intersect(branches_[i].image, branches_[j].image))
        throw RangeError("branch images overlap");
    }
  }
  std::vector<Nat> ys;
  for (std::size_t i = 0; i < exceptions_.size(); ++i) {
    const auto [x, y] = exceptions_[i];
    if (i > 0 && exceptions_[i - 1].first == x)
      throw RangeError("point " + std::to_string(x) + " has two images");
    ys.push_back(y);
    for (const auto& b : branches_) {
      if (b.domain.contains(x))
        throw RangeError("exception point " + std::to_string(x) + " lies in a branch domain");
      if (b.image.contains(y))
        throw RangeError("exception image " + std::to_string(y) + " lies in a branch image");
    }
  }
  std::sort(ys.begin(), ys.end());
  if (std::adjacent_find(ys.begin(), ys.end()) != ys.end())
    throw RangeError("exception images are not distinct");
}

SymbolicChart SymbolicChart::identity() { return affine(0, 1, 1, 0); }

SymbolicChart SymbolicChart::finite(std::vector<Pair> pairs) { return SymbolicChart({}, std::move(pairs)); }

SymbolicChart SymbolicChart::affine(Nat start, Nat step, Nat a, Nat b) {
  return SymbolicChart({AffineBranch::from_affine(start, step, a, b)}, {});
}

std::optional<Nat> SymbolicChart::apply(Nat x) const {
  auto it = std::lower_bound(exceptions_.begin(), exceptions_.end(), Pair{x, -1});
  if (it != exceptions_.end() && it->first == x) return it->second;
  for (const auto& b : branches_)
    if (b.domain.contains(x)) return b.apply(x);
  return std::nullopt;
}

EPSet SymbolicChart::domain() const {
  std::vector<Nat> points;
  for (const auto& e : exceptions_) points.push_back(e.first);
  EPSet out = EPSet::finite(points);
  for (const auto& b : branches_) out = out.unite(b.domain.as_set());
  return out;
}

EPSet SymbolicChart::image() const {
  std::vector<Nat> points;
  for (const auto& e : exceptions_) points.push_back(e.second);
  EPSet out = EPSet::finite(points);
  for (const auto& b : branches_) out = out.unite(b.image.as_set());
  return out;
}

EPSet SymbolicChart::image_of(const EPSet& a) const {
  std::vector<Nat> points;
  for (const auto& [x, y] : exceptions_)
    if (a.contains(x)) points.push_back(y);
  EPSet out = EPSet::finite(points);
  for (const auto& b : branches_)
    out = out.unite(progression_image(index_set(a, b.domain), b.image));
  return out;
}

SymbolicChart compose(const SymbolicChart& f, const SymbolicChart& g) {
  std::vector<AffineBranch> branches;
  std::vector<SymbolicChart::Pair> exceptions;
  for (const auto& b : f.branches()) {
    for (const auto& c : g.branches()) {
      const auto meet = intersect(b.image, c.domain);
      if (!meet) continue;
      const Nat k = index_in(b.image, meet->start);
      const Nat stride = meet->step / b.image.step;
      const Nat k2 = index_in(c.domain, meet->start);
      const Nat stride2 = meet->step / c.domain.step;
      check_step(stride * b.domain.step);
      check_step(stride2 * c.image.step);
      branches.push_back({{b.domain.at(k), stride * b.domain.step},
                          {c.image.at(k2), stride2 * c.image.step}});
    }
    for (const auto& [y, z] : g.exceptions())
      if (b.image.contains(y)) exceptions.emplace_back(b.domain.at(index_in(b.image, y)), z);
  }
  for (const auto& [x, y] : f.exceptions())
    if (auto z = g.apply(y)) exceptions.emplace_back(x, *z);
  return SymbolicChart(std::move(branches), std::move(exceptions));
}

SymbolicChart compose(const SymbolicChart& f, const SymbolicChart& g, const SymbolicChart& h) {
  return compose(compose(f, g), h);
}

SymbolicChart invert(const SymbolicChart& f) {
  std::vector<AffineBranch> branches;
  for (const auto& b : f.branches()) branches.push_back({b.image, b.domain});
  std::vector<SymbolicChart::Pair> exceptions;
  for (const auto& [x, y] : f.exceptions()) exceptions.emplace_back(y, x);
  return SymbolicChart(std::move(branches), std::move(exceptions));
}

bool equivalent(const SymbolicChart& f, const SymbolicChart& g) {
  // Past every start and exception, each residue class mod the common step
  // lies in one branch of each chart, where both maps are affine; two sample
  // points per class then decide equality.
  Nat top = 0, modulus = 1;
  for (const SymbolicChart* c : {&f, &g}) {
    for (const auto& b : c->branches()) {
      top = std::max(top, b.domain.start + 1);
      modulus = capped_lcm(modulus, b.domain.step);
    }
    for (const auto& e : c->exceptions()) top = std::max(top, e.first + 1);
  }
  for (Nat x = 0; x < top + 2 * modulus; ++x)
    if (f.apply(x) != g.apply(x)) return false;
  return true;
}

OmegaMeasures measures(const SymbolicChart& f) {
  const EPSet dom = f.domain();
  return {dom.cardinality(), f.image().complement().cardinality(),
          dom.complement().cardinality()};
}

namespace {

const std::vector<std::pair<OmegaClass, std::string>>& class_names() {
  static const std::vector<std::pair<OmegaClass, std::string>> names = {
      {OmegaClass::kS, "S"},
      {OmegaClass::kSInv, "S_inv"},
      {OmegaClass::kT, "T"},
      {OmegaClass::kTInv, "T_inv"},
      {OmegaClass::kCalS, "calS"},
      {OmegaClass::kCalT, "calT"},
      {OmegaClass::kP, "P_Gamma"},
      {OmegaClass::kPInv, "P_Gamma_inv"},
      {OmegaClass::kQ, "Q_Gamma"},
      {OmegaClass::kQInv, "Q_Gamma_inv"},
      {OmegaClass::kCalP, "calP_Gamma"},
      {OmegaClass::kCalQ, "calQ_Gamma"},
      {OmegaClass::kFinite, "F_X"},
  };
  return names;
}

bool subset_of_domain(const SymbolicChart& f, const std::vector<Nat>& gamma) {
  return std::all_of(gamma.begin(), gamma.end(), [&](Nat x) { return f.apply(x).has_value(); });
}

bool subset_of_image(const SymbolicChart& f, const std::vector<Nat>& gamma) {
  const EPSet im = f.image();
  return std::all_of(gamma.begin(), gamma.end(), [&](Nat x) { return im.contains(x); });
}

// Γf = Γ
bool fixes_setwise(const SymbolicChart& f, const std::vector<Nat>& gamma) {
  if (!subset_of_domain(f, gamma)) return false;
  std::vector<Nat> image;
  for (Nat x : gamma) image.push_back(*f.apply(x));
  std::sort(image.begin(), image.end());
  std::vector<Nat> sorted = gamma;
  std::sort(sorted.begin(), sorted.end());
  return image == sorted;
}

}  // namespace

OmegaClass parse_omega_class(const std::string& name) {
  for (const auto& [c, n] : class_names())
    if (n == name) return c;
  throw ParameterError("unknown class '" + name + "'");
}

std::string to_string(OmegaClass c) {
  for (const auto& [k, n] : class_names())
    if (k == c) return n;
  return "?";
}

bool needs_gamma(OmegaClass c) {
  switch (c) {
    case OmegaClass::kP:
    case OmegaClass::kPInv:
    case OmegaClass::kQ:
    case OmegaClass::kQInv:
    case OmegaClass::kCalP:
    case OmegaClass::kCalQ:
      return true;
    default:
      return false;
  }
}

bool is_member(const SymbolicChart& f, OmegaClass c, const std::optional<std::vector<Nat>>& gamma) {
  std::vector<Nat> g;
  if (needs_gamma(c)) {
    if (!gamma || gamma->empty())
      throw ParameterError("class " + to_string(c) + " needs a non-empty set Gamma");
    g = *gamma;
    for (Nat x : g)
      if (x < 0) throw ParameterError("Gamma must consist of natural numbers");
  }
  const OmegaMeasures m = measures(f);
  const Card collapse = m.collapse, defect = m.defect;
  const Card zero = 0, aleph0 = Card::omega();
  switch (c) {
    case OmegaClass::kS:
      return collapse > zero || defect == zero;
    case OmegaClass::kSInv:
      return collapse == zero || defect > zero;
    case OmegaClass::kT:
      return collapse == aleph0 || defect < aleph0;
    case OmegaClass::kTInv:
      return collapse < aleph0 || defect == aleph0;
    case OmegaClass::kCalS:
      return is_member(f, OmegaClass::kS) && is_member(f, OmegaClass::kSInv);
    case OmegaClass::kCalT:
      return is_member(f, OmegaClass::kT) && is_member(f, OmegaClass::kTInv);
    case OmegaClass::kP:
      return f.is_finite() || !subset_of_domain(f, g) || fixes_setwise(f, g);
    case OmegaClass::kPInv:
      return f.is_finite() || !subset_of_image(f, g) || fixes_setwise(f, g);
    case OmegaClass::kQ:
      return !subset_of_domain(f, g) || (fixes_setwise(f, g) && defect < aleph0) ||
             collapse == aleph0;
    case OmegaClass::kQInv:
      return !subset_of_image(f, g) || (fixes_setwise(f, g) && collapse < aleph0) ||
             defect == aleph0;
    case OmegaClass::kCalP:
      return is_member(f, OmegaClass::kP, g) && is_member(f, OmegaClass::kPInv, g);
    case OmegaClass::kCalQ:
      return is_member(f, OmegaClass::kQ, g) && is_member(f, OmegaClass::kQInv, g);
    case OmegaClass::kFinite:
      return f.is_finite();
  }
  return false;
}

void check_partition(const std::vector<EPSet>& parts) {
  if (parts.empty()) throw PreconditionError("partition has no parts");
  EPSet covered;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i].is_finite())
      throw PreconditionError("part " + std::to_string(i) + " is finite");
    if (!covered.intersect(parts[i]).is_empty())
      throw PreconditionError("part " + std::to_string(i) + " overlaps an earlier part");
    covered = covered.unite(parts[i]);
  }
  if (!(covered == EPSet::all()))
    throw PreconditionError("parts do not cover omega; first missing point " +
                            std::to_string(*covered.complement().min()));
}

IndexRelation rho(const SymbolicChart& f, const std::vector<EPSet>& parts) {
  check_partition(parts);
  IndexRelation out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const EPSet moved = f.image_of(parts[i]);
    for (std::size_t j = 0; j < parts.size(); ++j)
      if (moved.intersect(parts[j]).cardinality().is_infinite()) out.emplace(i, j);
  }
  return out;
}

AstabVariant parse_astab_variant(const std::string& name) {
  if (name == "A") return AstabVariant::kA;
  if (name == "A_inv") return AstabVariant::kAInv;
  if (name == "calA") return AstabVariant::kCalA;
  throw ParameterError("unknown variant '" + name + "'");
}

bool astab_member(const SymbolicChart& f, const std::vector<EPSet>& parts, AstabVariant v) {
  const IndexRelation r = rho(f, parts);
  const std::size_t n = parts.size();
  std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
  for (auto [i, j] : r) {
    ++out_deg[i];
    ++in_deg[j];
  }
  const bool permutation = std::all_of(out_deg.begin(), out_deg.end(), [](auto d) { return d == 1; }) &&
                           std::all_of(in_deg.begin(), in_deg.end(), [](auto d) { return d == 1; });
  const bool full_domain = std::all_of(out_deg.begin(), out_deg.end(), [](auto d) { return d > 0; });
  const bool full_image = std::all_of(in_deg.begin(), in_deg.end(), [](auto d) { return d > 0; });
  const bool a = permutation || !full_domain;
  const bool a_inv = permutation || !full_image;
  switch (v) {
    case AstabVariant::kA:
      return a;
    case AstabVariant::kAInv:
      return a_inv;
    case AstabVariant::kCalA:
      return a && a_inv;
  }
  return false;
}

Factorization conjugation_witness(const SymbolicChart& f) {
  if (!f.is_finite()) throw PreconditionError("conjugation witness needs a finite chart");
  std::vector<Nat> dom, im;
  for (const auto& [x, y] : f.exceptions()) {
    dom.push_back(x);
    im.push_back(y);
  }
  std::sort(dom.begin(), dom.end());
  std::sort(im.begin(), im.end());
  Nat top = 0;
  for (Nat x : dom) top = std::max(top, x + 1);
  for (Nat y : im) top = std::max(top, y + 1);
  const Nat size = static_cast<Nat>(dom.size());

  std::vector<SymbolicChart::Pair> pairs;
  for (const auto& [x, y] : f.exceptions()) pairs.emplace_back(2 * x, 2 * y);
  // Evens off the doubled domain go to the odds in order.
  Nat next = 0;
  for (Nat y = 0; y < top; ++y)
    if (!std::binary_search(dom.begin(), dom.end(), y)) pairs.emplace_back(2 * y, 2 * next++ + 1);
  // Odds go to the doubles of the points missed by im f, in order.
  Nat k = 0;
  for (Nat z = 0; z < top; ++z)
    if (!std::binary_search(im.begin(), im.end(), z)) pairs.emplace_back(2 * k++ + 1, 2 * z);
  std::vector<AffineBranch> branches = {
      {{2 * top, 2}, {2 * (top - size) + 1, 2}},
      {{2 * (top - size) + 1, 2}, {2 * top, 2}},
  };
  Factorization out{SymbolicChart::affine(0, 1, 2, 0), SymbolicChart(branches, pairs)};

  const OmegaMeasures hm = measures(out.h);
  if (hm.collapse != Card(0) || hm.defect != Card(0))
    throw InternalError("conjugating chart is not a permutation");
  if (!equivalent(compose(out.g, out.h, invert(out.g)), f))
    throw InternalError("conjugation witness does not reproduce the chart");
  return out;
}

bool is_increasing(const SymbolicChart& f) {
  for (const auto& b : f.branches())
    if (b.image.start < b.domain.start || b.image.step < b.domain.step) return false;
  return std::all_of(f.exceptions().begin(), f.exceptions().end(),
                     [](const auto& e) { return e.second >= e.first; });
}

bool is_decreasing(const SymbolicChart& f) {
  for (const auto& b : f.branches())
    if (b.image.start > b.domain.start || b.image.step > b.domain.step) return false;
  return std::all_of(f.exceptions().begin(), f.exceptions().end(),
                     [](const auto& e) { return e.second <= e.first; });
}

Factorization monotone_factorization(const SymbolicChart& f) {
  if (!f.is_finite()) throw PreconditionError("monotone factorization needs a finite chart");
  Nat top = 0;
  for (const auto& [x, y] : f.exceptions()) top = std::max({top, x + 1, y + 1});
  std::vector<SymbolicChart::Pair> up, down;
  Nat i = 0;
  for (const auto& [x, y] : f.exceptions()) {
    up.emplace_back(x, top + i);
    down.emplace_back(top + i, y);
    ++i;
  }
  Factorization out{SymbolicChart::finite(up), SymbolicChart::finite(down)};
  if (!is_increasing(out.g) || !is_decreasing(out.h) || !equivalent(compose(out.g, out.h), f))
    throw InternalError("monotone factorization failed its self-check");
  return out;
}

SymbolicChart random_symbolic_chart(std::mt19937_64& rng, const RandomChartOptions& options) {
  auto uniform = [&](Nat lo, Nat hi) { return std::uniform_int_distribution<Nat>(lo, hi)(rng); };
  const bool finite =
      options.finite || (!options.total && !options.surjective && uniform(0, 7) == 0);
  if (finite) {
    std::vector<Nat> xs(20), ys(20);
    std::iota(xs.begin(), xs.end(), 0);
    std::iota(ys.begin(), ys.end(), 0);
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<SymbolicChart::Pair> pairs;
    const Nat count = uniform(0, 6);
    for (Nat i = 0; i < count; ++i) pairs.emplace_back(xs[i], ys[i]);
    return SymbolicChart::finite(pairs);
  }

  Nat md = uniform(1, options.max_modulus), mi = uniform(1, options.max_modulus);
  Nat k;
  if (options.total && options.surjective) {
    mi = md;
    k = md;
  } else if (options.total) {
    mi = std::max(mi, md);
    k = md;
  } else if (options.surjective) {
    md = std::max(md, mi);
    k = mi;
  } else {
    k = uniform(1, std::min(md, mi));
  }
  std::vector<Nat> dres(static_cast<std::size_t>(md)), ires(static_cast<std::size_t>(mi));
  std::iota(dres.begin(), dres.end(), 0);
  std::iota(ires.begin(), ires.end(), 0);
  std::shuffle(dres.begin(), dres.end(), rng);
  std::shuffle(ires.begin(), ires.end(), rng);

  std::vector<Nat> doff(static_cast<std::size_t>(k)), ioff(static_cast<std::size_t>(k));
  for (auto& o : doff) o = uniform(0, 2);
  if (options.total && options.surjective) {
    ioff = doff;
    std::shuffle(ioff.begin(), ioff.end(), rng);
  } else {
    for (auto& o : ioff) o = uniform(0, 2);
  }
  const Nat dsum = std::accumulate(doff.begin(), doff.end(), Nat{0});
  const Nat isum = std::accumulate(ioff.begin(), ioff.end(), Nat{0});
  if (options.total && isum < dsum) ioff[0] += dsum - isum;
  if (options.surjective && dsum < isum) doff[0] += isum - dsum;

  std::vector<AffineBranch> branches;
  std::vector<Nat> dmiss, imiss;
  for (std::size_t j = 0; j < static_cast<std::size_t>(k); ++j) {
    branches.push_back({{dres[j] + md * doff[j], md}, {ires[j] + mi * ioff[j], mi}});
    for (Nat o = 0; o < doff[j]; ++o) dmiss.push_back(dres[j] + md * o);
    for (Nat o = 0; o < ioff[j]; ++o) imiss.push_back(ires[j] + mi * o);
  }
  std::shuffle(dmiss.begin(), dmiss.end(), rng);
  std::shuffle(imiss.begin(), imiss.end(), rng);
  const Nat most = static_cast<Nat>(std::min(dmiss.size(), imiss.size()));
  const Nat count = options.total        ? static_cast<Nat>(dmiss.size())
                    : options.surjective ? static_cast<Nat>(imiss.size())
                                         : uniform(0, most);
  std::vector<SymbolicChart::Pair> pairs;
  for (Nat i = 0; i < count; ++i)
    pairs.emplace_back(dmiss[static_cast<std::size_t>(i)], imiss[static_cast<std::size_t>(i)]);
  return SymbolicChart(branches, pairs);
}

}  // namespace chartlab
