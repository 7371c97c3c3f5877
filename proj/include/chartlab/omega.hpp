#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chartlab/card.hpp"
#include "chartlab/epset.hpp"

namespace chartlab {

/// {start + k·step : k ≥ 0}
struct Progression {
  Nat start = 0;
  Nat step = 1;

  bool contains(Nat x) const { return x >= start && (x - start) % step == 0; }
  Nat at(Nat k) const { return start + k * step; }
  EPSet as_set() const { return EPSet::progression(start, step); }
  friend auto operator<=>(const Progression&, const Progression&) = default;
};

std::optional<Progression> intersect(const Progression& a, const Progression& b);

/// The order-preserving bijection between two progressions:
/// domain.at(k) ↦ image.at(k).
struct AffineBranch {
  Progression domain;
  Progression image;

  Nat apply(Nat x) const { return image.start + (x - domain.start) / domain.step * image.step; }
  /// x ↦ a·x + b on {start + k·step}.
  static AffineBranch from_affine(Nat start, Nat step, Nat a, Nat b);
  friend auto operator<=>(const AffineBranch&, const AffineBranch&) = default;
};

/// A chart on ω given by finitely many affine branches plus a finite table
/// of exceptional pairs.
class SymbolicChart {
 public:
  using Pair = std::pair<Nat, Nat>;

  SymbolicChart() = default;
  /// Throws RangeError when the pieces overlap or the result is not injective.
  SymbolicChart(std::vector<AffineBranch> branches, std::vector<Pair> exceptions);

  static SymbolicChart identity();
  static SymbolicChart finite(std::vector<Pair> pairs);
  static SymbolicChart affine(Nat start, Nat step, Nat a, Nat b);

  const std::vector<AffineBranch>& branches() const { return branches_; }
  const std::vector<Pair>& exceptions() const { return exceptions_; }

  std::optional<Nat> apply(Nat x) const;
  EPSet domain() const;
  EPSet image() const;
  /// Image of a subset of ω.
  EPSet image_of(const EPSet& a) const;
  /// Finite rank: no branches.
  bool is_finite() const { return branches_.empty(); }

 private:
  std::vector<AffineBranch> branches_;
  std::vector<Pair> exceptions_;
};

/// Left-to-right: x(fg) = (xf)g.
SymbolicChart compose(const SymbolicChart& f, const SymbolicChart& g);
SymbolicChart compose(const SymbolicChart& f, const SymbolicChart& g, const SymbolicChart& h);
SymbolicChart invert(const SymbolicChart& f);
/// Same partial map on ω.
bool equivalent(const SymbolicChart& f, const SymbolicChart& g);

struct OmegaMeasures {
  Card rank;
  Card defect;
  Card collapse;
  friend bool operator==(const OmegaMeasures&, const OmegaMeasures&) = default;
};
OmegaMeasures measures(const SymbolicChart& f);

enum class OmegaClass {
  kS, kSInv, kT, kTInv, kCalS, kCalT,
  kP, kPInv, kQ, kQInv, kCalP, kCalQ, kFinite
};
/// Names: S, S_inv, T, T_inv, calS, calT, P_Gamma, P_Gamma_inv, Q_Gamma,
/// Q_Gamma_inv, calP_Gamma, calQ_Gamma, F_X. Throws ParameterError.
OmegaClass parse_omega_class(const std::string& name);
std::string to_string(OmegaClass c);
bool needs_gamma(OmegaClass c);

/// Throws ParameterError when the class needs Γ and none (or ∅) is given.
bool is_member(const SymbolicChart& f, OmegaClass c,
               const std::optional<std::vector<Nat>>& gamma = std::nullopt);

using IndexRelation = std::set<std::pair<std::size_t, std::size_t>>;

/// Checks that `parts` partition ω into infinite pieces; PreconditionError otherwise.
void check_partition(const std::vector<EPSet>& parts);
/// (i, j) with Σ_i f ∩ Σ_j infinite.
IndexRelation rho(const SymbolicChart& f, const std::vector<EPSet>& parts);

enum class AstabVariant { kA, kAInv, kCalA };
AstabVariant parse_astab_variant(const std::string& name);
bool astab_member(const SymbolicChart& f, const std::vector<EPSet>& parts, AstabVariant v);

struct Factorization {
  SymbolicChart g;
  SymbolicChart h;
};

/// For a finite chart f: g = x ↦ 2x and a permutation h of ω with
/// g·h·g⁻¹ = f. Throws PreconditionError when f has branches.
Factorization conjugation_witness(const SymbolicChart& f);

/// For a finite chart f: g with xg ≥ x and h with yh ≤ y such that g·h = f.
Factorization monotone_factorization(const SymbolicChart& f);
bool is_increasing(const SymbolicChart& f);
bool is_decreasing(const SymbolicChart& f);

struct RandomChartOptions {
  bool total = false;
  bool surjective = false;
  bool finite = false;
  Nat max_modulus = 4;
};
SymbolicChart random_symbolic_chart(std::mt19937_64& rng, const RandomChartOptions& options = {});

}  // namespace chartlab
