#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "chartlab/chart.hpp"
#include "chartlab/engine.hpp"

namespace chartlab::acceptance {

/// quick trims sizes and sample counts; full runs every criterion as stated.
enum class Level { kQuick, kFull };

inline constexpr std::uint64_t kDefaultSeed = 20240611;

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<VerificationCheck> checks;
  double seconds = 0;
  double limit_seconds = 0;  // 0: no time limit
  /// Set when a resource cap stopped the criterion.
  std::optional<std::string> resource_error;

  bool within_time() const { return limit_seconds == 0 || seconds < limit_seconds; }
  bool passed() const;
};

using Criterion = std::function<CriterionResult(Level, std::uint64_t seed)>;

CriterionResult symmetric_inverse_monoid_orders(Level level, std::uint64_t seed);
CriterionResult finite_maximal_subsemigroups(Level level, std::uint64_t seed);
CriterionResult defect_laws(Level level, std::uint64_t seed);
CriterionResult relational_structures(Level level, std::uint64_t seed);
CriterionResult tree_classes(Level level, std::uint64_t seed);
CriterionResult path_semigroups(Level level, std::uint64_t seed);
CriterionResult omega_calculus(Level level, std::uint64_t seed);
CriterionResult permutation_factorizations(Level level, std::uint64_t seed);
CriterionResult wagner_preston_representation(Level level, std::uint64_t seed);

/// Criteria 1..9 in order.
const std::vector<Criterion>& criteria();
std::vector<CriterionResult> run_all(Level level, std::uint64_t seed = kDefaultSeed);

/// First violated item of the finite defect laws for (f, g), if any.
std::optional<std::string> finite_defect_violation(const Chart& f, const Chart& g);

}  // namespace chartlab::acceptance
