#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "onebit/harness.hpp"

namespace onebit::detail {

enum class StatKind {
  Check,        ///< decides the trial verdict
  Discrepancy,  ///< a check whose value also feeds max_discrepancy
  Invariant,    ///< must hold in every trial
  Info,         ///< reported only
};

struct StatDef {
  const char* name;
  StatKind kind;
};

struct ExperimentDef {
  Experiment experiment;
  const char* name;
  int n;
  std::optional<int> s;
  std::size_t net_size;
  std::size_t trials;
  std::size_t inner_trials;
  double min_pass_rate;
  bool needs_delta;
  std::vector<StatDef> stats;
};

const ExperimentDef& definition(Experiment e);

}  // namespace onebit::detail
