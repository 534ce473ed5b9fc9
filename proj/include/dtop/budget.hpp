#pragma once

#include <cstdint>

namespace dtop {

/// Enumeration budget for brute-force routines (cocycle tables, automorphism
/// search, map realization). Default 10^6 table entries; the DTOP_BUDGET
/// environment variable overrides the default at first use.
std::uint64_t enumeration_budget();
void set_enumeration_budget(std::uint64_t budget);

/// RAII override, mostly for tests.
class ScopedBudget {
 public:
  explicit ScopedBudget(std::uint64_t budget) : saved_(enumeration_budget()) {
    set_enumeration_budget(budget);
  }
  ~ScopedBudget() { set_enumeration_budget(saved_); }
  ScopedBudget(const ScopedBudget&) = delete;
  ScopedBudget& operator=(const ScopedBudget&) = delete;

 private:
  std::uint64_t saved_;
};

}  // namespace dtop
