#include "dtop/budget.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace dtop {

namespace {

std::uint64_t initial_budget() {
  if (const char* env = std::getenv("DTOP_BUDGET")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size() && v > 0) return v;
    } catch (...) {
    }
  }
  return 1'000'000;
}

std::atomic<std::uint64_t>& budget_slot() {
  static std::atomic<std::uint64_t> slot{initial_budget()};
  return slot;
}

}  // namespace

std::uint64_t enumeration_budget() { return budget_slot().load(); }
void set_enumeration_budget(std::uint64_t budget) { budget_slot().store(budget); }

}  // namespace dtop
