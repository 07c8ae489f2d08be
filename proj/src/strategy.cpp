#include "tabgen/strategy.hpp"

#include <cassert>

namespace tabgen {

bool operator==(const Reading& a, const Reading& b) {
  return a.position == b.position && equal(a.core, b.core);
}

std::vector<Reading> theta_readings(const FormulaPtr& f,
                                    const std::vector<SeparatorPattern>& separators) {
  std::vector<Reading> out;
  out.push_back({0, f});
  for (const auto& sep : separators)
    if (auto core = sep.match(f)) out.push_back({sep.index, *core});
  return out;
}

Reading minimal_reading(const FormulaPtr& f,
                        const std::vector<SeparatorPattern>& separators) {
  std::vector<Reading> readings = theta_readings(f, separators);
  assert(!readings.empty());
  const Reading* best = &readings[0];
  for (const auto& r : readings) {
    int rc = canonical_complexity(r.core);
    int bc = canonical_complexity(best->core);
    if (rc < bc || (rc == bc && r.position > best->position)) best = &r;
  }
  return *best;
}

int node_complexity(const FormulaPtr& f,
                    const std::vector<SeparatorPattern>& separators) {
  return canonical_complexity(minimal_reading(f, separators).core);
}

}  // namespace tabgen
