#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fadiff {

struct PropertyCheck {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

// Result of a certification sweep over operator invariants. Serializable as
// plain text and CSV (check name, residual, tolerance, pass/fail).
struct PropertyReport {
  std::vector<PropertyCheck> checks;

  void add(std::string name, double residual, double tolerance) {
    checks.push_back({std::move(name), residual, tolerance,
                      residual <= tolerance});
  }

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }

  const PropertyCheck* first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return &c;
    return nullptr;
  }

  void write_text(std::ostream& os) const;
  void write_csv(std::ostream& os) const;
};

}  // namespace fadiff
