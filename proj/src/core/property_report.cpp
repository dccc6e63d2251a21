#include "property_report.hpp"

#include <iomanip>

namespace fadiff {

void PropertyReport::write_text(std::ostream& os) const {
  for (const auto& c : checks) {
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name
       << "  residual=" << std::scientific << std::setprecision(3)
       << c.residual << "  tol=" << c.tolerance << "\n";
  }
}

void PropertyReport::write_csv(std::ostream& os) const {
  os << "check,residual,tolerance,pass\n";
  for (const auto& c : checks) {
    os << c.name << "," << std::scientific << std::setprecision(16)
       << c.residual << "," << c.tolerance << "," << (c.pass ? 1 : 0) << "\n";
  }
}

}  // namespace fadiff
