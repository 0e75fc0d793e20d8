// Builds the 5x6 hole-pattern basis and the two 3x10 partition bases, then
// runs the full verifier on each and prints a one-line summary.

#include <iomanip>
#include <iostream>

#include "umeb/umeb.hpp"

namespace {

void summarize(const char* name, const umeb::BasisSet& basis) {
  const auto report = umeb::verify_umeb(basis, umeb::VerifyConfig{});
  std::cout << std::left << std::setw(12) << name << " d=" << report.d << " d'=" << report.d_prime
            << " members=" << report.member_count << " gram_dev=" << std::scientific << std::setprecision(2)
            << report.orthonormality.deviation << " sigma_dev=" << report.max_entanglement.deviation
            << " oracle=" << report.numeric_oracle_max_sigma_min << " -> " << umeb::to_string(report.verdict)
            << std::defaultfloat << "\n";
}

}  // namespace

int main() {
  using namespace umeb;
  const HolePattern holes(5, 6, {{0, 3}, {1, 1}, {2, 3}, {3, 5}, {4, 3}});
  summarize("holes-5x6", theorem1_construct(holes));
  summarize("parts-4,5", theorem2_construct(PartitionSpec(3, 10, {4, 5})));
  summarize("parts-4,4", theorem2_construct(PartitionSpec(3, 10, {4, 4})));
  summarize("fixture-2x3", fixtures::umeb_2x3());
  return 0;
}
