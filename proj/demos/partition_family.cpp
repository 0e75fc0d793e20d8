// Lists every partition family for a given (d, d') and verifies each basis.

#include <cstdlib>
#include <iostream>

#include "umeb/cli.hpp"
#include "umeb/umeb.hpp"

int main(int argc, char** argv) {
  const std::size_t d = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const std::size_t dp = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 10;
  try {
    for (const auto& spec : umeb::enumerate_partitions(d, dp)) {
      const auto report = umeb::verify_umeb(umeb::theorem2_construct(spec), umeb::VerifyConfig{});
      std::cout << umeb::cli::describe(spec) << " members=" << report.member_count << " "
                << umeb::to_string(report.verdict) << "\n";
    }
  } catch (const umeb::InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
