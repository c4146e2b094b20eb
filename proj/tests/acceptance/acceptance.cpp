// Runs the acceptance criteria at full fidelity and prints one PASS/FAIL line
// per criterion. With a name argument only that criterion runs.

#include <iostream>
#include <string>

#include "ffq/cli.hpp"

int main(int argc, char** argv) {
  using namespace ffq::cli;
  const std::string only = argc > 1 ? argv[1] : "";
  bool any = false;
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (!only.empty() && only != c.name && only != std::to_string(c.id)) continue;
    any = true;
    const CheckResult r = run_criterion(c, Tier::full);
    std::cout << r.summary() << "\n";
    if (!r.detail.empty()) std::cout << "  " << r.detail << "\n";
    all_pass = all_pass && r.pass();
  }
  if (!any) {
    std::cerr << "unknown criterion: " << only << "\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
