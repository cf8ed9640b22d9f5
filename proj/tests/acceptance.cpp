#include "guess/repro.hpp"

#include <cstdlib>
#include <iostream>
#include <thread>

int main() {
  guess::repro::Options opts;
  opts.workers = std::max(1u, std::thread::hardware_concurrency());
  int failed = 0;
  for (const auto& c : guess::repro::criteria()) {
    const auto r = guess::repro::run_one(c, opts);
    std::cout << guess::repro::summary_line(r) << std::endl;
    if (!r.passed) ++failed;
  }
  std::cout << (failed ? "acceptance: " + std::to_string(failed) + " failed" : std::string("acceptance: all passed"))
            << std::endl;
  return failed ? EXIT_FAILURE : EXIT_SUCCESS;
}
