// Acceptance suite: one line per criterion, nonzero exit on any failure.
#include <cstring>
#include <iostream>
#include <string>

#include "airylab/verify.hpp"

int main(int argc, char** argv) {
  airylab::Suite suite = airylab::Suite::Full;
  int workers = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--suite") == 0 && i + 1 < argc) {
      std::string v = argv[++i];
      if (v == "small")
        suite = airylab::Suite::Small;
      else if (v == "full")
        suite = airylab::Suite::Full;
      else {
        std::cerr << "unknown suite: " << v << "\n";
        return 2;
      }
    } else if (std::strcmp(argv[i], "--workers") == 0 && i + 1 < argc) {
      workers = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--suite small|full] [--workers N]\n";
      return 2;
    }
  }
  auto results = airylab::run_acceptance(suite, workers, &std::cout);
  int failed = 0;
  for (const auto& r : results)
    if (!r.pass) ++failed;
  std::cout << (failed == 0 ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << " (" << failed
            << " of " << results.size() << " failing)\n";
  return failed == 0 ? 0 : 1;
}
