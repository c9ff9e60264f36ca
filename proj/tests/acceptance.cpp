// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fail.
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

#include "kit/criteria.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 1973;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (auto& c : criteria::all(seed)) {
    criteria::Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.ok) ++failed;
    std::printf("%s %d. %s: %s\n", o.ok ? "PASS" : "FAIL", c.number, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
