#pragma once
// Randomized property suites. Each returns on the first counterexample.

#include <cstdint>
#include <string>

namespace props {

struct Result {
  bool ok = true;
  int cases = 0;
  std::string detail;  // the counterexample when !ok
};

Result canonical_form(std::uint64_t seed, int n);
Result lowest_terms(std::uint64_t seed, int n);
// Every stored value after running the relativity program.
Result lowest_terms_corpus();
Result bignum_laws(std::uint64_t seed, int n);
Result product_rule(std::uint64_t seed, int n);
Result read_print(std::uint64_t seed, int n);
Result compress_explode(std::uint64_t seed, int n);

}  // namespace props
