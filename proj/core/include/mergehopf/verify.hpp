#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mergehopf/dyson_schwinger.hpp"

namespace mergehopf {

// One verification run.  `cases` counts the instances exercised; `detail`
// carries either a short summary or the first counterexample.
struct CheckReport {
  std::string name;
  bool pass = false;
  long long cases = 0;
  double seconds = 0.0;
  std::string detail;
};

struct VerifyOptions {
  // coassociativity / compatibility envelope
  int coassoc_max_leaves = 7;
  int coassoc_alphabet = 2;
  int coassoc_random_samples = 200;
  int coassoc_random_max_leaves = 12;
  // antipode envelope
  int antipode_max_leaves = 6;
  int antipode_alphabet = 2;
  // merge-case tables envelope
  int tables_max_vertices = 8;
  int tables_alphabet = 3;
  // fixed-point recursion depths
  int ds_mass_grade = 12;
  int ds_coeff_grade = 10;
  // counting sweeps
  int counting_k_max = 6;
  // externalization sampling
  int external_samples = 200;
  std::uint64_t seed = 1;
};

CheckReport verify_coassoc(const VerifyOptions& opt = {});
CheckReport verify_compat(const VerifyOptions& opt = {});
CheckReport verify_antipode(const VerifyOptions& opt = {});
CheckReport verify_tables(const VerifyOptions& opt = {});
CheckReport verify_constraints(const VerifyOptions& opt = {});
CheckReport verify_minimal_search(const VerifyOptions& opt = {});
CheckReport verify_ds(const VerifyOptions& opt = {});
CheckReport verify_catalan(const VerifyOptions& opt = {});
CheckReport verify_overgen(const VerifyOptions& opt = {});
CheckReport verify_external(const VerifyOptions& opt = {});

// The whole battery, in criterion order.
std::vector<CheckReport> verify_all(const VerifyOptions& opt = {});

// Cocycle diagnostics for both coproduct conventions on a small stock of
// inputs; informational, reported but never asserted.
std::string cocycle_diagnostic();

}  // namespace mergehopf
