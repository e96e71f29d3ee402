#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "sbc/random.hpp"
#include "sbc/report.hpp"
#include "sbc/strata.hpp"

namespace sbc {

/// d^2 = 0 on Sd and Cech, bounded and extended.
ValidationReport check_complex_terms(ComplexPtr c);
/// lambda∘sd = id, lambda+ and sd+ chain maps, dh + hd = id - sd+∘lambda+ and the sign identities.
ValidationReport check_cech_comparison(ComplexPtr c, bool with_parts = true);
/// Inclusion, projection and the homotopy of the degenerate splitting.
ValidationReport check_degeneracy_splitting(ComplexPtr c);
/// Star subdivision at every stratum: closed form, inverse, homotopy.
ValidationReport check_star_all(ComplexPtr c);
/// Phi is an isomorphism and Phi∘lambda = Sd(f).
ValidationReport check_barycentric(ComplexPtr c);
/// Blowups at every stratum: default profile, center profile against star, no-stratum isomorphism.
ValidationReport check_blowup_all(ComplexPtr c);
/// Cech and Sd classes agree with the volume formula and survive every subdivision.
ValidationReport check_k0(ComplexPtr c);
/// Dual complex homology is unchanged by one barycentric, star and blowup subdivision.
ValidationReport check_homology_invariance(ComplexPtr c);

struct CheckResult {
  std::string name;
  ValidationReport report;
  double seconds = 0;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool ok() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

/// suite: complex, maps, homotopies, k0, homology or full. InputError for other names.
SuiteReport run_suite(ComplexPtr c, const std::string& suite);
SuiteReport run_random_suite(const std::string& suite, std::uint64_t seed, int cases,
                             const RandomComplexOptions& opt = {});

}  // namespace sbc
