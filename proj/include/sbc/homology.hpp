#pragma once

#include <Eigen/SparseCore>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbc/builders.hpp"
#include "sbc/smith.hpp"

namespace sbc {

/// Free abelian realization of the thin category of one complex: a rank per
/// class label and an integer matrix per covering arrow (stratum -> face).
/// Missing matrices default to the identity between equal ranks.
struct AbelianRealization {
  std::map<std::string, int> ranks;
  std::map<std::pair<std::string, std::string>, IntMatrix<long long>> matrices;
  bool constant = false;  // every rank 1, every matrix [1]

  static AbelianRealization constant_realization();
};

struct IntegerChainComplex {
  std::vector<int> ranks;
  std::vector<Eigen::SparseMatrix<long long>> d;  // d[n] : ranks[n] -> ranks[n-1]; d[0] has no rows
};

/// Composes realization matrices along complete flags of one complex.
class FlagComposer {
 public:
  FlagComposer(ComplexPtr c, const AbelianRealization& r);

  int rank(int s) const { return ranks_[s]; }
  /// Matrix for b <= a (rank(b) x rank(a)); throws MathError with witness flags on path dependence.
  const IntMatrix<long long>& composed(int a, int b);
  /// Exhaustive path independence check over all comparable pairs.
  ValidationReport check_path_independence();

 private:
  struct Entry {
    IntMatrix<long long> m;
    std::vector<int> flag;
  };
  const Entry& entry(int a, int b, ValidationReport* rep);
  std::string flag_name(const std::vector<int>& f) const;

  ComplexPtr c_;
  const AbelianRealization& r_;
  std::vector<int> ranks_;
  std::vector<std::map<int, IntMatrix<long long>>> cover_;  // cover_[a][c] : F(a) -> F(c)
  std::map<std::pair<int, int>, Entry> memo_;
};

/// Replaces every generator entry by its composed matrix; re-verifies d^2 = 0.
IntegerChainComplex realize(const BuiltComplex& b, const AbelianRealization& r);

struct HomologyGroup {
  long long betti = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  bool operator==(const HomologyGroup&) const = default;
  std::string to_string() const;
};

std::vector<HomologyGroup> homology_groups(const IntegerChainComplex& c);
long long euler_characteristic(const IntegerChainComplex& c);
long long euler_characteristic(const std::vector<HomologyGroup>& h);

/// Homology of the Cech complex under the constant realization.
std::vector<HomologyGroup> dual_complex_homology(ComplexPtr c);

}  // namespace sbc
