#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sbc/chain.hpp"
#include "sbc/strata.hpp"

namespace sbc {

struct VectorHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
    return h;
  }
};

enum class ComplexKind { Subdivision, Cech };

struct BuildMode {
  bool extended = false;
  int bound = -1;  // extended only; -1 means max codim + 2

  static BuildMode bounded() { return {}; }
  static BuildMode extended_to(int n = -1) { return {true, n}; }
};

struct CellIndex {
  std::vector<std::vector<std::vector<int>>> cells;
  std::vector<std::unordered_map<std::vector<int>, int, VectorHash>> lookup;
};

/// A chain complex together with the cells labelling its summands.
/// Subdivision cells are chains of strata; Cech cells are {base, word...}.
struct BuiltComplex {
  ComplexKind kind = ComplexKind::Cech;
  bool extended = false;
  ComplexPtr complex;
  std::uint32_t space = 0;
  ChainComplexPtr chain;
  std::shared_ptr<const CellIndex> index;

  int top() const { return chain->top(); }
  const std::vector<std::vector<int>>& cells(int degree) const { return index->cells[degree]; }
  int rank(int degree) const;
  /// -1 when absent.
  int index_of(int degree, const std::vector<int>& key) const;
  std::string cell_name(int degree, int index) const;
};

using BuiltPtr = std::shared_ptr<const BuiltComplex>;

int default_bound(const StratifiedComplex& c);

BuiltPtr build_sd(TablePtr table, std::uint32_t space, BuildMode mode);
BuiltPtr build_cech(TablePtr table, std::uint32_t space, BuildMode mode);

/// Same construction over a fresh single-complex table.
BuiltPtr build_sd(ComplexPtr c, BuildMode mode);
BuiltPtr build_cech(ComplexPtr c, BuildMode mode);

struct DegeneracySplitting {
  BuiltPtr bounded, extended;
  ChainMap iota, pi;
  ChainHomotopy homotopy;  // between id and iota∘pi on the extended complex
};

/// Nondegenerate inclusion, projection, and the homotopy id ~ iota∘pi.
DegeneracySplitting degeneracy_splitting(BuiltPtr extended);

/// Lambda from a subdivision complex to a Cech complex of the same kind
/// (bounded: lambda; extended: lambda+).
ChainMap build_last_vertex(BuiltPtr sd, BuiltPtr cech);
/// sd from a Cech complex to a subdivision complex (bounded: sd; extended: sd+).
ChainMap build_subdivision_map(BuiltPtr cech, BuiltPtr sd);

/// Parts of dh + hd on each degree of Sd+, by the indices (i, j) of the sums.
struct HomotopyParts {
  std::vector<Morphism> A, B, C, D, UD, LD, LT, UT;
};

struct ComparisonHomotopy {
  ChainHomotopy homotopy;  // between id and sd+∘lambda+
  HomotopyParts parts;
};

/// h on Sd+ with dh + hd = id - sd+∘lambda+; sd_lambda must be sd+∘lambda+.
ComparisonHomotopy build_comparison_homotopy(BuiltPtr sd_extended, const ChainMap& sd_lambda,
                                             bool with_parts = true);
/// A = id, B = -sd+∘lambda+, C = 0, D + UT = 0, UD + LD + LT = 0, degreewise.
ValidationReport check_sign_identities(const ComparisonHomotopy& h);

/// Sd(f) from Sd(source) to Sd(target); both built over one table.
ChainMap build_sd_pushforward(const PosetMap& f, BuiltPtr sd_source, BuiltPtr sd_target);

/// Signed permutations of {0..k-1}.
struct Permutation {
  std::vector<std::uint8_t> image;
  int sign = 1;
};
const std::vector<Permutation>& permutations(int k);

}  // namespace sbc
