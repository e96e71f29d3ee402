#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sbc/freecat.hpp"

namespace sbc {

/// Graded free objects with differentials d_n : C_n -> C_{n-1}. A truncated
/// complex is only known up to its top degree; a bounded one is zero above it.
struct ChainComplex {
  TablePtr table;
  std::vector<FreeObject> terms;
  std::vector<Morphism> differentials;  // differentials[0] maps into the zero object
  bool truncated = false;
  std::function<std::string(int, int)> cell_name;  // optional, for witnesses

  int top() const { return static_cast<int>(terms.size()) - 1; }
  bool known(int n) const { return n >= 0 && (n <= top() || !truncated); }
  FreeObject term(int n) const;
  Morphism d(int n) const;
  std::string name(int degree, int index) const;
};

using ChainComplexPtr = std::shared_ptr<const ChainComplex>;

struct ChainMap {
  ChainComplexPtr source, target;
  std::vector<Morphism> components;  // degrees 0..components.size()-1
};

/// Components h_n : source_n -> target_{n+1}; checks d h + h d = f - g.
struct ChainHomotopy {
  ChainMap f, g;
  std::vector<Morphism> components;
};

ValidationReport verify_complex(const ChainComplex& c);
ValidationReport verify_chain_map(const ChainMap& f);
ValidationReport verify_homotopy(const ChainHomotopy& h);

ChainMap identity_map(ChainComplexPtr c);
ChainMap zero_map(ChainComplexPtr source, ChainComplexPtr target);
/// f after g.
ChainMap compose_chain_maps(const ChainMap& f, const ChainMap& g);
ChainMap add_maps(const ChainMap& f, const ChainMap& g);
ChainMap subtract_maps(const ChainMap& f, const ChainMap& g);
/// Degreewise equality; reports the first differing entry per degree.
ValidationReport compare_maps(const ChainMap& f, const ChainMap& g, const std::string& what);
/// Checks every component against the arrow table.
ValidationReport check_map_generators(const ChainMap& f);

/// Witness text for a differing entry of a morphism between two degrees.
std::string describe_entry(const ChainComplex& source, int source_degree, const ChainComplex& target,
                           int target_degree, const EntryWitness& w);

}  // namespace sbc
