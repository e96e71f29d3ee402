#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sbc/label.hpp"
#include "sbc/report.hpp"

namespace sbc {

enum StratumFlag : std::uint8_t { kExceptional = 1, kInLastDivisor = 2 };

/// Base of the degeneration: a field "k" or a dvr-like "R_d".
struct BaseTag {
  bool dvr = false;
  int d = 0;
  bool operator==(const BaseTag&) const = default;
};

struct VertexData {
  std::string id;
  std::optional<long long> key;
  std::vector<std::string> below;  // vertices this one exceeds
  std::string label;               // class of the synthesized vertex stratum
};

struct StratumData {
  std::string id;
  std::vector<std::string> vertices;
  std::map<int, std::string> faces;
  std::optional<int> codim;          // graded-poset form only
  std::vector<std::string> covers;   // graded-poset form only
  std::string label;
  std::uint8_t flags = 0;
};

/// Raw, possibly invalid, description of a stratified complex.
struct ComplexData {
  std::string name;
  BaseTag base;
  bool poset = false;  // strata given by codim + covers instead of vertices + faces
  std::vector<VertexData> vertices;
  std::vector<StratumData> strata;
};

/// Adds a codim-1 stratum for every vertex that lacks one.
ComplexData with_vertex_strata(ComplexData data);

ValidationReport validate_complex(const ComplexData& data);

/// Immutable, validated stratum poset. Vertices and strata are indexed in id order.
class StratifiedComplex {
 public:
  struct Vertex {
    std::string id;
    std::optional<long long> key;
    std::vector<int> below;
    ClassLabel label;
  };
  struct Stratum {
    std::string id;
    std::vector<int> vertices;  // increasing in the vertex order
    std::vector<int> faces;     // faces[j] drops vertices[j]
    std::vector<int> covers;    // distinct strata of codim one less
    int codim = 0;
    ClassLabel label;
    std::uint8_t flags = 0;
  };

  /// Throws InputError carrying the validation report when invalid.
  static std::shared_ptr<const StratifiedComplex> make(ComplexData data);

  ComplexData to_data() const;

  const std::string& name() const { return name_; }
  BaseTag base() const { return base_; }
  bool simplicial() const { return simplicial_; }

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int stratum_count() const { return static_cast<int>(strata_.size()); }
  const Vertex& vertex(int v) const { return vertices_[v]; }
  const Stratum& stratum(int s) const { return strata_[s]; }
  const std::string& id(int s) const { return strata_[s].id; }

  std::optional<int> find_vertex(std::string_view id) const;
  std::optional<int> find_stratum(std::string_view id) const;
  /// Throws InputError for unknown ids.
  int stratum_index(std::string_view id) const;

  bool vertex_less(int u, int v) const;
  /// s <= t: s is an iterated face of t.
  bool leq(int s, int t) const { return (below_[t][s >> 6] >> (s & 63)) & 1u; }
  /// All t >= s, ascending.
  const std::vector<int>& up(int s) const { return up_[s]; }
  const std::vector<int>& of_codim(int k) const;
  int max_codim() const { return max_codim_; }
  int max_vertex(int s) const { return strata_[s].vertices.back(); }
  int vertex_stratum(int v) const { return vertex_stratum_[v]; }

  /// Face of s spanned by the vertex positions in mask; -1 for the empty mask.
  int face_with_positions(int s, std::uint32_t mask) const;
  /// Position of vertex v in Vert(s), or -1.
  int position(int s, int v) const;

 private:
  StratifiedComplex() = default;

  std::string name_;
  BaseTag base_;
  bool simplicial_ = true;
  std::vector<Vertex> vertices_;
  std::vector<Stratum> strata_;
  std::unordered_map<std::string, int> vertex_index_, stratum_index_;
  std::vector<std::vector<std::uint64_t>> vertex_below_;
  std::vector<std::vector<std::uint64_t>> below_;
  std::vector<std::vector<int>> up_;
  std::vector<std::vector<int>> by_codim_;
  std::vector<std::vector<int>> face_table_;
  std::vector<int> vertex_stratum_;
  int max_codim_ = 0;
};

using ComplexPtr = std::shared_ptr<const StratifiedComplex>;

ValidationReport validate_complex(const StratifiedComplex& c);

/// Chain of stratum indices s0 <= ... <= sn.
using Chain = std::vector<int>;

enum class ChainMode { Nondegenerate, Extended };

/// Lexicographic order on stratum ids.
std::vector<Chain> enumerate_chains(const StratifiedComplex& c, int n, ChainMode mode);
bool is_degenerate(const Chain& ch);
Chain face_of_chain(const Chain& ch, int j);
Chain degeneracy_of_chain(const Chain& ch, int i);
std::string chain_name(const StratifiedComplex& c, const Chain& ch);

/// Base stratum with a weakly increasing vertex word whose support is Vert(base).
struct ExtendedStratum {
  int base = -1;
  std::vector<int> word;
  bool operator==(const ExtendedStratum&) const = default;
};

std::vector<ExtendedStratum> enumerate_extended_strata(const StratifiedComplex& c, int n);
std::string extended_name(const StratifiedComplex& c, const ExtendedStratum& e);

struct StarLink {
  std::vector<int> star, closed_star, link;
};

StarLink star_link(const StratifiedComplex& c, int s);
/// s0 = t0 < ... < tm = s1 with codim steps of one, lexicographically smallest.
std::vector<int> complete_flag(const StratifiedComplex& c, int s0, int s1);

/// Vertex indices in a linear extension of the vertex order (ties by key, then id).
std::vector<int> linear_extension(const StratifiedComplex& c);
/// Same complex with a new linear vertex order given by keys (indexed by vertex).
ComplexPtr reorder_vertices(const StratifiedComplex& c, const std::vector<long long>& keys);

struct PosetMap {
  ComplexPtr source, target;
  std::vector<int> assignment;
};

PosetMap identity_poset_map(ComplexPtr c);
/// f after g.
PosetMap compose(const PosetMap& f, const PosetMap& g);
/// Checks monotonicity of f (and g); with g and expected both given, also f∘g == expected.
ValidationReport validate_poset_map(const PosetMap& f, const PosetMap* g = nullptr,
                                    const PosetMap* expected = nullptr);

}  // namespace sbc
