#pragma once

#include <Eigen/SparseCore>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sbc/label.hpp"
#include "sbc/report.hpp"
#include "sbc/strata.hpp"

namespace sbc {

/// A stratum of the complex registered as `space` in an ArrowTable.
struct NodeId {
  std::uint32_t space = 0;
  std::uint32_t index = 0;
  auto operator<=>(const NodeId&) const = default;
};

enum class ArrowKind : std::uint8_t { Inclusion, Vertical, Iso };

struct PrimitiveArrow {
  NodeId from, to;
  ArrowKind kind;
};

/// Thin category on the strata of one or more complexes. Reachability (the
/// existence of the unique generator m_{a,b}) is computed once at construction.
class ArrowTable {
 public:
  ArrowTable() = default;
  ArrowTable(std::vector<ComplexPtr> spaces, std::vector<PrimitiveArrow> extra);

  int space_count() const { return static_cast<int>(spaces_.size()); }
  const StratifiedComplex& complex(std::uint32_t space) const { return *spaces_[space]; }
  ComplexPtr complex_ptr(std::uint32_t space) const { return spaces_[space]; }
  int node_count() const { return static_cast<int>(labels_.size()); }
  const ClassLabel& label(NodeId n) const { return labels_[flat(n)]; }
  std::string name(NodeId n) const;

  bool reachable(NodeId a, NodeId b) const;
  /// a and b joined by iso arrows (or equal).
  bool iso(NodeId a, NodeId b) const;
  const std::vector<PrimitiveArrow>& arrows() const { return arrows_; }

 private:
  int flat(NodeId n) const { return offsets_[n.space] + static_cast<int>(n.index); }

  std::vector<ComplexPtr> spaces_;
  std::vector<int> offsets_;
  std::vector<ClassLabel> labels_;
  std::vector<PrimitiveArrow> arrows_;
  std::vector<std::vector<std::uint64_t>> reach_;
  std::vector<int> iso_class_;
};

using TablePtr = std::shared_ptr<const ArrowTable>;

/// Single complex, inclusion arrows only.
TablePtr make_arrow_table(ComplexPtr c);

/// Vertical arrows for a poset map between registered spaces; pairs in iso_tags
/// (source stratum, target stratum) become iso arrows.
std::vector<PrimitiveArrow> vertical_arrows(const PosetMap& f, std::uint32_t source_space,
                                            std::uint32_t target_space,
                                            const std::vector<std::pair<int, int>>& iso_tags);

struct FreeObject {
  std::vector<NodeId> summands;
  std::size_t size() const { return summands.size(); }
  bool operator==(const FreeObject&) const = default;
};

/// Matrix over the thin category: entry (i, j) = c * m_{source[j], target[i]}.
template <class Scalar = long long>
struct FreeMorphism {
  using Matrix = Eigen::SparseMatrix<Scalar>;
  FreeObject source, target;
  Matrix matrix;

  FreeMorphism() = default;
  FreeMorphism(FreeObject s, FreeObject t) : source(std::move(s)), target(std::move(t)) {
    matrix.resize(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(source.size()));
  }
  FreeMorphism(FreeObject s, FreeObject t, Matrix m) : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
    canonicalize();
  }

  static FreeMorphism zero(FreeObject s, FreeObject t) { return FreeMorphism(std::move(s), std::move(t)); }
  static FreeMorphism identity(const FreeObject& o) {
    Matrix m(static_cast<Eigen::Index>(o.size()), static_cast<Eigen::Index>(o.size()));
    m.setIdentity();
    return FreeMorphism(o, o, std::move(m));
  }

  void canonicalize() {
    matrix.prune(Scalar(0));
    matrix.makeCompressed();
  }
  bool is_zero() const { return matrix.nonZeros() == 0; }
  Scalar coeff(Eigen::Index i, Eigen::Index j) const { return matrix.coeff(i, j); }
};

using Morphism = FreeMorphism<long long>;

/// f after g.
template <class Scalar>
FreeMorphism<Scalar> compose(const FreeMorphism<Scalar>& f, const FreeMorphism<Scalar>& g) {
  if (!(g.target == f.source)) throw InputError("compose: object mismatch");
  typename FreeMorphism<Scalar>::Matrix m = f.matrix * g.matrix;
  return FreeMorphism<Scalar>(g.source, f.target, std::move(m));
}

template <class Scalar>
FreeMorphism<Scalar> operator+(const FreeMorphism<Scalar>& f, const FreeMorphism<Scalar>& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) throw InputError("add: object mismatch");
  typename FreeMorphism<Scalar>::Matrix m = f.matrix + g.matrix;
  return FreeMorphism<Scalar>(f.source, f.target, std::move(m));
}

template <class Scalar>
FreeMorphism<Scalar> operator-(const FreeMorphism<Scalar>& f, const FreeMorphism<Scalar>& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) throw InputError("subtract: object mismatch");
  typename FreeMorphism<Scalar>::Matrix m = f.matrix - g.matrix;
  return FreeMorphism<Scalar>(f.source, f.target, std::move(m));
}

template <class Scalar>
FreeMorphism<Scalar> operator-(const FreeMorphism<Scalar>& f) {
  typename FreeMorphism<Scalar>::Matrix m = -f.matrix;
  return FreeMorphism<Scalar>(f.source, f.target, std::move(m));
}

template <class Scalar>
FreeMorphism<Scalar> operator*(Scalar c, const FreeMorphism<Scalar>& f) {
  typename FreeMorphism<Scalar>::Matrix m = c * f.matrix;
  return FreeMorphism<Scalar>(f.source, f.target, std::move(m));
}

/// Entrywise equality; throws on shape mismatch.
template <class Scalar>
bool is_equal(const FreeMorphism<Scalar>& f, const FreeMorphism<Scalar>& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) throw InputError("is_equal: shape mismatch");
  return (f - g).is_zero();
}

struct EntryWitness {
  Eigen::Index row = -1, col = -1;
  long long got = 0, expected = 0;
};

/// First entry (row-major) where f and g differ.
std::optional<EntryWitness> first_difference(const Morphism& f, const Morphism& g);

/// Every nonzero entry must be a reachable pair.
ValidationReport check_generators(const Morphism& f, const ArrowTable& table);

/// Two-sided inverse of a signed permutation of iso generators.
Morphism invert_iso(const Morphism& f, const ArrowTable& table);

/// Finitely supported integer combination of class labels.
struct K0Class {
  std::map<ClassLabel, long long> coeffs;

  void add(const ClassLabel& l, long long c);
  K0Class& operator+=(const K0Class& o);
  K0Class& operator-=(const K0Class& o);
  bool operator==(const K0Class& o) const { return coeffs == o.coeffs; }
  bool is_zero() const { return coeffs.empty(); }
  long long coeff(const ClassLabel& l) const;
  /// Positive terms first, each group ordered by symbol: "+[a] +[b] -[ab]".
  std::string to_string() const;
};

K0Class operator+(K0Class a, const K0Class& b);
K0Class operator-(K0Class a, const K0Class& b);
K0Class operator*(long long c, const K0Class& a);

K0Class k0_class_of_object(const FreeObject& o, const ArrowTable& table);

}  // namespace sbc
