#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbc/builders.hpp"
#include "sbc/freecat.hpp"
#include "sbc/subdivide.hpp"

namespace sbc {

/// Sum over strata of (-1)^(codim+1) [label].
K0Class motivic_volume_formula(const StratifiedComplex& c);

/// Alternating sum of the classes of the terms.
K0Class k0_class_of_complex(const BuiltComplex& b);

/// User-declared identifications of class labels (union-find).
class LabelQuotient {
 public:
  /// a's representative becomes the representative of the merged class.
  void merge(const ClassLabel& a, const ClassLabel& b);
  ClassLabel find(const ClassLabel& a) const;
  bool empty() const { return parent_.empty(); }

 private:
  mutable std::map<ClassLabel, ClassLabel> parent_;
};

K0Class apply_quotient(const K0Class& k, const LabelQuotient& q);

/// k (after the optional quotient) equals 1 * [point].
bool is_trivial_class(const K0Class& k, const ClassLabel& point, const LabelQuotient* q = nullptr);

/// Replaces each derived label by the label of its iso-tagged base stratum.
K0Class pushforward_class(const K0Class& k, const SubdivisionResult& r);

}  // namespace sbc
