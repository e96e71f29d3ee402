#include "sbc/volume.hpp"

namespace sbc {

K0Class motivic_volume_formula(const StratifiedComplex& c) {
  K0Class k;
  for (int s = 0; s < c.stratum_count(); ++s) k.add(c.stratum(s).label, c.stratum(s).codim % 2 ? 1 : -1);
  return k;
}

K0Class k0_class_of_complex(const BuiltComplex& b) {
  K0Class k;
  const auto& cc = *b.chain;
  for (int n = 0; n <= cc.top(); ++n) {
    K0Class t = k0_class_of_object(cc.terms[n], *cc.table);
    if (n % 2) k -= t;
    else k += t;
  }
  return k;
}

ClassLabel LabelQuotient::find(const ClassLabel& a) const {
  auto it = parent_.find(a);
  if (it == parent_.end() || it->second == a) return a;
  ClassLabel root = find(it->second);
  it->second = root;
  return root;
}

void LabelQuotient::merge(const ClassLabel& a, const ClassLabel& b) {
  ClassLabel ra = find(a), rb = find(b);
  parent_.emplace(ra, ra);
  if (ra == rb) return;
  parent_[rb] = ra;
}

K0Class apply_quotient(const K0Class& k, const LabelQuotient& q) {
  K0Class out;
  for (const auto& [l, c] : k.coeffs) out.add(q.find(l), c);
  return out;
}

bool is_trivial_class(const K0Class& k, const ClassLabel& point, const LabelQuotient* q) {
  K0Class x = q ? apply_quotient(k, *q) : k;
  K0Class pt;
  pt.add(q ? q->find(point) : point, 1);
  return x == pt;
}

K0Class pushforward_class(const K0Class& k, const SubdivisionResult& r) {
  std::map<ClassLabel, ClassLabel> to_base;
  for (const auto& [d, b] : r.iso_tags) to_base.emplace(r.derived->stratum(d).label, r.base->stratum(b).label);
  K0Class out;
  for (const auto& [l, c] : k.coeffs) {
    auto it = to_base.find(l);
    out.add(it == to_base.end() ? l : it->second, c);
  }
  return out;
}

}  // namespace sbc
