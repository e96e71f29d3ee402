#include "sbc/freecat.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sbc {

ArrowTable::ArrowTable(std::vector<ComplexPtr> spaces, std::vector<PrimitiveArrow> extra)
    : spaces_(std::move(spaces)) {
  int total = 0;
  for (const auto& c : spaces_) {
    offsets_.push_back(total);
    total += c->stratum_count();
    for (int s = 0; s < c->stratum_count(); ++s) labels_.push_back(c->stratum(s).label);
  }
  for (std::uint32_t sp = 0; sp < spaces_.size(); ++sp) {
    const auto& c = *spaces_[sp];
    for (int s = 0; s < c.stratum_count(); ++s)
      for (int f : c.stratum(s).covers)
        arrows_.push_back({{sp, static_cast<std::uint32_t>(s)}, {sp, static_cast<std::uint32_t>(f)}, ArrowKind::Inclusion});
  }
  for (const auto& a : extra) {
    if (a.from.space >= spaces_.size() || a.to.space >= spaces_.size() ||
        static_cast<int>(a.from.index) >= spaces_[a.from.space]->stratum_count() ||
        static_cast<int>(a.to.index) >= spaces_[a.to.space]->stratum_count())
      throw InputError("arrow refers to an unknown node");
    if (a.kind == ArrowKind::Iso && !(label(a.from) == label(a.to)))
      throw InputError("iso arrow between different labels: " + name(a.from) + " -> " + name(a.to));
    arrows_.push_back(a);
    if (a.kind == ArrowKind::Iso) arrows_.push_back({a.to, a.from, ArrowKind::Iso});
  }

  // iso classes by union-find
  iso_class_.resize(total);
  std::iota(iso_class_.begin(), iso_class_.end(), 0);
  std::function<int(int)> find = [&](int x) { return iso_class_[x] == x ? x : iso_class_[x] = find(iso_class_[x]); };
  for (const auto& a : arrows_)
    if (a.kind == ArrowKind::Iso) iso_class_[find(flat(a.from))] = find(flat(a.to));
  for (int i = 0; i < total; ++i) find(i);

  // reachability by search from every node
  std::vector<std::vector<int>> succ(total);
  for (const auto& a : arrows_) succ[flat(a.from)].push_back(flat(a.to));
  const std::size_t words = (total + 63) / 64;
  reach_.assign(total, std::vector<std::uint64_t>(words, 0));
  std::vector<int> stack;
  for (int s = 0; s < total; ++s) {
    auto& r = reach_[s];
    r[s >> 6] |= std::uint64_t(1) << (s & 63);
    stack.assign(1, s);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : succ[x]) {
        if ((r[y >> 6] >> (y & 63)) & 1u) continue;
        r[y >> 6] |= std::uint64_t(1) << (y & 63);
        stack.push_back(y);
      }
    }
  }
}

std::string ArrowTable::name(NodeId n) const {
  std::string s = spaces_[n.space]->id(static_cast<int>(n.index));
  if (spaces_.size() > 1) s = std::to_string(n.space) + ":" + s;
  return s;
}

bool ArrowTable::reachable(NodeId a, NodeId b) const {
  int x = flat(a), y = flat(b);
  return (reach_[x][y >> 6] >> (y & 63)) & 1u;
}

bool ArrowTable::iso(NodeId a, NodeId b) const { return iso_class_[flat(a)] == iso_class_[flat(b)]; }

TablePtr make_arrow_table(ComplexPtr c) { return std::make_shared<const ArrowTable>(std::vector<ComplexPtr>{c}, std::vector<PrimitiveArrow>{}); }

std::vector<PrimitiveArrow> vertical_arrows(const PosetMap& f, std::uint32_t source_space, std::uint32_t target_space,
                                            const std::vector<std::pair<int, int>>& iso_tags) {
  std::vector<char> iso(f.assignment.size(), 0);
  for (const auto& [d, b] : iso_tags)
    if (d >= 0 && d < static_cast<int>(iso.size()) && f.assignment[d] == b) iso[d] = 1;
  std::vector<PrimitiveArrow> out;
  for (std::size_t s = 0; s < f.assignment.size(); ++s)
    out.push_back({{source_space, static_cast<std::uint32_t>(s)},
                   {target_space, static_cast<std::uint32_t>(f.assignment[s])},
                   iso[s] ? ArrowKind::Iso : ArrowKind::Vertical});
  return out;
}

std::optional<EntryWitness> first_difference(const Morphism& f, const Morphism& g) {
  Morphism d = f - g;
  if (d.is_zero()) return std::nullopt;
  std::optional<EntryWitness> best;
  for (int k = 0; k < d.matrix.outerSize(); ++k)
    for (Morphism::Matrix::InnerIterator it(d.matrix, k); it; ++it) {
      EntryWitness w{it.row(), it.col(), f.matrix.coeff(it.row(), it.col()), g.matrix.coeff(it.row(), it.col())};
      if (!best || std::tie(w.row, w.col) < std::tie(best->row, best->col)) best = w;
    }
  return best;
}

ValidationReport check_generators(const Morphism& f, const ArrowTable& table) {
  ValidationReport rep;
  for (int k = 0; k < f.matrix.outerSize(); ++k)
    for (Morphism::Matrix::InnerIterator it(f.matrix, k); it; ++it) {
      NodeId a = f.source.summands[it.col()];
      NodeId b = f.target.summands[it.row()];
      if (!table.reachable(a, b))
        rep.add("unreachable generator", "no arrow " + table.name(a) + " -> " + table.name(b),
                {table.name(a), table.name(b)});
    }
  return rep;
}

Morphism invert_iso(const Morphism& f, const ArrowTable& table) {
  if (f.source.size() != f.target.size()) throw InputError("invert_iso: not square");
  const auto n = static_cast<Eigen::Index>(f.source.size());
  std::vector<int> row_hits(n, 0), col_hits(n, 0);
  std::vector<Eigen::Triplet<long long>> trip;
  for (int k = 0; k < f.matrix.outerSize(); ++k)
    for (Morphism::Matrix::InnerIterator it(f.matrix, k); it; ++it) {
      if (it.value() != 1 && it.value() != -1) throw InputError("invert_iso: coefficient is not a unit");
      NodeId a = f.source.summands[it.col()];
      NodeId b = f.target.summands[it.row()];
      if (!table.iso(a, b)) throw InputError("invert_iso: " + table.name(a) + " -> " + table.name(b) + " is not iso");
      ++row_hits[it.row()];
      ++col_hits[it.col()];
      trip.emplace_back(it.col(), it.row(), it.value());
    }
  for (Eigen::Index i = 0; i < n; ++i)
    if (row_hits[i] != 1 || col_hits[i] != 1) throw InputError("invert_iso: not a signed permutation");
  Morphism::Matrix m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  return Morphism(f.target, f.source, std::move(m));
}

void K0Class::add(const ClassLabel& l, long long c) {
  if (c == 0) return;
  auto it = coeffs.find(l);
  if (it == coeffs.end()) {
    coeffs.emplace(l, c);
    return;
  }
  it->second += c;
  if (it->second == 0) coeffs.erase(it);
}

K0Class& K0Class::operator+=(const K0Class& o) {
  for (const auto& [l, c] : o.coeffs) add(l, c);
  return *this;
}

K0Class& K0Class::operator-=(const K0Class& o) {
  for (const auto& [l, c] : o.coeffs) add(l, -c);
  return *this;
}

long long K0Class::coeff(const ClassLabel& l) const {
  auto it = coeffs.find(l);
  return it == coeffs.end() ? 0 : it->second;
}

std::string K0Class::to_string() const {
  if (coeffs.empty()) return "0";
  std::vector<std::pair<ClassLabel, long long>> pos, neg;
  for (const auto& kv : coeffs) (kv.second > 0 ? pos : neg).push_back(kv);
  std::ostringstream os;
  bool first = true;
  for (const auto* group : {&pos, &neg})
    for (const auto& [l, c] : *group) {
      if (!first) os << ' ';
      first = false;
      os << (c > 0 ? '+' : '-');
      long long a = c > 0 ? c : -c;
      if (a != 1) os << a;
      os << '[' << l.symbol() << ']';
    }
  return os.str();
}

K0Class operator+(K0Class a, const K0Class& b) { return a += b; }
K0Class operator-(K0Class a, const K0Class& b) { return a -= b; }
K0Class operator*(long long c, const K0Class& a) {
  K0Class r;
  for (const auto& [l, v] : a.coeffs) r.add(l, c * v);
  return r;
}

K0Class k0_class_of_object(const FreeObject& o, const ArrowTable& table) {
  K0Class k;
  for (const auto& n : o.summands) k.add(table.label(n), 1);
  return k;
}

}  // namespace sbc
