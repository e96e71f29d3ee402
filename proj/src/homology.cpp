#include "sbc/homology.hpp"

#include <algorithm>

namespace sbc {

AbelianRealization AbelianRealization::constant_realization() {
  AbelianRealization r;
  r.constant = true;
  return r;
}

FlagComposer::FlagComposer(ComplexPtr c, const AbelianRealization& r) : c_(std::move(c)), r_(r) {
  const auto& cx = *c_;
  ranks_.resize(cx.stratum_count());
  for (int s = 0; s < cx.stratum_count(); ++s) {
    if (r.constant) {
      ranks_[s] = 1;
      continue;
    }
    auto it = r.ranks.find(cx.stratum(s).label.symbol());
    if (it == r.ranks.end()) throw InputError("realization: no rank for class " + cx.stratum(s).label.symbol());
    if (it->second < 0) throw InputError("realization: negative rank for class " + it->first);
    ranks_[s] = it->second;
  }
  for (const auto& [arrow, m] : r.matrices) {
    auto a = cx.find_stratum(arrow.first), b = cx.find_stratum(arrow.second);
    if (!a || !b) throw InputError("realization: unknown arrow " + arrow.first + "->" + arrow.second);
    const auto& cov = cx.stratum(*a).covers;
    if (std::find(cov.begin(), cov.end(), *b) == cov.end())
      throw InputError("realization: " + arrow.first + "->" + arrow.second + " is not a covering arrow");
    if (m.rows != ranks_[*b] || m.cols != ranks_[*a])
      throw InputError("realization: matrix for " + arrow.first + "->" + arrow.second + " has shape " +
                       std::to_string(m.rows) + "x" + std::to_string(m.cols) + ", expected " +
                       std::to_string(ranks_[*b]) + "x" + std::to_string(ranks_[*a]));
  }
  cover_.resize(cx.stratum_count());
  for (int a = 0; a < cx.stratum_count(); ++a)
    for (int f : cx.stratum(a).covers) {
      auto it = r.matrices.find({cx.id(a), cx.id(f)});
      if (it != r.matrices.end()) {
        cover_[a][f] = it->second;
      } else if (ranks_[a] == ranks_[f]) {
        cover_[a][f] = IntMatrix<long long>::identity(ranks_[a]);
      } else if (ranks_[a] == 0 || ranks_[f] == 0) {
        cover_[a][f] = IntMatrix<long long>(ranks_[f], ranks_[a]);
      } else {
        throw InputError("realization: rank mismatch on " + cx.id(a) + "->" + cx.id(f) + " needs an explicit matrix");
      }
    }
}

std::string FlagComposer::flag_name(const std::vector<int>& f) const {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " > " : "") + c_->id(f[i]);
  return s;
}

const FlagComposer::Entry& FlagComposer::entry(int a, int b, ValidationReport* rep) {
  auto key = std::make_pair(a, b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  Entry e;
  if (a == b) {
    e.m = IntMatrix<long long>::identity(ranks_[a]);
    e.flag = {a};
    return memo_[key] = std::move(e);
  }
  bool have = false;
  for (const auto& [f, m] : cover_[a]) {
    if (!c_->leq(b, f)) continue;
    const Entry& rest = entry(f, b, rep);
    IntMatrix<long long> cand = rest.m * m;
    if (!have) {
      e.m = std::move(cand);
      e.flag = {a};
      e.flag.insert(e.flag.end(), rest.flag.begin(), rest.flag.end());
      have = true;
    } else if (!(cand == e.m)) {
      std::vector<int> other{a};
      other.insert(other.end(), rest.flag.begin(), rest.flag.end());
      const std::string msg = "flags " + flag_name(e.flag) + " and " + flag_name(other) + " compose differently";
      if (!rep) throw MathError("realization is path dependent: " + msg);
      rep->add("path dependence", msg, {c_->id(a), c_->id(b)});
    }
  }
  if (!have) throw InputError("composed: " + c_->id(b) + " is not below " + c_->id(a));
  return memo_[key] = std::move(e);
}

const IntMatrix<long long>& FlagComposer::composed(int a, int b) { return entry(a, b, nullptr).m; }

ValidationReport FlagComposer::check_path_independence() {
  ValidationReport rep;
  memo_.clear();
  const auto& cx = *c_;
  for (int b = 0; b < cx.stratum_count(); ++b)
    for (int a : cx.up(b)) entry(a, b, &rep);
  memo_.clear();
  return rep;
}

IntegerChainComplex realize(const BuiltComplex& b, const AbelianRealization& r) {
  FlagComposer fc(b.complex, r);
  if (!r.constant) {
    ValidationReport rep = fc.check_path_independence();
    if (!rep.ok()) throw MathError("realization is path dependent:\n" + rep.to_string());
  }
  IntegerChainComplex out;
  const auto& cc = *b.chain;
  std::vector<std::vector<int>> offsets(cc.top() + 1);
  for (int n = 0; n <= cc.top(); ++n) {
    int total = 0;
    for (const auto& node : cc.terms[n].summands) {
      if (node.space != b.space) throw InputError("realize: summand outside the realized complex");
      offsets[n].push_back(total);
      total += fc.rank(static_cast<int>(node.index));
    }
    out.ranks.push_back(total);
  }
  for (int n = 0; n <= cc.top(); ++n) {
    const int rows = n ? out.ranks[n - 1] : 0;
    Eigen::SparseMatrix<long long> m(rows, out.ranks[n]);
    if (n > 0) {
      std::vector<Eigen::Triplet<long long>> t;
      const auto& dn = cc.differentials[n];
      for (int j = 0; j < dn.matrix.outerSize(); ++j)
        for (Eigen::SparseMatrix<long long>::InnerIterator it(dn.matrix, j); it; ++it) {
          const int src = static_cast<int>(dn.source.summands[j].index);
          const int tgt = static_cast<int>(dn.target.summands[it.row()].index);
          const auto& block = fc.composed(src, tgt);
          for (int p = 0; p < block.rows; ++p)
            for (int q = 0; q < block.cols; ++q)
              if (block(p, q) != 0)
                t.emplace_back(offsets[n - 1][it.row()] + p, offsets[n][j] + q, it.value() * block(p, q));
        }
      m.setFromTriplets(t.begin(), t.end());
      m.prune(0LL);
    }
    out.d.push_back(std::move(m));
  }
  for (int n = 2; n <= cc.top(); ++n) {
    Eigen::SparseMatrix<long long> dd = out.d[n - 1] * out.d[n];
    dd.prune(0LL);
    if (dd.nonZeros() != 0) throw MathError("realize: d^2 != 0 in degree " + std::to_string(n));
  }
  return out;
}

namespace {

std::vector<BigInt> factors_of(const Eigen::SparseMatrix<long long>& m) {
  std::vector<SparseEntry> e;
  for (int j = 0; j < m.outerSize(); ++j)
    for (Eigen::SparseMatrix<long long>::InnerIterator it(m, j); it; ++it)
      e.push_back({static_cast<int>(it.row()), j, it.value()});
  return invariant_factors(static_cast<int>(m.rows()), static_cast<int>(m.cols()), e);
}

}  // namespace

std::vector<HomologyGroup> homology_groups(const IntegerChainComplex& c) {
  const int top = static_cast<int>(c.ranks.size()) - 1;
  std::vector<std::vector<BigInt>> f(top + 2);
  for (int n = 1; n <= top; ++n) f[n] = factors_of(c.d[n]);
  std::vector<HomologyGroup> out(top + 1);
  for (int n = 0; n <= top; ++n) {
    const long long rank_out = static_cast<long long>(f[n].size());
    const long long rank_in = static_cast<long long>(f[n + 1].size());
    out[n].betti = c.ranks[n] - rank_out - rank_in;
    for (const auto& x : f[n + 1])
      if (x > 1) out[n].torsion.push_back(x);
    std::sort(out[n].torsion.begin(), out[n].torsion.end());
  }
  return out;
}

long long euler_characteristic(const IntegerChainComplex& c) {
  long long chi = 0;
  for (std::size_t n = 0; n < c.ranks.size(); ++n) chi += (n % 2 ? -1 : 1) * static_cast<long long>(c.ranks[n]);
  return chi;
}

long long euler_characteristic(const std::vector<HomologyGroup>& h) {
  long long chi = 0;
  for (std::size_t n = 0; n < h.size(); ++n) chi += (n % 2 ? -1 : 1) * h[n].betti;
  return chi;
}

std::string HomologyGroup::to_string() const {
  std::string s;
  if (betti == 1) s = "Z";
  else if (betti > 1) s = "Z^" + std::to_string(betti);
  for (const auto& t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + t.str());
  return s.empty() ? "0" : s;
}

std::vector<HomologyGroup> dual_complex_homology(ComplexPtr c) {
  BuiltPtr b = build_cech(std::move(c), BuildMode::bounded());
  return homology_groups(realize(*b, AbelianRealization::constant_realization()));
}

}  // namespace sbc
