#include "sbc/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace sbc {

namespace {

const char* kPool[] = {"a", "b", "c", "pt"};

}  // namespace

ComplexPtr random_complex(Rng& rng, const RandomComplexOptions& opt) {
  std::uniform_int_distribution<int> nv_dist(1, opt.max_vertices);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  const int nv = nv_dist(rng);
  // perm[i] = rank of vertex i in the order
  std::vector<int> perm(nv);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  const bool pooled = coin(rng) < opt.pooled_labels;
  auto label = [&](const std::string& id) {
    return pooled ? std::string(kPool[std::uniform_int_distribution<int>(0, 3)(rng)]) : id;
  };

  std::set<std::vector<int>> simplices;  // vertex indices sorted by order rank
  std::uniform_int_distribution<int> nm_dist(1, opt.max_maximal);
  const int nmax = nm_dist(rng);
  std::vector<std::vector<int>> maximal;
  for (int m = 0; m < nmax; ++m) {
    const int size = std::uniform_int_distribution<int>(1, std::min(opt.max_simplex, nv))(rng);
    std::vector<int> vs(nv);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    vs.resize(size);
    std::sort(vs.begin(), vs.end(), [&](int a, int b) { return perm[a] < perm[b]; });
    maximal.push_back(vs);
    for (std::uint32_t mask = 1; mask < (1u << size); ++mask) {
      std::vector<int> f;
      for (int i = 0; i < size; ++i)
        if ((mask >> i) & 1u) f.push_back(vs[i]);
      simplices.insert(f);
    }
  }
  auto vid = [](int v) { return std::string(1, static_cast<char>('a' + v)); };
  auto sid = [&](const std::vector<int>& s) {
    std::string id;
    for (int v : s) id += vid(v);
    return id;
  };

  ComplexData d;
  d.name = "random";
  const bool partial = coin(rng) < opt.partial_order;
  for (int v = 0; v < nv; ++v) {
    VertexData vd;
    vd.id = vid(v);
    vd.label = label(vd.id);
    if (!partial) vd.key = perm[v];
    d.vertices.push_back(vd);
  }
  if (partial) {
    // only pairs sharing a stratum are ordered
    for (const auto& s : simplices)
      if (s.size() == 2) d.vertices[s[1]].below.push_back(vid(s[0]));
  }
  auto stratum = [&](const std::vector<int>& s, const std::string& id) {
    StratumData sd;
    sd.id = id;
    for (int v : s) sd.vertices.push_back(vid(v));
    if (s.size() > 1)
      for (std::size_t j = 0; j < s.size(); ++j) {
        std::vector<int> f = s;
        f.erase(f.begin() + static_cast<long>(j));
        sd.faces[static_cast<int>(j)] = sid(f);
      }
    sd.label = s.size() == 1 ? d.vertices[s[0]].label : label(id);
    return sd;
  };
  for (const auto& s : simplices) d.strata.push_back(stratum(s, sid(s)));
  if (coin(rng) < opt.duplicate) {
    std::vector<std::vector<int>> tops;
    for (const auto& s : simplices) {
      if (s.size() < 2) continue;
      bool top = true;
      for (const auto& t : simplices)
        if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end(),
                                                 [&](int a, int b) { return perm[a] < perm[b]; }))
          top = false;
      if (top) tops.push_back(s);
    }
    if (!tops.empty()) {
      const auto& s = tops[std::uniform_int_distribution<std::size_t>(0, tops.size() - 1)(rng)];
      d.strata.push_back(stratum(s, sid(s) + "'"));
    }
  }
  return StratifiedComplex::make(std::move(d));
}

LatticeMatrix random_unimodular(Rng& rng, int n, int steps) {
  LatticeMatrix m = LatticeMatrix::identity(n);
  if (n < 2) return m;
  std::uniform_int_distribution<int> idx(0, n - 1), q(-2, 2), kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    int a = idx(rng), b = idx(rng);
    if (a == b) continue;
    switch (kind(rng)) {
      case 0: {
        const int k = q(rng);
        for (int j = 0; j < n; ++j) m(a, j) += k * m(b, j);
        break;
      }
      case 1:
        for (int j = 0; j < n; ++j) std::swap(m(a, j), m(b, j));
        break;
      default:
        for (int j = 0; j < n; ++j) m(a, j) = -m(a, j);
    }
  }
  return m;
}

LatticeMatrix random_cone(Rng& rng, int dim, long long max_multiplicity) {
  std::uniform_int_distribution<int> entry(dim == 2 ? -5 : -3, dim == 2 ? 5 : 3);
  for (;;) {
    LatticeMatrix m(dim, dim);
    for (auto& x : m.data) x = entry(rng);
    bool primitive = true;
    for (int j = 0; j < dim && primitive; ++j) {
      long long g = 0;
      for (int i = 0; i < dim; ++i) g = std::gcd(g, m(i, j));
      primitive = g == 1;
    }
    if (!primitive) continue;
    long long det = determinant(m);
    if (det == 0 || det > max_multiplicity || det < -max_multiplicity) continue;
    return m;
  }
}

}  // namespace sbc
