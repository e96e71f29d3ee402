#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sbc/strata.hpp"

namespace fixtures {

using sbc::ComplexData;
using sbc::ComplexPtr;

// Ordered simplicial complex generated by the given simplices; vertices are
// ordered as listed, stratum ids are the concatenated vertex ids.
inline ComplexData simplicial_data(const std::vector<std::string>& order,
                                   const std::vector<std::vector<std::string>>& maximal,
                                   const std::map<std::string, std::string>& labels = {}) {
  auto rank = [&](const std::string& v) {
    return std::find(order.begin(), order.end(), v) - order.begin();
  };
  std::set<std::vector<std::string>> simplices;
  for (auto m : maximal) {
    std::sort(m.begin(), m.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
    for (unsigned mask = 1; mask < (1u << m.size()); ++mask) {
      std::vector<std::string> f;
      for (std::size_t i = 0; i < m.size(); ++i)
        if ((mask >> i) & 1u) f.push_back(m[i]);
      simplices.insert(f);
    }
  }
  auto join = [](const std::vector<std::string>& s) {
    std::string id;
    for (const auto& v : s) id += v;
    return id;
  };
  auto label = [&](const std::string& id) {
    auto it = labels.find(id);
    return it == labels.end() ? id : it->second;
  };
  ComplexData d;
  d.name = "fixture";
  for (std::size_t i = 0; i < order.size(); ++i) {
    sbc::VertexData v;
    v.id = order[i];
    v.key = static_cast<long long>(i);
    v.label = label(order[i]);
    d.vertices.push_back(v);
  }
  for (const auto& s : simplices) {
    sbc::StratumData sd;
    sd.id = join(s);
    sd.vertices = s;
    sd.label = label(sd.id);
    if (s.size() > 1)
      for (std::size_t j = 0; j < s.size(); ++j) {
        auto f = s;
        f.erase(f.begin() + static_cast<long>(j));
        sd.faces[static_cast<int>(j)] = join(f);
      }
    d.strata.push_back(sd);
  }
  return d;
}

inline ComplexPtr simplicial(const std::vector<std::string>& order,
                             const std::vector<std::vector<std::string>>& maximal,
                             const std::map<std::string, std::string>& labels = {}) {
  return sbc::StratifiedComplex::make(simplicial_data(order, maximal, labels));
}

inline ComplexPtr point() { return simplicial({"a"}, {{"a"}}); }
inline ComplexPtr edge() { return simplicial({"a", "b"}, {{"a", "b"}}, {{"ab", "e"}}); }
inline ComplexPtr triangle() { return simplicial({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"a", "c"}}); }
inline ComplexPtr filled_triangle() { return simplicial({"a", "b", "c"}, {{"a", "b", "c"}}); }

inline std::vector<std::string> letters(int n) {
  std::vector<std::string> v;
  for (int i = 0; i < n; ++i) v.push_back(std::string(1, static_cast<char>('a' + i)));
  return v;
}

// n components glued in a ring.
inline ComplexPtr cycle(int n) {
  auto v = letters(n);
  std::vector<std::vector<std::string>> edges;
  for (int i = 0; i < n; ++i) edges.push_back({v[i], v[(i + 1) % n]});
  return simplicial(v, edges);
}

// Boundary of the simplex on dim + 2 vertices: a sphere of dimension dim.
inline ComplexPtr simplex_boundary(int dim) {
  auto v = letters(dim + 2);
  std::vector<std::vector<std::string>> facets;
  for (int skip = 0; skip < dim + 2; ++skip) {
    std::vector<std::string> f;
    for (int i = 0; i < dim + 2; ++i)
      if (i != skip) f.push_back(v[i]);
    facets.push_back(f);
  }
  return simplicial(v, facets);
}

// Two divisors meeting in two components x, y; a non-simplicial square poset
// when a top element covers both.
inline ComplexPtr square_poset() {
  ComplexData d;
  d.name = "square";
  d.poset = true;
  auto add = [&](std::string id, int codim, std::vector<std::string> covers) {
    sbc::StratumData s;
    s.id = id;
    s.codim = codim;
    s.covers = std::move(covers);
    s.label = id;
    d.strata.push_back(s);
  };
  add("a", 1, {});
  add("b", 1, {});
  add("x", 2, {"a", "b"});
  add("y", 2, {"a", "b"});
  add("t", 3, {"x", "y"});
  return sbc::StratifiedComplex::make(d);
}

}  // namespace fixtures
