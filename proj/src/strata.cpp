#include "sbc/strata.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace sbc {

namespace {

using Bits = std::vector<std::uint64_t>;

void set_bit(Bits& b, int i) { b[i >> 6] |= std::uint64_t(1) << (i & 63); }
bool get_bit(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void or_into(Bits& a, const Bits& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] |= b[i];
}

std::uint32_t drop_bit(std::uint32_t mask, int j) {
  std::uint32_t low = mask & ((1u << j) - 1u);
  std::uint32_t high = (mask >> (j + 1)) << j;
  return low | high;
}

// Strict order on vertices: key comparisons plus explicit edges, transitively closed.
// Returns false on a cycle.
bool order_closure(const std::vector<std::optional<long long>>& keys,
                   const std::vector<std::vector<int>>& below, std::vector<Bits>& less_than) {
  const int n = static_cast<int>(keys.size());
  const std::size_t words = (n + 63) / 64;
  std::vector<std::vector<int>> preds(n);
  std::vector<int> keyed;
  for (int v = 0; v < n; ++v) {
    for (int u : below[v]) preds[v].push_back(u);
    if (keys[v]) keyed.push_back(v);
  }
  std::stable_sort(keyed.begin(), keyed.end(), [&](int a, int b) { return *keys[a] < *keys[b]; });
  // each keyed vertex exceeds the group with the next smaller key
  std::size_t prev_begin = 0, prev_end = 0, i = 0;
  while (i < keyed.size()) {
    std::size_t j = i;
    while (j < keyed.size() && *keys[keyed[j]] == *keys[keyed[i]]) ++j;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = prev_begin; b < prev_end; ++b) preds[keyed[a]].push_back(keyed[b]);
    prev_begin = i;
    prev_end = j;
    i = j;
  }
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<int>> succ(n);
  for (int v = 0; v < n; ++v)
    for (int u : preds[v]) {
      succ[u].push_back(v);
      ++indeg[v];
    }
  std::vector<int> order;
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    order.push_back(v);
    for (int w : succ[v])
      if (--indeg[w] == 0) stack.push_back(w);
  }
  if (static_cast<int>(order.size()) != n) return false;
  less_than.assign(n, Bits(words, 0));  // less_than[v] = {u : u < v}
  for (int v : order)
    for (int u : preds[v]) {
      set_bit(less_than[v], u);
      or_into(less_than[v], less_than[u]);
    }
  return true;
}

std::string join_ids(const std::vector<std::string>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i];
  return out;
}

}  // namespace

ComplexData with_vertex_strata(ComplexData data) {
  if (data.poset) return data;
  std::set<std::string> have;
  for (const auto& s : data.strata)
    if (s.vertices.size() == 1) have.insert(s.vertices[0]);
  for (const auto& v : data.vertices) {
    if (have.count(v.id)) continue;
    StratumData s;
    s.id = v.id;
    s.vertices = {v.id};
    s.label = v.label.empty() ? v.id : v.label;
    data.strata.push_back(std::move(s));
  }
  return data;
}

ValidationReport validate_complex(const ComplexData& data) {
  ValidationReport rep;
  std::unordered_map<std::string, int> vidx, sidx;
  for (std::size_t i = 0; i < data.vertices.size(); ++i) {
    const auto& v = data.vertices[i];
    if (v.id.empty()) rep.add("empty id", "vertex with empty id");
    if (!vidx.emplace(v.id, static_cast<int>(i)).second)
      rep.add("duplicate vertex", "vertex id listed twice", {v.id});
  }
  for (std::size_t i = 0; i < data.strata.size(); ++i) {
    const auto& s = data.strata[i];
    if (s.id.empty()) rep.add("empty id", "stratum with empty id");
    if (!sidx.emplace(s.id, static_cast<int>(i)).second)
      rep.add("duplicate stratum", "stratum id listed twice", {s.id});
  }

  if (data.poset) {
    for (const auto& s : data.strata) {
      if (!s.codim || *s.codim < 1) {
        rep.add("bad codim", "poset element needs codim >= 1", {s.id});
        continue;
      }
      if (*s.codim == 1 && !s.covers.empty()) rep.add("ungraded", "codim-1 element covers something", {s.id});
      if (*s.codim > 1 && s.covers.empty()) rep.add("ungraded", "element of codim > 1 covers nothing", {s.id});
      for (const auto& c : s.covers) {
        auto it = sidx.find(c);
        if (it == sidx.end()) {
          rep.add("unknown stratum", "cover refers to unknown id " + c, {s.id});
          continue;
        }
        const auto& t = data.strata[it->second];
        if (!t.codim || *t.codim != *s.codim - 1)
          rep.add("ungraded", "cover " + c + " is not of codim one less", {s.id, c});
      }
    }
    return rep;
  }

  // vertex order
  const int nv = static_cast<int>(data.vertices.size());
  std::vector<std::optional<long long>> keys(nv);
  std::vector<std::vector<int>> below(nv);
  bool refs_ok = true;
  for (int i = 0; i < nv; ++i) {
    keys[i] = data.vertices[i].key;
    for (const auto& b : data.vertices[i].below) {
      auto it = vidx.find(b);
      if (it == vidx.end()) {
        rep.add("unknown vertex", "order refers to unknown vertex " + b, {data.vertices[i].id});
        refs_ok = false;
      } else {
        below[i].push_back(it->second);
      }
    }
  }
  std::vector<Bits> less_than;
  bool acyclic = refs_ok && order_closure(keys, below, less_than);
  if (refs_ok && !acyclic) rep.add("order cycle", "vertex order is cyclic");

  std::vector<int> vertex_strata(nv, 0);
  for (const auto& s : data.strata) {
    if (s.vertices.empty()) {
      rep.add("empty stratum", "stratum has no vertices", {s.id});
      continue;
    }
    std::vector<int> vs;
    bool known = true;
    for (const auto& v : s.vertices) {
      auto it = vidx.find(v);
      if (it == vidx.end()) {
        rep.add("unknown vertex", "stratum refers to unknown vertex " + v, {s.id});
        known = false;
      } else {
        vs.push_back(it->second);
      }
    }
    if (!known) continue;
    std::set<int> distinct(vs.begin(), vs.end());
    if (distinct.size() != vs.size()) rep.add("repeated vertex", "vertex repeated in stratum", {s.id});
    if (vs.size() == 1) ++vertex_strata[vs[0]];
    if (acyclic) {
      for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          if (get_bit(less_than[vs[j]], vs[i])) continue;
          if (get_bit(less_than[vs[i]], vs[j]))
            rep.add("vertices not increasing", "vertices of stratum not listed in increasing order", {s.id});
          else
            rep.add("order not linear", "vertices " + s.vertices[i] + " and " + s.vertices[j] +
                                            " are incomparable", {s.id});
          i = vs.size();
          break;
        }
      }
    }
    const int n = static_cast<int>(s.vertices.size()) - 1;
    if (n == 0) {
      if (!s.faces.empty()) rep.add("face index", "codim-1 stratum lists faces", {s.id});
      continue;
    }
    for (const auto& [j, f] : s.faces)
      if (j < 0 || j > n) rep.add("face index", "face index " + std::to_string(j) + " out of range", {s.id});
    for (int j = 0; j <= n; ++j) {
      auto it = s.faces.find(j);
      if (it == s.faces.end()) {
        rep.add("missing face", "face " + std::to_string(j) + " missing", {s.id});
        continue;
      }
      auto jt = sidx.find(it->second);
      if (jt == sidx.end()) {
        rep.add("unknown stratum", "face " + std::to_string(j) + " refers to unknown id " + it->second, {s.id});
        continue;
      }
      std::vector<std::string> expect = s.vertices;
      expect.erase(expect.begin() + j);
      if (data.strata[jt->second].vertices != expect)
        rep.add("face vertex mismatch",
                "face " + std::to_string(j) + " = " + it->second + " has vertices [" +
                    join_ids(data.strata[jt->second].vertices) + "], expected [" + join_ids(expect) + "]",
                {s.id, it->second});
    }
  }
  for (int v = 0; v < nv; ++v) {
    if (vertex_strata[v] == 0) rep.add("missing vertex stratum", "vertex has no codim-1 stratum", {data.vertices[v].id});
    if (vertex_strata[v] > 1) rep.add("duplicate vertex stratum", "vertex has several codim-1 strata", {data.vertices[v].id});
  }
  if (!rep.ok()) return rep;

  // d_i d_j = d_{j-1} d_i for i < j
  auto face = [&](const StratumData& s, int j) -> const StratumData& {
    return data.strata[sidx.at(s.faces.at(j))];
  };
  for (const auto& s : data.strata) {
    const int n = static_cast<int>(s.vertices.size()) - 1;
    for (int j = 1; j <= n && n >= 2; ++j)
      for (int i = 0; i < j; ++i) {
        const auto& a = face(face(s, j), i);
        const auto& b = face(face(s, i), j - 1);
        if (a.id != b.id)
          rep.add("simplicial identity", "d" + std::to_string(i) + " d" + std::to_string(j) + " = " + a.id +
                                             " but d" + std::to_string(j - 1) + " d" + std::to_string(i) + " = " +
                                             b.id,
                  {s.id});
      }
  }
  return rep;
}

std::shared_ptr<const StratifiedComplex> StratifiedComplex::make(ComplexData data) {
  data = with_vertex_strata(std::move(data));
  ValidationReport rep = validate_complex(data);
  if (!rep.ok()) throw InputError("invalid complex:\n" + rep.to_string());

  std::shared_ptr<StratifiedComplex> c(new StratifiedComplex());
  c->name_ = data.name;
  c->base_ = data.base;
  c->simplicial_ = !data.poset;

  std::sort(data.vertices.begin(), data.vertices.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  std::sort(data.strata.begin(), data.strata.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < data.vertices.size(); ++i) c->vertex_index_[data.vertices[i].id] = static_cast<int>(i);
  for (std::size_t i = 0; i < data.strata.size(); ++i) c->stratum_index_[data.strata[i].id] = static_cast<int>(i);

  const int nv = static_cast<int>(data.vertices.size());
  std::vector<std::optional<long long>> keys(nv);
  std::vector<std::vector<int>> below(nv);
  for (int i = 0; i < nv; ++i) {
    Vertex v;
    v.id = data.vertices[i].id;
    v.key = data.vertices[i].key;
    for (const auto& b : data.vertices[i].below) v.below.push_back(c->vertex_index_.at(b));
    std::sort(v.below.begin(), v.below.end());
    v.below.erase(std::unique(v.below.begin(), v.below.end()), v.below.end());
    keys[i] = v.key;
    below[i] = v.below;
    c->vertices_.push_back(std::move(v));
  }
  order_closure(keys, below, c->vertex_below_);

  const int ns = static_cast<int>(data.strata.size());
  c->vertex_stratum_.assign(nv, -1);
  for (int i = 0; i < ns; ++i) {
    const auto& d = data.strata[i];
    Stratum s;
    s.id = d.id;
    s.label = ClassLabel(d.label.empty() ? d.id : d.label);
    s.flags = d.flags;
    if (data.poset) {
      s.codim = *d.codim;
      for (const auto& cv : d.covers) s.covers.push_back(c->stratum_index_.at(cv));
    } else {
      for (const auto& v : d.vertices) s.vertices.push_back(c->vertex_index_.at(v));
      s.codim = static_cast<int>(s.vertices.size());
      for (const auto& [j, f] : d.faces) s.faces.push_back(c->stratum_index_.at(f));
      s.covers = s.faces;
      if (s.codim == 1) c->vertex_stratum_[s.vertices[0]] = i;
    }
    std::sort(s.covers.begin(), s.covers.end());
    s.covers.erase(std::unique(s.covers.begin(), s.covers.end()), s.covers.end());
    c->max_codim_ = std::max(c->max_codim_, s.codim);
    c->strata_.push_back(std::move(s));
  }

  c->by_codim_.assign(c->max_codim_ + 1, {});
  for (int i = 0; i < ns; ++i) c->by_codim_[c->strata_[i].codim].push_back(i);

  const std::size_t words = (ns + 63) / 64;
  c->below_.assign(ns, Bits(words, 0));
  for (int k = 1; k <= c->max_codim_; ++k)
    for (int s : c->by_codim_[k]) {
      set_bit(c->below_[s], s);
      for (int f : c->strata_[s].covers) or_into(c->below_[s], c->below_[f]);
    }
  c->up_.assign(ns, {});
  for (int t = 0; t < ns; ++t)
    for (int s = 0; s < ns; ++s)
      if (get_bit(c->below_[t], s)) c->up_[s].push_back(t);

  if (c->simplicial_) {
    c->face_table_.assign(ns, {});
    for (int k = 1; k <= c->max_codim_; ++k) {
      if (k > 24) throw InputError("stratum codim too large for face tables");
      for (int s : c->by_codim_[k]) {
        auto& table = c->face_table_[s];
        const std::uint32_t full = (1u << k) - 1u;
        table.assign(full + 1, -1);
        table[full] = s;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
          int j = std::countr_one(mask);
          table[mask] = c->face_table_[c->strata_[s].faces[j]][drop_bit(mask, j)];
        }
      }
    }
  }
  return c;
}

ComplexData StratifiedComplex::to_data() const {
  ComplexData d;
  d.name = name_;
  d.base = base_;
  d.poset = !simplicial_;
  for (const auto& v : vertices_) {
    VertexData vd;
    vd.id = v.id;
    vd.key = v.key;
    for (int b : v.below) vd.below.push_back(vertices_[b].id);
    int s = vertex_stratum_.empty() ? -1 : vertex_stratum_[&v - vertices_.data()];
    vd.label = s >= 0 ? strata_[s].label.symbol() : std::string();
    d.vertices.push_back(std::move(vd));
  }
  for (const auto& s : strata_) {
    StratumData sd;
    sd.id = s.id;
    sd.label = s.label.symbol();
    sd.flags = s.flags;
    if (simplicial_) {
      for (int v : s.vertices) sd.vertices.push_back(vertices_[v].id);
      for (std::size_t j = 0; j < s.faces.size(); ++j) sd.faces[static_cast<int>(j)] = strata_[s.faces[j]].id;
    } else {
      sd.codim = s.codim;
      for (int cv : s.covers) sd.covers.push_back(strata_[cv].id);
    }
    d.strata.push_back(std::move(sd));
  }
  return d;
}

std::optional<int> StratifiedComplex::find_vertex(std::string_view id) const {
  auto it = vertex_index_.find(std::string(id));
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> StratifiedComplex::find_stratum(std::string_view id) const {
  auto it = stratum_index_.find(std::string(id));
  if (it == stratum_index_.end()) return std::nullopt;
  return it->second;
}

int StratifiedComplex::stratum_index(std::string_view id) const {
  auto s = find_stratum(id);
  if (!s) throw InputError("unknown stratum id " + std::string(id));
  return *s;
}

bool StratifiedComplex::vertex_less(int u, int v) const { return get_bit(vertex_below_[v], u); }

const std::vector<int>& StratifiedComplex::of_codim(int k) const {
  static const std::vector<int> none;
  if (k < 0 || k >= static_cast<int>(by_codim_.size())) return none;
  return by_codim_[k];
}

int StratifiedComplex::face_with_positions(int s, std::uint32_t mask) const {
  return face_table_[s][mask];
}

int StratifiedComplex::position(int s, int v) const {
  const auto& vs = strata_[s].vertices;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == v) return static_cast<int>(i);
  return -1;
}

ValidationReport validate_complex(const StratifiedComplex& c) { return validate_complex(c.to_data()); }

std::vector<Chain> enumerate_chains(const StratifiedComplex& c, int n, ChainMode mode) {
  std::vector<Chain> out;
  if (n < 0) return out;
  Chain cur;
  std::function<void()> rec = [&]() {
    if (static_cast<int>(cur.size()) == n + 1) {
      out.push_back(cur);
      return;
    }
    if (cur.empty()) {
      for (int s = 0; s < c.stratum_count(); ++s) {
        cur.push_back(s);
        rec();
        cur.pop_back();
      }
      return;
    }
    const int last = cur.back();
    for (int t : c.up(last)) {
      if (t == last && mode == ChainMode::Nondegenerate) continue;
      // nondegenerate chains need room for the remaining strictly larger entries
      if (mode == ChainMode::Nondegenerate &&
          c.stratum(t).codim + (n - static_cast<int>(cur.size())) > c.max_codim())
        continue;
      cur.push_back(t);
      rec();
      cur.pop_back();
    }
  };
  rec();
  return out;
}

bool is_degenerate(const Chain& ch) {
  for (std::size_t i = 0; i + 1 < ch.size(); ++i)
    if (ch[i] == ch[i + 1]) return true;
  return false;
}

Chain face_of_chain(const Chain& ch, int j) {
  if (j < 0 || j >= static_cast<int>(ch.size())) throw std::out_of_range("face index out of range");
  Chain out = ch;
  out.erase(out.begin() + j);
  return out;
}

Chain degeneracy_of_chain(const Chain& ch, int i) {
  if (i < 0 || i >= static_cast<int>(ch.size())) throw std::out_of_range("degeneracy index out of range");
  Chain out = ch;
  out.insert(out.begin() + i, ch[i]);
  return out;
}

std::string chain_name(const StratifiedComplex& c, const Chain& ch) {
  std::string out = "(";
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i) out += ch[i] == ch[i - 1] ? "=" : "<";
    out += c.id(ch[i]);
  }
  return out + ")";
}

std::vector<ExtendedStratum> enumerate_extended_strata(const StratifiedComplex& c, int n) {
  std::vector<ExtendedStratum> out;
  if (n < 0 || !c.simplicial()) return out;
  for (int s = 0; s < c.stratum_count(); ++s) {
    const auto& vs = c.stratum(s).vertices;
    const int k = static_cast<int>(vs.size());
    if (k > n + 1) continue;
    // weakly increasing surjective words: choose multiplicities >= 1 summing to n+1
    std::vector<int> mult(k, 1);
    std::function<void(int, int)> rec = [&](int pos, int left) {
      if (pos == k - 1) {
        mult[pos] = 1 + left;
        ExtendedStratum e{s, {}};
        for (int i = 0; i < k; ++i) e.word.insert(e.word.end(), mult[i], vs[i]);
        out.push_back(std::move(e));
        return;
      }
      for (int extra = left; extra >= 0; --extra) {
        mult[pos] = 1 + extra;
        rec(pos + 1, left - extra);
      }
    };
    rec(0, n + 1 - k);
  }
  return out;
}

std::string extended_name(const StratifiedComplex& c, const ExtendedStratum& e) {
  std::string out = "[";
  for (std::size_t i = 0; i < e.word.size(); ++i) out += (i ? "," : "") + c.vertex(e.word[i]).id;
  return out + "]_" + c.id(e.base);
}

StarLink star_link(const StratifiedComplex& c, int s) {
  if (s < 0 || s >= c.stratum_count()) throw InputError("unknown stratum");
  StarLink r;
  r.star = c.up(s);
  std::vector<char> closed(c.stratum_count(), 0);
  for (int t : r.star)
    for (int u = 0; u < c.stratum_count(); ++u)
      if (c.leq(u, t)) closed[u] = 1;
  std::vector<char> in_star(c.stratum_count(), 0);
  for (int t : r.star) in_star[t] = 1;
  for (int u = 0; u < c.stratum_count(); ++u) {
    if (!closed[u]) continue;
    r.closed_star.push_back(u);
    if (!in_star[u]) r.link.push_back(u);
  }
  return r;
}

std::vector<int> complete_flag(const StratifiedComplex& c, int s0, int s1) {
  if (!c.leq(s0, s1)) throw InputError("complete_flag: " + c.id(s0) + " is not below " + c.id(s1));
  std::vector<int> flag{s0};
  int cur = s0;
  while (cur != s1) {
    int next = -1;
    for (int t : c.up(cur))
      if (c.stratum(t).codim == c.stratum(cur).codim + 1 && c.leq(t, s1)) {
        next = t;
        break;
      }
    if (next < 0) throw MathError("complete_flag: poset is not graded between strata");
    flag.push_back(next);
    cur = next;
  }
  return flag;
}

std::vector<int> linear_extension(const StratifiedComplex& c) {
  const int n = c.vertex_count();
  auto before = [&](int a, int b) {
    const auto& ka = c.vertex(a).key;
    const auto& kb = c.vertex(b).key;
    if (ka && kb && *ka != *kb) return *ka < *kb;
    if (ka.has_value() != kb.has_value()) return ka.has_value();
    return a < b;
  };
  std::vector<int> indeg(n, 0);
  for (int v = 0; v < n; ++v)
    for (int u = 0; u < n; ++u)
      if (c.vertex_less(u, v)) ++indeg[v];
  auto cmp = [&](int a, int b) { return before(b, a); };
  std::priority_queue<int, std::vector<int>, decltype(cmp)> ready(cmp);
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) ready.push(v);
  std::vector<int> out;
  while (!ready.empty()) {
    int v = ready.top();
    ready.pop();
    out.push_back(v);
    for (int w = 0; w < n; ++w)
      if (c.vertex_less(v, w) && --indeg[w] == 0) ready.push(w);
  }
  return out;
}

ComplexPtr reorder_vertices(const StratifiedComplex& c, const std::vector<long long>& keys) {
  ComplexData d = c.to_data();
  for (int v = 0; v < c.vertex_count(); ++v) {
    d.vertices[v].key = keys[v];
    d.vertices[v].below.clear();
  }
  for (int s = 0; s < c.stratum_count(); ++s) {
    const auto& st = c.stratum(s);
    auto& sd = d.strata[s];
    std::vector<int> perm(st.vertices.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int a, int b) { return keys[st.vertices[a]] < keys[st.vertices[b]]; });
    sd.vertices.clear();
    sd.faces.clear();
    for (std::size_t j = 0; j < perm.size(); ++j) {
      sd.vertices.push_back(c.vertex(st.vertices[perm[j]]).id);
      if (st.codim > 1) sd.faces[static_cast<int>(j)] = c.id(st.faces[perm[j]]);
    }
  }
  return StratifiedComplex::make(std::move(d));
}

PosetMap identity_poset_map(ComplexPtr c) {
  PosetMap f{c, c, std::vector<int>(c->stratum_count())};
  std::iota(f.assignment.begin(), f.assignment.end(), 0);
  return f;
}

PosetMap compose(const PosetMap& f, const PosetMap& g) {
  if (g.target != f.source) throw InputError("compose: endpoints do not match");
  PosetMap h{g.source, f.target, std::vector<int>(g.assignment.size())};
  for (std::size_t i = 0; i < g.assignment.size(); ++i) h.assignment[i] = f.assignment[g.assignment[i]];
  return h;
}

namespace {

void check_monotone(const PosetMap& f, ValidationReport& rep, const std::string& name) {
  if (!f.source || !f.target) {
    rep.add("mismatched complexes", name + " lacks endpoints");
    return;
  }
  const auto& s = *f.source;
  const auto& t = *f.target;
  if (static_cast<int>(f.assignment.size()) != s.stratum_count()) {
    rep.add("mismatched complexes", name + " assignment size differs from source");
    return;
  }
  for (int a : f.assignment)
    if (a < 0 || a >= t.stratum_count()) {
      rep.add("mismatched complexes", name + " assigns outside the target");
      return;
    }
  for (int x = 0; x < s.stratum_count(); ++x)
    for (int y : s.up(x))
      if (!t.leq(f.assignment[x], f.assignment[y]))
        rep.add("not monotone", name + " breaks " + s.id(x) + " <= " + s.id(y), {s.id(x), s.id(y)});
}

}  // namespace

ValidationReport validate_poset_map(const PosetMap& f, const PosetMap* g, const PosetMap* expected) {
  ValidationReport rep;
  check_monotone(f, rep, "f");
  if (!g) return rep;
  check_monotone(*g, rep, "g");
  if (g->target != f.source) {
    rep.add("mismatched complexes", "target of g is not the source of f");
    return rep;
  }
  if (!expected || !rep.ok()) return rep;
  if (expected->source != g->source || expected->target != f.target) {
    rep.add("mismatched complexes", "composite endpoints differ");
    return rep;
  }
  PosetMap h = compose(f, *g);
  for (std::size_t i = 0; i < h.assignment.size(); ++i)
    if (h.assignment[i] != expected->assignment[i])
      rep.add("composite mismatch", "f∘g sends " + g->source->id(static_cast<int>(i)) + " to " +
                                        f.target->id(h.assignment[i]) + ", expected " +
                                        f.target->id(expected->assignment[i]),
              {g->source->id(static_cast<int>(i))});
  return rep;
}

}  // namespace sbc
