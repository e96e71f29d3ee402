#include "sbc/builders.hpp"

#include <algorithm>
#include <numeric>

namespace sbc {

namespace {

using Triplets = std::vector<Eigen::Triplet<long long>>;

Morphism from_triplets(const FreeObject& source, const FreeObject& target, const Triplets& t) {
  Morphism::Matrix m(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(source.size()));
  m.setFromTriplets(t.begin(), t.end());
  return Morphism(source, target, std::move(m));
}

std::string cech_key_name(const StratifiedComplex& c, const std::vector<int>& key) {
  ExtendedStratum e{key[0], std::vector<int>(key.begin() + 1, key.end())};
  return extended_name(c, e);
}

std::shared_ptr<BuiltComplex> start(TablePtr table, std::uint32_t space, ComplexKind kind, BuildMode mode,
                                    std::shared_ptr<CellIndex> index) {
  auto b = std::make_shared<BuiltComplex>();
  b->kind = kind;
  b->extended = mode.extended;
  b->complex = table->complex_ptr(space);
  b->space = space;
  for (std::size_t n = 0; n < index->cells.size(); ++n) {
    auto& lk = index->lookup.emplace_back();
    lk.reserve(index->cells[n].size() * 2);
    for (std::size_t i = 0; i < index->cells[n].size(); ++i) lk.emplace(index->cells[n][i], static_cast<int>(i));
  }
  b->index = index;
  return b;
}

void finish(std::shared_ptr<BuiltComplex>& b, std::shared_ptr<ChainComplex> chain) {
  ComplexPtr c = b->complex;
  std::shared_ptr<const CellIndex> index = b->index;
  const ComplexKind kind = b->kind;
  chain->cell_name = [c, index, kind](int degree, int i) {
    const auto& key = index->cells[degree][i];
    return kind == ComplexKind::Subdivision ? chain_name(*c, key) : cech_key_name(*c, key);
  };
  b->chain = std::move(chain);
}

bool has_repeat(const std::vector<int>& w, std::size_t from = 0) {
  for (std::size_t i = from; i + 1 < w.size(); ++i)
    if (w[i] == w[i + 1]) return true;
  return false;
}

}  // namespace

int BuiltComplex::rank(int degree) const {
  if (degree < 0 || degree > top()) return 0;
  return static_cast<int>(index->cells[degree].size());
}

int BuiltComplex::index_of(int degree, const std::vector<int>& key) const {
  if (degree < 0 || degree >= static_cast<int>(index->lookup.size())) return -1;
  auto it = index->lookup[degree].find(key);
  return it == index->lookup[degree].end() ? -1 : it->second;
}

std::string BuiltComplex::cell_name(int degree, int i) const { return chain->name(degree, i); }

int default_bound(const StratifiedComplex& c) { return c.max_codim() + 2; }

const std::vector<Permutation>& permutations(int k) {
  static const std::vector<std::vector<Permutation>> all = [] {
    std::vector<std::vector<Permutation>> out(9);
    for (int m = 0; m <= 8; ++m) {
      std::vector<std::uint8_t> p(m);
      std::iota(p.begin(), p.end(), 0);
      do {
        int inv = 0;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (p[i] > p[j]) ++inv;
        out[m].push_back({p, inv % 2 ? -1 : 1});
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return out;
  }();
  if (k < 0 || k > 8) throw InputError("permutations: size out of range");
  return all[k];
}

BuiltPtr build_sd(TablePtr table, std::uint32_t space, BuildMode mode) {
  const auto& c = table->complex(space);
  const int top = mode.extended ? (mode.bound < 0 ? default_bound(c) : mode.bound) : std::max(0, c.max_codim() - 1);
  auto index = std::make_shared<CellIndex>();
  for (int n = 0; n <= top; ++n)
    index->cells.push_back(enumerate_chains(c, n, mode.extended ? ChainMode::Extended : ChainMode::Nondegenerate));
  auto b = start(table, space, ComplexKind::Subdivision, mode, index);

  auto chain = std::make_shared<ChainComplex>();
  chain->table = table;
  chain->truncated = mode.extended;
  for (int n = 0; n <= top; ++n) {
    FreeObject o;
    for (const auto& ch : index->cells[n]) o.summands.push_back({space, static_cast<std::uint32_t>(ch.back())});
    chain->terms.push_back(std::move(o));
  }
  chain->differentials.push_back(Morphism::zero(chain->terms[0], {}));
  for (int n = 1; n <= top; ++n) {
    Triplets t;
    const auto& cells = index->cells[n];
    for (std::size_t col = 0; col < cells.size(); ++col)
      for (int j = 0; j <= n; ++j) {
        int row = b->index_of(n - 1, face_of_chain(cells[col], j));
        if (row < 0) throw MathError("build_sd: face of chain missing");
        t.emplace_back(row, static_cast<int>(col), j % 2 ? -1 : 1);
      }
    chain->differentials.push_back(from_triplets(chain->terms[n], chain->terms[n - 1], t));
  }
  finish(b, chain);
  return b;
}

BuiltPtr build_cech(TablePtr table, std::uint32_t space, BuildMode mode) {
  const auto& c = table->complex(space);
  if (!c.simplicial()) throw InputError("Cech complex needs a simplicial complex");
  const int top = mode.extended ? (mode.bound < 0 ? default_bound(c) : mode.bound) : std::max(0, c.max_codim() - 1);
  auto index = std::make_shared<CellIndex>();
  for (int n = 0; n <= top; ++n) {
    auto& cells = index->cells.emplace_back();
    if (mode.extended) {
      for (auto& e : enumerate_extended_strata(c, n)) {
        std::vector<int> key{e.base};
        key.insert(key.end(), e.word.begin(), e.word.end());
        cells.push_back(std::move(key));
      }
    } else {
      for (int s : c.of_codim(n + 1)) {
        std::vector<int> key{s};
        key.insert(key.end(), c.stratum(s).vertices.begin(), c.stratum(s).vertices.end());
        cells.push_back(std::move(key));
      }
    }
  }
  auto b = start(table, space, ComplexKind::Cech, mode, index);

  auto chain = std::make_shared<ChainComplex>();
  chain->table = table;
  chain->truncated = mode.extended;
  for (int n = 0; n <= top; ++n) {
    FreeObject o;
    for (const auto& key : index->cells[n]) o.summands.push_back({space, static_cast<std::uint32_t>(key[0])});
    chain->terms.push_back(std::move(o));
  }
  chain->differentials.push_back(Morphism::zero(chain->terms[0], {}));
  for (int n = 1; n <= top; ++n) {
    Triplets t;
    const auto& cells = index->cells[n];
    std::vector<int> face;
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const auto& key = cells[col];
      const int s = key[0];
      for (int j = 0; j <= n; ++j) {
        const int v = key[1 + j];
        const bool repeated = (j > 0 && key[j] == v) || (j < n && key[2 + j] == v);
        face.assign(key.begin(), key.end());
        face.erase(face.begin() + 1 + j);
        face[0] = repeated ? s : c.stratum(s).faces[c.position(s, v)];
        int row = b->index_of(n - 1, face);
        if (row < 0) throw MathError("build_cech: face cell missing");
        t.emplace_back(row, static_cast<int>(col), j % 2 ? -1 : 1);
      }
    }
    chain->differentials.push_back(from_triplets(chain->terms[n], chain->terms[n - 1], t));
  }
  finish(b, chain);
  return b;
}

BuiltPtr build_sd(ComplexPtr c, BuildMode mode) { return build_sd(make_arrow_table(c), 0, mode); }
BuiltPtr build_cech(ComplexPtr c, BuildMode mode) { return build_cech(make_arrow_table(c), 0, mode); }

DegeneracySplitting degeneracy_splitting(BuiltPtr ext) {
  if (!ext->extended) throw InputError("degeneracy_splitting needs an extended complex");
  TablePtr table = ext->chain->table;
  DegeneracySplitting out;
  out.extended = ext;
  out.bounded = ext->kind == ComplexKind::Subdivision ? build_sd(table, ext->space, BuildMode::bounded())
                                                      : build_cech(table, ext->space, BuildMode::bounded());
  const auto& bnd = *out.bounded;
  const int N = ext->top();
  // nondegenerate cells of the extended complex, by degree
  out.iota = ChainMap{bnd.chain, ext->chain, {}};
  out.pi = ChainMap{ext->chain, bnd.chain, {}};
  for (int n = 0; n <= N; ++n) {
    Triplets ti, tp;
    const FreeObject src_b = bnd.chain->term(n);
    if (n <= bnd.top())
      for (std::size_t i = 0; i < bnd.cells(n).size(); ++i) {
        int j = ext->index_of(n, bnd.cells(n)[i]);
        if (j < 0) throw MathError("degeneracy_splitting: nondegenerate cell missing from extended complex");
        ti.emplace_back(j, static_cast<int>(i), 1);
        tp.emplace_back(static_cast<int>(i), j, 1);
      }
    out.iota.components.push_back(from_triplets(src_b, ext->chain->term(n), ti));
    out.pi.components.push_back(from_triplets(ext->chain->term(n), src_b, tp));
  }
  ChainMap ip = compose_chain_maps(out.iota, out.pi);
  out.homotopy = ChainHomotopy{identity_map(ext->chain), ip, {}};
  // H(y) = (-1)^k s_k y when the first run of repeated entries starts at k with even length
  const std::size_t offset = ext->kind == ComplexKind::Cech ? 1 : 0;
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const auto& cells = ext->cells(n);
    std::vector<int> up;
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const auto& key = cells[col];
      std::size_t k = offset;
      while (k + 1 < key.size() && key[k] != key[k + 1]) ++k;
      if (k + 1 >= key.size()) continue;
      std::size_t len = 1;
      while (k + len < key.size() && key[k + len] == key[k]) ++len;
      if (len % 2) continue;
      up.assign(key.begin(), key.end());
      up.insert(up.begin() + k, key[k]);
      int row = ext->index_of(n + 1, up);
      if (row < 0) throw MathError("degeneracy_splitting: degenerate cell missing");
      t.emplace_back(row, static_cast<int>(col), (k - offset) % 2 ? -1 : 1);
    }
    out.homotopy.components.push_back(from_triplets(ext->chain->term(n), ext->chain->term(n + 1), t));
  }
  return out;
}

ChainMap build_last_vertex(BuiltPtr sd, BuiltPtr cech) {
  if (sd->kind != ComplexKind::Subdivision || cech->kind != ComplexKind::Cech)
    throw InputError("build_last_vertex: expects subdivision then Cech complex");
  if (sd->complex != cech->complex) throw InputError("build_last_vertex: complexes differ");
  if (sd->extended && !cech->extended) throw InputError("build_last_vertex: extended source needs extended target");
  const auto& c = *sd->complex;
  ChainMap f{sd->chain, cech->chain, {}};
  const int top = cech->extended ? std::min(sd->top(), cech->top()) : sd->top();
  std::vector<int> key;
  for (int n = 0; n <= top; ++n) {
    Triplets t;
    const auto& cells = sd->cells(n);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const auto& ch = cells[col];
      const int last = ch.back();
      std::uint32_t mask = 0;
      key.assign(1, 0);
      for (int s : ch) {
        const int v = c.max_vertex(s);
        mask |= 1u << c.position(last, v);
        key.push_back(v);
      }
      key[0] = c.face_with_positions(last, mask);
      int row = cech->index_of(n, key);
      if (row < 0) {
        if (cech->extended) throw MathError("build_last_vertex: extended stratum missing");
        continue;  // degenerate word, killed by the projection
      }
      t.emplace_back(row, static_cast<int>(col), 1);
    }
    f.components.push_back(from_triplets(sd->chain->term(n), cech->chain->term(n), t));
  }
  return f;
}

ChainMap build_subdivision_map(BuiltPtr cech, BuiltPtr sd) {
  if (sd->kind != ComplexKind::Subdivision || cech->kind != ComplexKind::Cech)
    throw InputError("build_subdivision_map: expects Cech then subdivision complex");
  if (sd->complex != cech->complex) throw InputError("build_subdivision_map: complexes differ");
  const auto& c = *sd->complex;
  ChainMap f{cech->chain, sd->chain, {}};
  const int top = sd->extended ? std::min(sd->top(), cech->top()) : cech->top();
  Chain ch;
  for (int n = 0; n <= top; ++n) {
    Triplets t;
    const auto& cells = cech->cells(n);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const auto& key = cells[col];
      if (has_repeat(key, 1)) continue;  // terms cancel in pairs
      const int s = key[0];
      for (const auto& g : permutations(n + 1)) {
        ch.clear();
        std::uint32_t mask = 0;
        for (int k = 0; k <= n; ++k) {
          mask |= 1u << g.image[k];
          ch.push_back(c.face_with_positions(s, mask));
        }
        int row = sd->index_of(n, ch);
        if (row < 0) throw MathError("build_subdivision_map: chain missing");
        t.emplace_back(row, static_cast<int>(col), g.sign);
      }
    }
    f.components.push_back(from_triplets(cech->chain->term(n), sd->chain->term(n), t));
  }
  return f;
}

namespace {

// Nonvanishing terms of h on a chain: (i, sign, chain of length n+2).
template <class Emit>
void homotopy_terms(const StratifiedComplex& c, const Chain& ch, Chain& scratch, Emit&& emit) {
  const int n = static_cast<int>(ch.size()) - 1;
  const int last = ch.back();
  std::uint32_t pos[32];
  for (int k = 0; k <= n; ++k) pos[k] = static_cast<std::uint32_t>(c.position(last, c.max_vertex(ch[k])));
  std::uint32_t seen = 0;
  for (int i = 0; i <= n; ++i) {
    if (seen & (1u << pos[i])) break;  // repeated maximum: the sum over g cancels from here on
    seen |= 1u << pos[i];
    for (const auto& g : permutations(i + 1)) {
      scratch.clear();
      std::uint32_t mask = 0;
      for (int m = 0; m <= i; ++m) {
        mask |= 1u << pos[g.image[m]];
        scratch.push_back(c.face_with_positions(last, mask));
      }
      scratch.insert(scratch.end(), ch.begin() + i, ch.end());
      emit(i, (i % 2 ? -1 : 1) * g.sign, scratch);
    }
  }
}

}  // namespace

ComparisonHomotopy build_comparison_homotopy(BuiltPtr sd, const ChainMap& sd_lambda, bool with_parts) {
  if (sd->kind != ComplexKind::Subdivision || !sd->extended)
    throw InputError("build_comparison_homotopy needs the extended subdivision complex");
  const auto& c = *sd->complex;
  ComparisonHomotopy out;
  out.homotopy = ChainHomotopy{identity_map(sd->chain), sd_lambda, {}};
  const int N = sd->top();
  Chain scratch, face;
  for (int n = 0; n < N; ++n) {
    Triplets t;
    const auto& cells = sd->cells(n);
    for (std::size_t col = 0; col < cells.size(); ++col)
      homotopy_terms(c, cells[col], scratch, [&](int, int sign, const Chain& term) {
        int row = sd->index_of(n + 1, term);
        if (row < 0) throw MathError("build_comparison_homotopy: chain missing");
        t.emplace_back(row, static_cast<int>(col), sign);
      });
    out.homotopy.components.push_back(from_triplets(sd->chain->term(n), sd->chain->term(n + 1), t));
  }
  if (!with_parts) return out;

  auto& P = out.parts;
  for (int n = 0; n < N; ++n) {
    Triplets A, B, C, D, UD, LD, LT, UT;
    const auto& cells = sd->cells(n);
    auto put = [&](Triplets& part, const Chain& target, int col, int sign) {
      int row = sd->index_of(n, target);
      if (row < 0) throw MathError("build_comparison_homotopy: face chain missing");
      part.emplace_back(row, col, sign);
    };
    for (std::size_t col = 0; col < cells.size(); ++col) {
      const int cl = static_cast<int>(col);
      // d h, indexed by (i, j)
      homotopy_terms(c, cells[col], scratch, [&](int i, int sign, const Chain& term) {
        for (int j = 0; j <= n + 1; ++j) {
          face = face_of_chain(term, j);
          const int s = sign * (j % 2 ? -1 : 1);
          if (i == 0 && j == 0) put(A, face, cl, s);
          else if (i == n && j == n + 1) put(B, face, cl, s);
          else if (i > j) put(C, face, cl, s);
          else if (j >= i + 2) put(D, face, cl, s);
          else if (j == i + 1) put(UD, face, cl, s);
          else put(LD, face, cl, s);
        }
      });
      // h d, indexed by (i, j)
      for (int j = 0; j <= n && n > 0; ++j) {
        Chain dj = face_of_chain(cells[col], j);
        const int sj = j % 2 ? -1 : 1;
        Chain inner;
        homotopy_terms(c, dj, inner, [&](int i, int sign, const Chain& term) {
          put(i >= j ? LT : UT, term, cl, sign * sj);
        });
      }
    }
    const FreeObject& o = sd->chain->terms[n];
    P.A.push_back(from_triplets(o, o, A));
    P.B.push_back(from_triplets(o, o, B));
    P.C.push_back(from_triplets(o, o, C));
    P.D.push_back(from_triplets(o, o, D));
    P.UD.push_back(from_triplets(o, o, UD));
    P.LD.push_back(from_triplets(o, o, LD));
    P.LT.push_back(from_triplets(o, o, LT));
    P.UT.push_back(from_triplets(o, o, UT));
  }
  return out;
}

ValidationReport check_sign_identities(const ComparisonHomotopy& h) {
  ValidationReport rep;
  const auto& P = h.parts;
  const auto& c = *h.homotopy.f.source;
  for (std::size_t n = 0; n < P.A.size(); ++n) {
    const int d = static_cast<int>(n);
    const FreeObject& o = c.terms[n];
    const Morphism zero = Morphism::zero(o, o);
    auto expect = [&](const Morphism& got, const Morphism& want, const std::string& what) {
      if (auto w = first_difference(got, want))
        rep.add("sign identity", what + " fails in degree " + std::to_string(n) + " at " + describe_entry(c, d, c, d, *w));
    };
    expect(P.A[n], Morphism::identity(o), "A = id");
    expect(P.B[n], -h.homotopy.g.components[n], "B = -sd+ lambda+");
    expect(P.C[n], zero, "C = 0");
    expect(P.D[n] + P.UT[n], zero, "D + UT = 0");
    expect(P.UD[n] + P.LD[n] + P.LT[n], zero, "UD + LD + LT = 0");
  }
  return rep;
}

ChainMap build_sd_pushforward(const PosetMap& f, BuiltPtr src, BuiltPtr tgt) {
  if (src->kind != ComplexKind::Subdivision || tgt->kind != ComplexKind::Subdivision)
    throw InputError("build_sd_pushforward: expects subdivision complexes");
  if (src->complex != f.source || tgt->complex != f.target)
    throw InputError("build_sd_pushforward: complexes do not match the poset map");
  if (src->chain->table != tgt->chain->table) throw InputError("build_sd_pushforward: complexes use different tables");
  const auto& table = *src->chain->table;
  ChainMap m{src->chain, tgt->chain, {}};
  const int top = tgt->extended ? std::min(src->top(), tgt->top()) : src->top();
  Chain image;
  for (int n = 0; n <= top; ++n) {
    Triplets t;
    const auto& cells = src->cells(n);
    for (std::size_t col = 0; col < cells.size(); ++col) {
      image.clear();
      for (int s : cells[col]) image.push_back(f.assignment[s]);
      NodeId a{src->space, static_cast<std::uint32_t>(cells[col].back())};
      NodeId b{tgt->space, static_cast<std::uint32_t>(image.back())};
      if (!table.reachable(a, b)) throw InputError("build_sd_pushforward: missing arrow " + table.name(a) + " -> " + table.name(b));
      int row = tgt->index_of(n, image);
      if (row < 0) {
        if (tgt->extended) throw MathError("build_sd_pushforward: image chain missing");
        continue;
      }
      t.emplace_back(row, static_cast<int>(col), 1);
    }
    m.components.push_back(from_triplets(src->chain->term(n), tgt->chain->term(n), t));
  }
  return m;
}

}  // namespace sbc
