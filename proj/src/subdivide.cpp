#include "sbc/subdivide.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace sbc {

namespace {

std::uint32_t drop_bit(std::uint32_t mask, int j) {
  std::uint32_t low = mask & ((1u << j) - 1u);
  std::uint32_t high = (mask >> (j + 1)) << j;
  return low | high;
}

std::string fresh_vertex_id(const StratifiedComplex& c) {
  for (int i = 0;; ++i) {
    std::string e = i ? "E" + std::to_string(i) : "E";
    bool clash = c.find_vertex(e) || c.find_stratum(e);
    for (int s = 0; s < c.stratum_count() && !clash; ++s)
      if (c.id(s).rfind(e + "^", 0) == 0) clash = true;
    if (!clash) return e;
  }
}

std::string exceptional_id(const std::string& e, const StratifiedComplex& c, int image, std::uint32_t mask,
                           const std::string& suffix) {
  if (mask == 0 && suffix.empty()) return e;
  std::string s = e + "^" + c.id(image) + "[";
  bool first = true;
  const auto& vs = c.stratum(image).vertices;
  for (std::size_t p = 0; p < vs.size(); ++p)
    if ((mask >> p) & 1u) {
      s += (first ? "" : ",") + c.vertex(static_cast<int>(vs[p])).id;
      first = false;
    }
  return s + "]" + suffix;
}

// Derived complex under construction, keyed by stratum id.
struct DerivedBuilder {
  ComplexData data;
  std::map<std::string, Provenance> prov;
  std::set<std::string> iso;
  std::vector<std::pair<std::string, std::string>> derived_isos;
};

// Copy of the base vertices (minus `dropped`) plus the exceptional vertex.
void add_vertices(DerivedBuilder& d, const StratifiedComplex& c, int dropped, const std::string& e,
                  const std::vector<int>& exceptional_below) {
  bool all_keyed = true;
  long long max_key = 0;
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (!c.vertex(v).key) all_keyed = false;
    else max_key = std::max(max_key, *c.vertex(v).key);
  }
  for (int v = 0; v < c.vertex_count(); ++v) {
    if (v == dropped) continue;
    VertexData vd;
    vd.id = c.vertex(v).id;
    vd.key = c.vertex(v).key;
    if (dropped >= 0 && !all_keyed) {
      for (int u = 0; u < c.vertex_count(); ++u)
        if (u != dropped && c.vertex_less(u, v)) vd.below.push_back(c.vertex(u).id);
    } else {
      for (int u : c.vertex(v).below) vd.below.push_back(c.vertex(u).id);
    }
    int s = c.vertex_stratum(v);
    vd.label = c.stratum(s).label.symbol();
    d.data.vertices.push_back(std::move(vd));
  }
  if (e.empty()) return;
  VertexData ev;
  ev.id = e;
  if (all_keyed) {
    ev.key = max_key + 1;
  } else {
    for (int u : exceptional_below)
      if (u != dropped) ev.below.push_back(c.vertex(u).id);
  }
  d.data.vertices.push_back(std::move(ev));
}

void add_strict(DerivedBuilder& d, const StratifiedComplex& c, const ComplexData& base_data, int s) {
  StratumData sd = base_data.strata[s];
  sd.flags = 0;
  d.data.strata.push_back(sd);
  Provenance p;
  p.kind = Provenance::Kind::StrictTransform;
  p.image = s;
  d.prov[sd.id] = p;
  d.iso.insert(sd.id);
  (void)c;
}

SubdivisionResult finish(SubdivisionKind kind, BlowupMode mode, ComplexPtr base, int center, bool reordered,
                         DerivedBuilder d) {
  SubdivisionResult r;
  r.kind = kind;
  r.mode = mode;
  r.base = base;
  r.center = center;
  r.reordered = reordered;
  const int b = center >= 0 && base->simplicial() ? base->stratum(center).vertices.back() : -1;
  if (center >= 0 && base->simplicial()) r.center_last_position = static_cast<int>(base->stratum(center).vertices.size()) - 1;
  for (auto& sd : d.data.strata) {
    const auto& p = d.prov.at(sd.id);
    sd.flags = 0;
    if (p.kind == Provenance::Kind::Exceptional) {
      sd.flags |= kExceptional;
      if (b >= 0 && ((p.mask >> base->position(p.image, b)) & 1u)) sd.flags |= kInLastDivisor;
    } else if (p.kind == Provenance::Kind::StrictTransform && b >= 0 && base->position(p.image, b) >= 0) {
      sd.flags |= kInLastDivisor;
    }
  }
  r.derived = StratifiedComplex::make(d.data);
  const auto& dc = *r.derived;
  r.provenance.resize(dc.stratum_count());
  r.pushforward = PosetMap{r.derived, base, std::vector<int>(dc.stratum_count(), -1)};
  for (int s = 0; s < dc.stratum_count(); ++s) {
    const auto& p = d.prov.at(dc.id(s));
    r.provenance[s] = p;
    r.pushforward.assignment[s] = p.image;
    if (d.iso.count(dc.id(s))) r.iso_tags.emplace_back(s, p.image);
    if (p.kind == Provenance::Kind::Exceptional) r.exceptional_index[{p.image, p.component, p.mask}] = s;
  }
  for (const auto& [a, bb] : d.derived_isos) r.derived_isos.emplace_back(dc.stratum_index(a), dc.stratum_index(bb));

  std::vector<PrimitiveArrow> extra = vertical_arrows(r.pushforward, 1, 0, r.iso_tags);
  for (const auto& [x, y] : r.derived_isos)
    extra.push_back({{1, static_cast<std::uint32_t>(x)}, {1, static_cast<std::uint32_t>(y)}, ArrowKind::Iso});
  r.table = std::make_shared<const ArrowTable>(std::vector<ComplexPtr>{base, r.derived}, std::move(extra));
  return r;
}

std::vector<int> star_vertices(const StratifiedComplex& c, int center) {
  std::set<int> vs;
  for (int t : c.up(center))
    for (int v : c.stratum(t).vertices) vs.insert(v);
  return {vs.begin(), vs.end()};
}

}  // namespace

int SubdivisionResult::exceptional(int image, int component, std::uint32_t mask) const {
  auto it = exceptional_index.find({image, component, mask});
  return it == exceptional_index.end() ? -1 : it->second;
}

SubdivisionResult barycentric(ComplexPtr c) {
  DerivedBuilder d;
  d.data.name = c->name();
  d.data.base = c->base();
  for (int s = 0; s < c->stratum_count(); ++s) {
    VertexData v;
    v.id = c->id(s);
    for (int f : c->stratum(s).covers) v.below.push_back(c->id(f));
    v.label = c->stratum(s).label.symbol();
    d.data.vertices.push_back(std::move(v));
  }
  auto chain_id = [&](const Chain& ch) {
    std::string id;
    for (std::size_t i = 0; i < ch.size(); ++i) id += (i ? "<" : "") + c->id(ch[i]);
    return id;
  };
  for (int n = 0; n < c->max_codim(); ++n)
    for (const auto& ch : enumerate_chains(*c, n, ChainMode::Nondegenerate)) {
      StratumData sd;
      sd.id = chain_id(ch);
      for (int s : ch) sd.vertices.push_back(c->id(s));
      if (n > 0)
        for (int j = 0; j <= n; ++j) sd.faces[j] = chain_id(face_of_chain(ch, j));
      sd.label = c->stratum(ch.back()).label.symbol();
      Provenance p;
      p.kind = Provenance::Kind::Chain;
      p.image = ch.back();
      p.chain = ch;
      d.prov[sd.id] = p;
      d.iso.insert(sd.id);
      d.data.strata.push_back(std::move(sd));
    }
  return finish(SubdivisionKind::Barycentric, BlowupMode::Proper, c, -1, false, std::move(d));
}

SubdivisionResult simplicialize(ComplexPtr c) { return barycentric(std::move(c)); }

BarycentricComparison barycentric_comparison(const SubdivisionResult& r) {
  if (r.kind != SubdivisionKind::Barycentric) throw InputError("barycentric_comparison: not a barycentric subdivision");
  BarycentricComparison out;
  out.cech_derived = build_cech(r.table, 1, BuildMode::bounded());
  out.sd_derived = build_sd(r.table, 1, BuildMode::bounded());
  out.sd_base = build_sd(r.table, 0, BuildMode::bounded());
  const auto& C = *out.cech_derived;
  const auto& S = *out.sd_base;
  out.phi = ChainMap{C.chain, S.chain, {}};
  const int top = std::max(C.top(), S.top());
  for (int n = 0; n <= top; ++n) {
    std::vector<Eigen::Triplet<long long>> t;
    if (n <= C.top())
      for (std::size_t col = 0; col < C.cells(n).size(); ++col) {
        const int s = C.cells(n)[col][0];
        int row = S.index_of(n, r.provenance[s].chain);
        if (row < 0) {
          out.report.add("phi", "chain of " + r.derived->id(s) + " is missing from Sd(base)");
          continue;
        }
        t.emplace_back(row, static_cast<int>(col), 1);
      }
    const FreeObject src = C.chain->term(n), tgt = S.chain->term(n);
    Morphism::Matrix m(static_cast<Eigen::Index>(tgt.size()), static_cast<Eigen::Index>(src.size()));
    m.setFromTriplets(t.begin(), t.end());
    out.phi.components.emplace_back(src, tgt, std::move(m));
  }
  out.report.merge(verify_chain_map(out.phi), "phi: ");
  out.report.merge(check_map_generators(out.phi), "phi: ");
  out.phi_inverse = ChainMap{S.chain, C.chain, {}};
  try {
    for (const auto& comp : out.phi.components) out.phi_inverse.components.push_back(invert_iso(comp, *r.table));
    out.report.merge(compare_maps(compose_chain_maps(out.phi, out.phi_inverse), identity_map(S.chain), "phi phi^-1 = id"));
    out.report.merge(compare_maps(compose_chain_maps(out.phi_inverse, out.phi), identity_map(C.chain), "phi^-1 phi = id"));
  } catch (const InputError& e) {
    out.report.add("phi", std::string("phi is not an isomorphism: ") + e.what());
  }
  out.lambda = build_last_vertex(out.sd_derived, out.cech_derived);
  out.pushforward = build_sd_pushforward(r.pushforward, out.sd_derived, out.sd_base);
  out.report.merge(compare_maps(compose_chain_maps(out.phi, out.lambda), out.pushforward, "phi lambda = Sd(f)"));
  out.report.merge(verify_chain_map(out.pushforward), "Sd(f): ");
  return out;
}

ComplexPtr adapted_order(ComplexPtr c, int center, bool* reordered) {
  const auto& v0 = c->stratum(center).vertices;
  const std::size_t k = v0.size();
  bool ok = true;
  for (int t : c->up(center)) {
    const auto& vs = c->stratum(t).vertices;
    std::vector<int> tail(vs.end() - static_cast<long>(k), vs.end());
    if (tail != v0) ok = false;
  }
  if (reordered) *reordered = !ok;
  if (ok) return c;
  std::vector<int> order = linear_extension(*c);
  std::vector<int> out;
  for (int v : order)
    if (std::find(v0.begin(), v0.end(), v) == v0.end()) out.push_back(v);
  out.insert(out.end(), v0.begin(), v0.end());
  std::vector<long long> keys(c->vertex_count());
  for (std::size_t i = 0; i < out.size(); ++i) keys[out[i]] = static_cast<long long>(i);
  return reorder_vertices(*c, keys);
}

SubdivisionResult star_subdivide(ComplexPtr input, int center) {
  if (!input->simplicial()) throw InputError("star_subdivide needs a simplicial complex");
  if (center < 0 || center >= input->stratum_count()) throw InputError("star_subdivide: unknown center");
  bool reordered = false;
  ComplexPtr base = adapted_order(input, center, &reordered);
  const auto& c = *base;
  const ComplexData base_data = c.to_data();
  const auto& v0 = c.stratum(center).vertices;
  const int k = static_cast<int>(v0.size());
  const std::string e = fresh_vertex_id(c);

  DerivedBuilder d;
  d.data.name = c.name();
  d.data.base = c.base();
  add_vertices(d, c, k == 1 ? v0[0] : -1, e, star_vertices(c, center));

  std::vector<char> in_star(c.stratum_count(), 0);
  for (int t : c.up(center)) in_star[t] = 1;
  for (int s = 0; s < c.stratum_count(); ++s)
    if (!in_star[s]) add_strict(d, c, base_data, s);

  // joins of E with the faces [T]_rho, T missing some vertex of the center
  for (int rho : c.up(center)) {
    const auto& vs = c.stratum(rho).vertices;
    const int n = static_cast<int>(vs.size()) - 1;
    const std::uint32_t inner = (1u << (n + 1 - k)) - 1u;
    const std::uint32_t full = (1u << (n + 1)) - 1u;
    for (std::uint32_t s = 0; s < (1u << k) - 1u; ++s) {
      const std::uint32_t mask = inner | (s << (n + 1 - k));
      StratumData sd;
      sd.id = exceptional_id(e, c, rho, mask, "");
      std::vector<int> kept;
      for (int p = 0; p <= n; ++p)
        if ((mask >> p) & 1u) kept.push_back(p);
      for (int p : kept) sd.vertices.push_back(c.vertex(vs[p]).id);
      sd.vertices.push_back(e);
      if (!kept.empty()) {
        for (std::size_t j = 0; j < kept.size(); ++j) {
          const int p = kept[j];
          const std::uint32_t rest = mask & ~(1u << p);
          if (p > n - k) {
            sd.faces[static_cast<int>(j)] = exceptional_id(e, c, rho, rest, "");
          } else {
            const int face = c.stratum(rho).faces[p];
            sd.faces[static_cast<int>(j)] = exceptional_id(e, c, face, drop_bit(rest, p), "");
          }
        }
        sd.faces[static_cast<int>(kept.size())] = c.id(c.face_with_positions(rho, mask));
      }
      sd.label = c.stratum(rho).label.symbol();
      Provenance p;
      p.kind = Provenance::Kind::Exceptional;
      p.image = rho;
      p.mask = mask;
      d.prov[sd.id] = p;
      d.iso.insert(sd.id);
      d.data.strata.push_back(std::move(sd));
      (void)full;
    }
  }
  return finish(SubdivisionKind::Star, BlowupMode::Proper, base, center, reordered, std::move(d));
}

namespace {

// Z equal to the center: joins enumerated from the link side.
SubdivisionResult blowup_equal_center(ComplexPtr input, int center) {
  bool reordered = false;
  ComplexPtr base = adapted_order(input, center, &reordered);
  const auto& c = *base;
  const ComplexData base_data = c.to_data();
  const auto& v0 = c.stratum(center).vertices;
  const int k = static_cast<int>(v0.size());
  const std::string e = fresh_vertex_id(c);
  const StarLink sl = star_link(c, center);

  DerivedBuilder d;
  d.data.name = c.name();
  d.data.base = c.base();
  add_vertices(d, c, k == 1 ? v0[0] : -1, e, star_vertices(c, center));
  std::vector<char> in_star(c.stratum_count(), 0);
  for (int t : sl.star) in_star[t] = 1;
  for (int s = 0; s < c.stratum_count(); ++s)
    if (!in_star[s]) add_strict(d, c, base_data, s);

  auto positions_in = [&](int rho, const std::vector<int>& verts) {
    std::uint32_t m = 0;
    for (int v : verts) m |= 1u << c.position(rho, v);
    return m;
  };
  auto emit = [&](int rho, int tau) {
    // tau = -1 stands for the empty face
    std::vector<int> tv = tau >= 0 ? c.stratum(tau).vertices : std::vector<int>{};
    const std::uint32_t mask = positions_in(rho, tv);
    StratumData sd;
    sd.id = exceptional_id(e, c, rho, mask, "");
    for (int v : tv) sd.vertices.push_back(c.vertex(v).id);
    sd.vertices.push_back(e);
    if (tau >= 0) {
      for (std::size_t j = 0; j < tv.size(); ++j) {
        std::vector<int> rest = tv;
        rest.erase(rest.begin() + static_cast<long>(j));
        std::vector<int> span = rest;
        span.insert(span.end(), v0.begin(), v0.end());
        const int rho2 = c.face_with_positions(rho, positions_in(rho, span));
        sd.faces[static_cast<int>(j)] = exceptional_id(e, c, rho2, positions_in(rho2, rest), "");
      }
      sd.faces[static_cast<int>(tv.size())] = c.id(tau);
    }
    sd.label = c.stratum(rho).label.symbol();
    Provenance p;
    p.kind = Provenance::Kind::Exceptional;
    p.image = rho;
    p.mask = mask;
    d.prov[sd.id] = p;
    d.iso.insert(sd.id);
    d.data.strata.push_back(std::move(sd));
  };
  emit(center, -1);
  // link faces meet the center in a proper subset of its vertices
  for (int tau : sl.link) {
    std::vector<int> span = c.stratum(tau).vertices;
    for (int v : v0)
      if (std::find(span.begin(), span.end(), v) == span.end()) span.push_back(v);
    for (int rho : sl.star)
      if (c.leq(tau, rho) && c.stratum(rho).codim == static_cast<int>(span.size())) emit(rho, tau);
  }
  SubdivisionResult r = finish(SubdivisionKind::Blowup, BlowupMode::EqualsCenter, base, center, reordered, std::move(d));
  return r;
}

}  // namespace

SubdivisionResult blowup_subdivide(ComplexPtr input, const IntersectionProfile& profile) {
  if (!input->simplicial()) throw InputError("blowup_subdivide needs a simplicial complex");
  const int center = input->stratum_index(profile.center);

  if (profile.mode == BlowupMode::NoStratum) {
    DerivedBuilder d;
    d.data = input->to_data();
    for (int s = 0; s < input->stratum_count(); ++s) {
      Provenance p;
      p.image = s;
      d.prov[input->id(s)] = p;
      d.iso.insert(input->id(s));
    }
    return finish(SubdivisionKind::Blowup, BlowupMode::NoStratum, input, center, false, std::move(d));
  }
  if (profile.mode == BlowupMode::EqualsCenter) {
    SubdivisionResult r = blowup_equal_center(input, center);
    return r;
  }

  bool reordered = false;
  ComplexPtr base = adapted_order(input, center, &reordered);
  const auto& c = *base;
  const ComplexData base_data = c.to_data();
  const auto& v0 = c.stratum(center).vertices;
  const int k = static_cast<int>(v0.size());
  const std::string e = fresh_vertex_id(c);

  std::vector<char> in_star(c.stratum_count(), 0);
  for (int t : c.up(center)) in_star[t] = 1;
  std::vector<int> count(c.stratum_count(), 0);
  for (int t : c.up(center)) count[t] = 1;
  for (const auto& [id, n] : profile.components) {
    auto s = c.find_stratum(id);
    if (!s || !in_star[*s]) throw InputError("profile: " + id + " is not in the star of " + profile.center);
    if (n < 0) throw InputError("profile: negative component count for " + id);
    count[*s] = n;
  }
  if (count[center] == 0) throw InputError("profile: zero components on the center " + profile.center);
  if (count[center] > 1)
    throw InputError("profile: Z must be connected (one component on the center " + profile.center + ")");
  for (int t : c.up(center)) {
    if (count[t] == 0) continue;
    for (int f : c.stratum(t).covers)
      if (in_star[f] && count[f] != 1)
        throw InputError("profile: " + c.id(t) + " has components but its face " + c.id(f) +
                         (count[f] == 0 ? " has none" : " has several (ambiguous incidence)"));
  }

  DerivedBuilder d;
  d.data.name = c.name();
  d.data.base = c.base();
  add_vertices(d, c, -1, e, star_vertices(c, center));
  for (int s = 0; s < c.stratum_count(); ++s) add_strict(d, c, base_data, s);

  auto suffix = [&](int tau, int comp) { return count[tau] > 1 ? "#" + std::to_string(comp) : std::string(); };
  for (int tau : c.up(center)) {
    const auto& vs = c.stratum(tau).vertices;
    const int n = static_cast<int>(vs.size()) - 1;
    const std::uint32_t inner = (1u << (n + 1 - k)) - 1u;
    for (int comp = 0; comp < count[tau]; ++comp) {
      std::string label;
      auto lt = profile.labels.find(c.id(tau));
      label = lt != profile.labels.end() ? lt->second : "Z@" + c.id(tau);
      if (count[tau] > 1) label += "#" + std::to_string(comp);
      for (std::uint32_t s = 0; s < (1u << k); ++s) {
        const std::uint32_t mask = inner | (s << (n + 1 - k));
        StratumData sd;
        sd.id = exceptional_id(e, c, tau, mask, suffix(tau, comp));
        std::vector<int> kept;
        for (int p = 0; p <= n; ++p)
          if ((mask >> p) & 1u) kept.push_back(p);
        for (int p : kept) sd.vertices.push_back(c.vertex(vs[p]).id);
        sd.vertices.push_back(e);
        if (!kept.empty()) {
          for (std::size_t j = 0; j < kept.size(); ++j) {
            const int p = kept[j];
            const std::uint32_t rest = mask & ~(1u << p);
            if (p > n - k) {
              sd.faces[static_cast<int>(j)] = exceptional_id(e, c, tau, rest, suffix(tau, comp));
              d.derived_isos.emplace_back(sd.id, sd.faces[static_cast<int>(j)]);
            } else {
              const int face = c.stratum(tau).faces[p];
              sd.faces[static_cast<int>(j)] = exceptional_id(e, c, face, drop_bit(rest, p), suffix(face, 0));
            }
          }
          sd.faces[static_cast<int>(kept.size())] = c.id(c.face_with_positions(tau, mask));
        }
        sd.label = label;
        Provenance p;
        p.kind = Provenance::Kind::Exceptional;
        p.image = tau;
        p.component = comp;
        p.mask = mask;
        d.prov[sd.id] = p;
        d.data.strata.push_back(std::move(sd));
      }
    }
  }
  return finish(SubdivisionKind::Blowup, BlowupMode::Proper, base, center, reordered, std::move(d));
}

namespace {

using Triplets = std::vector<Eigen::Triplet<long long>>;

Morphism from_triplets(const FreeObject& source, const FreeObject& target, const Triplets& t) {
  Morphism::Matrix m(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(source.size()));
  m.setFromTriplets(t.begin(), t.end());
  return Morphism(source, target, std::move(m));
}

int last_center_vertex(const SubdivisionResult& r) {
  return r.center >= 0 ? r.base->stratum(r.center).vertices.back() : -1;
}

}  // namespace

CechPushforward star_cech_pushforward(const SubdivisionResult& r) {
  if (r.kind == SubdivisionKind::Barycentric) throw InputError("star_cech_pushforward: barycentric input");
  CechPushforward p;
  p.cech_base = build_cech(r.table, 0, BuildMode::bounded());
  p.cech_derived = build_cech(r.table, 1, BuildMode::bounded());
  const auto& B = *p.cech_base;
  const auto& D = *p.cech_derived;
  const auto& c = *r.base;
  const int b = last_center_vertex(r);

  p.closed_form = ChainMap{D.chain, B.chain, {}};
  for (int n = 0; n <= D.top(); ++n) {
    Triplets t;
    for (std::size_t col = 0; col < D.cells(n).size(); ++col) {
      const auto& pv = r.provenance[D.cells(n)[col][0]];
      int target = -1;
      if (pv.kind == Provenance::Kind::StrictTransform) {
        target = pv.image;  // vertical generator
      } else {
        const int bp = c.position(pv.image, b);
        if ((pv.mask >> bp) & 1u) continue;  // contained in the last divisor: zero
        target = c.face_with_positions(pv.image, pv.mask | (1u << bp));
      }
      std::vector<int> key{target};
      key.insert(key.end(), c.stratum(target).vertices.begin(), c.stratum(target).vertices.end());
      int row = B.index_of(n, key);
      if (row < 0) throw MathError("star_cech_pushforward: target stratum in wrong degree");
      t.emplace_back(row, static_cast<int>(col), 1);
    }
    p.closed_form.components.push_back(from_triplets(D.chain->term(n), B.chain->term(n), t));
  }

  BuiltPtr sd_derived = build_sd(r.table, 1, BuildMode::bounded());
  BuiltPtr sd_base = build_sd(r.table, 0, BuildMode::bounded());
  ChainMap sd_map = build_subdivision_map(p.cech_derived, sd_derived);
  ChainMap push = build_sd_pushforward(r.pushforward, sd_derived, sd_base);
  ChainMap lambda = build_last_vertex(sd_base, p.cech_base);
  p.composite = compose_chain_maps(lambda, compose_chain_maps(push, sd_map));

  p.report.merge(verify_chain_map(p.closed_form), "C(mu): ");
  p.report.merge(check_map_generators(p.closed_form), "C(mu): ");
  p.report.merge(compare_maps(p.closed_form, p.composite, "closed form = lambda Sd(mu) sd"));
  return p;
}

namespace {

InverseAndHomotopy inverse_and_homotopy(const SubdivisionResult& r, const CechPushforward& p) {
  InverseAndHomotopy out;
  const auto& B = *p.cech_base;
  const auto& D = *p.cech_derived;
  const auto& c = *r.base;
  const int b = last_center_vertex(r);

  std::vector<int> strict(c.stratum_count(), -1);
  for (int s = 0; s < r.derived->stratum_count(); ++s)
    if (r.provenance[s].kind == Provenance::Kind::StrictTransform) strict[r.provenance[s].image] = s;

  auto derived_row = [&](int degree, int s) {
    std::vector<int> key{s};
    key.insert(key.end(), r.derived->stratum(s).vertices.begin(), r.derived->stratum(s).vertices.end());
    int row = D.index_of(degree, key);
    if (row < 0) throw MathError("inverse map: derived stratum in wrong degree");
    return row;
  };

  out.gamma = ChainMap{B.chain, D.chain, {}};
  for (int n = 0; n <= B.top(); ++n) {
    Triplets t;
    for (std::size_t col = 0; col < B.cells(n).size(); ++col) {
      const int tau = B.cells(n)[col][0];
      if (strict[tau] >= 0) {
        t.emplace_back(derived_row(n, strict[tau]), static_cast<int>(col), 1);
        continue;
      }
      // sections sec(tau, k) over the positions of the center's vertices
      const int k = static_cast<int>(c.stratum(r.center).vertices.size());
      const std::uint32_t full = (1u << (n + 1)) - 1u;
      for (int pos = n + 1 - k; pos <= n; ++pos) {
        const int sec = r.exceptional(tau, 0, full & ~(1u << pos));
        if (sec < 0) throw InputError("inverse map: missing section of " + c.id(tau));
        t.emplace_back(derived_row(n, sec), static_cast<int>(col), (n + pos) % 2 ? -1 : 1);
      }
    }
    out.gamma.components.push_back(from_triplets(B.chain->term(n), D.chain->term(n), t));
  }
  out.pushforward = p.closed_form;

  ChainMap round = compose_chain_maps(out.gamma, out.pushforward);
  out.homotopy = ChainHomotopy{identity_map(D.chain), round, {}};
  for (int n = 0; n <= D.top(); ++n) {
    Triplets t;
    for (std::size_t col = 0; col < D.cells(n).size(); ++col) {
      const auto& pv = r.provenance[D.cells(n)[col][0]];
      if (pv.kind != Provenance::Kind::Exceptional) continue;
      const int bp = c.position(pv.image, b);
      if ((pv.mask >> bp) & 1u) continue;
      const int wedge = r.exceptional(pv.image, pv.component, pv.mask | (1u << bp));
      if (wedge < 0) continue;
      t.emplace_back(derived_row(n + 1, wedge), static_cast<int>(col), n % 2 ? -1 : 1);
    }
    out.homotopy.components.push_back(from_triplets(D.chain->term(n), D.chain->term(n + 1), t));
  }

  out.report.merge(verify_chain_map(out.gamma), "gamma: ");
  out.report.merge(check_map_generators(out.gamma), "gamma: ");
  out.report.merge(compare_maps(compose_chain_maps(out.pushforward, out.gamma), identity_map(B.chain), "C(mu) gamma = id"));
  out.report.merge(verify_homotopy(out.homotopy), "homotopy: ");
  for (std::size_t n = 0; n < out.homotopy.components.size(); ++n)
    out.report.merge(check_generators(out.homotopy.components[n], *r.table), "homotopy degree " + std::to_string(n) + ": ");
  return out;
}

}  // namespace

InverseAndHomotopy star_inverse_and_homotopy(const SubdivisionResult& r, const CechPushforward& p) {
  if (r.kind != SubdivisionKind::Star) throw InputError("star_inverse_and_homotopy: not a star subdivision");
  return inverse_and_homotopy(r, p);
}

InverseAndHomotopy star_inverse_and_homotopy(const SubdivisionResult& r) {
  return star_inverse_and_homotopy(r, star_cech_pushforward(r));
}

InverseAndHomotopy blowup_inverse_and_homotopy(const SubdivisionResult& r, const CechPushforward& p) {
  if (r.kind != SubdivisionKind::Blowup) throw InputError("blowup_inverse_and_homotopy: not a blowup");
  return inverse_and_homotopy(r, p);
}

InverseAndHomotopy blowup_inverse_and_homotopy(const SubdivisionResult& r) {
  return blowup_inverse_and_homotopy(r, star_cech_pushforward(r));
}

ValidationReport check_isomorphism(const SubdivisionResult& r) {
  ValidationReport rep;
  CechPushforward p = star_cech_pushforward(r);
  rep.merge(p.report);
  ChainMap inv{p.cech_base->chain, p.cech_derived->chain, {}};
  try {
    for (const auto& comp : p.closed_form.components) inv.components.push_back(invert_iso(comp, *r.table));
  } catch (const InputError& e) {
    rep.add("isomorphism", std::string("C(mu) is not invertible: ") + e.what());
    return rep;
  }
  rep.merge(verify_chain_map(inv), "inverse: ");
  rep.merge(compare_maps(compose_chain_maps(inv, p.closed_form), identity_map(p.cech_derived->chain), "inverse after C(mu)"));
  rep.merge(compare_maps(compose_chain_maps(p.closed_form, inv), identity_map(p.cech_base->chain), "C(mu) after inverse"));
  return rep;
}

namespace {

bool same_data(const ComplexData& a, const ComplexData& b, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (a.vertices.size() != b.vertices.size()) return fail("vertex counts differ");
  for (std::size_t i = 0; i < a.vertices.size(); ++i) {
    const auto &x = a.vertices[i], &y = b.vertices[i];
    if (x.id != y.id || x.key != y.key || x.below != y.below || x.label != y.label)
      return fail("vertex " + x.id + " differs from " + y.id);
  }
  if (a.strata.size() != b.strata.size()) return fail("stratum counts differ");
  for (std::size_t i = 0; i < a.strata.size(); ++i) {
    const auto &x = a.strata[i], &y = b.strata[i];
    if (x.id != y.id || x.vertices != y.vertices || x.faces != y.faces || x.label != y.label || x.flags != y.flags)
      return fail("stratum " + x.id + " differs from " + y.id);
  }
  return true;
}

}  // namespace

bool same_subdivision(const SubdivisionResult& a, const SubdivisionResult& b, std::string* why) {
  if (!same_data(a.derived->to_data(), b.derived->to_data(), why)) return false;
  if (!same_data(a.base->to_data(), b.base->to_data(), why)) return false;
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (a.pushforward.assignment != b.pushforward.assignment) return fail("pushforwards differ");
  auto sa = a.iso_tags, sb = b.iso_tags;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return fail("iso tags differ");
  if (a.provenance != b.provenance) return fail("provenance differs");
  if (a.derived_isos.size() != b.derived_isos.size()) return fail("derived isos differ");
  return true;
}

}  // namespace sbc
