#include "sbc/lattice.hpp"

#include <algorithm>
#include <numeric>

namespace sbc {

namespace {

LatticeMatrix select_columns(const LatticeMatrix& m, const std::vector<int>& cols) {
  LatticeMatrix out(m.rows, static_cast<int>(cols.size()));
  for (int i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) out(i, static_cast<int>(j)) = m(i, cols[j]);
  return out;
}

bool primitive_column(const LatticeMatrix& m, int j) {
  long long g = 0;
  for (int i = 0; i < m.rows; ++i) g = std::gcd(g, m(i, j));
  return g == 1;
}

std::vector<int> positions_of(std::uint32_t mask, int n) {
  std::vector<int> p;
  for (int i = 0; i < n; ++i)
    if ((mask >> i) & 1u) p.push_back(i);
  return p;
}

// a * b / d, exactly; nullopt when not integral.
std::optional<LatticeMatrix> divide_exact(const LatticeMatrix& m, long long d) {
  LatticeMatrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.data.size(); ++i) {
    if (m.data[i] % d != 0) return std::nullopt;
    out.data[i] = m.data[i] / d;
  }
  return out;
}

std::string subset_id(const std::vector<int>& s) {
  std::string id;
  for (int v : s) id += "v" + std::to_string(v);
  return id;
}

}  // namespace

LatticeCone LatticeConeComplex::cone(int s) const {
  return {complex->id(s), rays[s].rows, rays[s]};
}

LatticeMatrix LatticeConeComplex::face_embedding(int s, int j) const {
  const auto& st = complex->stratum(s);
  const int f = st.faces.at(j);
  std::vector<int> cols;
  for (int p = 0; p < static_cast<int>(st.vertices.size()); ++p)
    if (p != j) cols.push_back(p);
  const LatticeMatrix& rf = rays[f];
  const long long det = determinant(rf);
  if (det == 0) throw InputError("face embedding: singular rays on " + complex->id(f));
  auto e = divide_exact(select_columns(rays[s], cols) * adjugate(rf), det);
  if (!e) throw InputError("face embedding " + complex->id(f) + " -> " + complex->id(s) + " is not integral");
  return *e;
}

LatticeConeComplex make_lattice_complex(ComplexPtr c, std::vector<LatticeMatrix> rays) {
  if (static_cast<int>(rays.size()) != c->stratum_count()) throw InputError("lattice: one cone per stratum expected");
  LatticeConeComplex cc{std::move(c), std::move(rays)};
  ValidationReport rep = validate_lattice(cc);
  if (!rep.ok()) throw InputError("invalid lattice data:\n" + rep.to_string());
  return cc;
}

ValidationReport validate_lattice(const LatticeConeComplex& cc) {
  ValidationReport rep;
  const auto& c = *cc.complex;
  if (!c.simplicial()) {
    rep.add("non-simplicial", "lattice data needs a simplicial complex");
    return rep;
  }
  for (int s = 0; s < c.stratum_count(); ++s) {
    const auto& r = cc.rays[s];
    const int n = c.stratum(s).codim;
    if (r.rows != n || r.cols != n) {
      rep.add("cone shape", c.id(s) + ": expected " + std::to_string(n) + " rays in Z^" + std::to_string(n), {c.id(s)});
      continue;
    }
    if (determinant(r) == 0) {
      rep.add("cone rank", c.id(s) + ": rays are linearly dependent", {c.id(s)});
      continue;
    }
    for (int j = 0; j < n; ++j)
      if (!primitive_column(r, j)) rep.add("primitive", c.id(s) + ": ray " + std::to_string(j) + " is not primitive", {c.id(s)});
  }
  if (!rep.ok()) return rep;
  for (int s = 0; s < c.stratum_count(); ++s)
    for (std::size_t j = 0; j < c.stratum(s).faces.size(); ++j) {
      try {
        LatticeMatrix e = cc.face_embedding(s, static_cast<int>(j));
        if (!is_saturated(e))
          rep.add("saturation", "face " + c.id(c.stratum(s).faces[j]) + " of " + c.id(s) + " is not a saturated sublattice",
                  {c.id(s)});
      } catch (const InputError& e) {
        rep.add("face embedding", e.what(), {c.id(s)});
      }
    }
  return rep;
}

LatticeConeComplex standard_lattice(ComplexPtr c) {
  std::vector<LatticeMatrix> rays;
  for (int s = 0; s < c->stratum_count(); ++s) rays.push_back(LatticeMatrix::identity(c->stratum(s).codim));
  return make_lattice_complex(std::move(c), std::move(rays));
}

LatticeMatrix saturated_coordinates(const LatticeMatrix& c) {
  auto f = smith_normal_form(c.cast<BigInt>());
  const int m = c.cols;
  if (static_cast<int>(f.diagonal.size()) != m) throw InputError("saturated_coordinates: columns are dependent");
  IntMatrix<BigInt> uc = f.U * c.cast<BigInt>();
  LatticeMatrix x(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = static_cast<long long>(uc(i, j));
  return x;
}

LatticeConeComplex cone_complex_from_rays(const LatticeMatrix& rays, const std::string& name) {
  const int d = rays.cols;
  if (rays.rows != d) throw InputError("cone_complex_from_rays: need a square ray matrix");
  ComplexData data;
  data.name = name;
  for (int v = 0; v < d; ++v) {
    VertexData vd;
    vd.id = "v" + std::to_string(v);
    vd.key = v;
    vd.label = vd.id;
    data.vertices.push_back(vd);
  }
  std::map<std::string, LatticeMatrix> by_id;
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    std::vector<int> s = positions_of(mask, d);
    StratumData sd;
    sd.id = subset_id(s);
    for (int v : s) sd.vertices.push_back("v" + std::to_string(v));
    if (s.size() > 1)
      for (std::size_t j = 0; j < s.size(); ++j) {
        std::vector<int> f = s;
        f.erase(f.begin() + static_cast<long>(j));
        sd.faces[static_cast<int>(j)] = subset_id(f);
      }
    sd.label = sd.id;
    LatticeMatrix cols = select_columns(rays, s);
    by_id[sd.id] = static_cast<int>(s.size()) == d ? rays : saturated_coordinates(cols);
    data.strata.push_back(std::move(sd));
  }
  ComplexPtr c = StratifiedComplex::make(std::move(data));
  std::vector<LatticeMatrix> r;
  for (int s = 0; s < c->stratum_count(); ++s) r.push_back(by_id.at(c->id(s)));
  return make_lattice_complex(c, std::move(r));
}

long long multiplicity(const LatticeCone& c) {
  if (c.rays.cols != c.dim || c.rays.rows != c.dim) throw InputError("multiplicity: cone " + c.id + " is not simplicial");
  const long long det = determinant(c.rays);
  if (det == 0) throw InputError("multiplicity: cone " + c.id + " is degenerate");
  return det < 0 ? -det : det;
}

SmoothnessReport is_smooth(const LatticeConeComplex& cc) {
  if (!cc.complex->simplicial()) throw InputError("is_smooth: non-simplicial complex");
  SmoothnessReport out;
  for (int s = 0; s < cc.complex->stratum_count(); ++s) {
    long long m = multiplicity(cc.cone(s));
    if (m != 1) {
      out.smooth = false;
      out.witness = s;
      out.multiplicity = m;
      return out;
    }
  }
  return out;
}

LatticeVector barycenter(const LatticeCone& c) {
  LatticeVector v(c.rays.rows, 0);
  for (int i = 0; i < c.rays.rows; ++i)
    for (int j = 0; j < c.rays.cols; ++j) v[i] += c.rays(i, j);
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

LatticeStar star_at_vector(const LatticeConeComplex& cc, int center, const LatticeVector& v) {
  const auto& c = *cc.complex;
  if (center < 0 || center >= c.stratum_count()) throw InputError("star_at_vector: unknown center");
  const LatticeMatrix& r0 = cc.rays[center];
  const int k = r0.cols;
  if (static_cast<int>(v.size()) != k) throw InputError("star_at_vector: vector has the wrong dimension");
  long long g = 0;
  for (long long x : v) g = std::gcd(g, x);
  if (g != 1) throw InputError("star_at_vector: vector is not primitive");
  const long long det = determinant(r0);
  LatticeMatrix col(k, 1);
  for (int i = 0; i < k; ++i) col(i, 0) = v[i];
  const LatticeMatrix lam = adjugate(r0) * col;  // det * barycentric coordinates
  for (int i = 0; i < k; ++i)
    if ((lam(i, 0) > 0) != (det > 0) || lam(i, 0) == 0)
      throw InputError("star_at_vector: vector is not in the interior of " + c.id(center));

  LatticeStar out;
  out.subdivision = star_subdivide(cc.complex, center);
  const SubdivisionResult& r = out.subdivision;
  const auto& b = *r.base;

  // rays in the (possibly reordered) vertex order of the subdivided base
  std::vector<LatticeMatrix> base_rays(b.stratum_count());
  for (int s = 0; s < b.stratum_count(); ++s) {
    std::vector<int> cols;
    for (int vtx : b.stratum(s).vertices) cols.push_back(c.position(s, vtx));
    base_rays[s] = select_columns(cc.rays[s], cols);
  }

  const auto& d = *r.derived;
  out.complex.complex = r.derived;
  out.complex.rays.resize(d.stratum_count());
  for (int s = 0; s < d.stratum_count(); ++s) {
    const Provenance& p = r.provenance[s];
    if (p.kind == Provenance::Kind::StrictTransform) {
      out.complex.rays[s] = base_rays[p.image];
      continue;
    }
    const LatticeMatrix& rr = base_rays[p.image];
    const int n = rr.cols;
    std::vector<int> center_cols;
    for (int i = n - k; i < n; ++i) center_cols.push_back(i);
    auto vr = divide_exact(select_columns(rr, center_cols) * lam, det);
    if (!vr) throw MathError("star_at_vector: image of v in " + b.id(p.image) + " is not integral");
    std::vector<int> kept = positions_of(p.mask, n);
    LatticeMatrix m(n, static_cast<int>(kept.size()) + 1);
    for (int i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < kept.size(); ++j) m(i, static_cast<int>(j)) = rr(i, kept[j]);
      m(i, static_cast<int>(kept.size())) = (*vr)(i, 0);
    }
    out.complex.rays[s] = m.cols == n ? m : saturated_coordinates(m);
  }
  ValidationReport rep = validate_lattice(out.complex);
  if (!rep.ok()) throw MathError("star_at_vector produced invalid lattice data:\n" + rep.to_string());
  return out;
}

std::vector<LatticeVector> parallelepiped_points(const LatticeMatrix& rays) {
  const int d = rays.rows;
  const long long det = determinant(rays);
  if (det == 0) throw InputError("parallelepiped_points: singular cone");
  const long long m = det < 0 ? -det : det;
  const long long sign = det < 0 ? -1 : 1;
  auto f = smith_normal_form(rays);
  // coset representatives U^-1 e with 0 <= e_i < s_i
  const LatticeMatrix u_inv = adjugate(f.U) * LatticeMatrix::identity(d);
  const long long det_u = determinant(f.U);
  const LatticeMatrix adj = adjugate(rays);
  std::vector<LatticeVector> out;
  std::vector<long long> e(d, 0);
  for (;;) {
    LatticeMatrix w(d, 1);
    for (int i = 0; i < d; ++i) {
      long long x = 0;
      for (int j = 0; j < d; ++j) x += u_inv(i, j) * e[j];
      w(i, 0) = x * det_u;  // U^-1 = det(U) adj(U) for det(U) = ±1
    }
    LatticeMatrix lam = adj * w;
    LatticeVector n(d);
    bool zero = true;
    for (int i = 0; i < d; ++i) {
      n[i] = ((sign * lam(i, 0)) % m + m) % m;
      if (n[i]) zero = false;
    }
    if (!zero) out.push_back(n);
    int i = 0;
    for (; i < d; ++i) {
      const long long s = i < static_cast<int>(f.diagonal.size()) ? f.diagonal[i] : 1;
      if (++e[i] < s) break;
      e[i] = 0;
    }
    if (i == d) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Resolution toric_resolve(const LatticeConeComplex& input, int max_steps) {
  if (!input.complex->simplicial()) throw InputError("toric_resolve needs a simplicial complex; simplicialize first");
  Resolution res{input, {}};
  for (int step = 0;; ++step) {
    auto& cc = res.complex;
    const auto& c = *cc.complex;
    int worst = -1;
    long long worst_m = 1, total = 0;
    int at_worst = 0;
    for (int s = 0; s < c.stratum_count(); ++s) {
      long long m = multiplicity(cc.cone(s));
      total += m - 1;
      if (m > worst_m) worst = s, worst_m = m, at_worst = 0;
      if (m == worst_m) ++at_worst;
    }
    if (worst < 0) return res;
    if (step >= max_steps) throw MathError("toric_resolve: step limit reached");

    const LatticeMatrix& r = cc.rays[worst];
    const int d = r.cols;
    // minimal coordinate sum, ties by the lattice point itself
    LatticeVector best_n, best_v;
    long long best_sum = 0;
    for (const auto& n : parallelepiped_points(r)) {
      LatticeVector v(d, 0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v[i] += r(i, j) * n[j];
      for (auto& x : v) x /= worst_m;
      long long sum = std::accumulate(n.begin(), n.end(), 0LL);
      if (best_n.empty() || sum < best_sum || (sum == best_sum && v < best_v)) best_n = n, best_v = v, best_sum = sum;
    }
    std::uint32_t mask = 0;
    std::vector<long long> support;
    for (int i = 0; i < d; ++i)
      if (best_n[i] > 0) {
        mask |= 1u << i;
        support.push_back(best_n[i]);
      }
    const int center = c.face_with_positions(worst, mask);
    const LatticeMatrix& r0 = cc.rays[center];
    LatticeVector v0(r0.rows, 0);
    for (int i = 0; i < r0.rows; ++i) {
      for (int j = 0; j < r0.cols; ++j) v0[i] += r0(i, j) * support[j];
      if (v0[i] % worst_m != 0) throw MathError("toric_resolve: chosen point is not a lattice point of its face");
      v0[i] /= worst_m;
    }
    res.steps.push_back({c.id(worst), c.id(center), v0, worst_m, at_worst, total});
    LatticeStar next = star_at_vector(cc, center, v0);
    res.complex = std::move(next.complex);
  }
}

}  // namespace sbc
