#include "sbc/suite.hpp"

#include <chrono>
#include <functional>

#include "sbc/builders.hpp"
#include "sbc/homology.hpp"
#include "sbc/io.hpp"
#include "sbc/subdivide.hpp"
#include "sbc/volume.hpp"

namespace sbc {

namespace {

// Runs f, turning thrown errors into violations.
void guarded(ValidationReport& rep, const std::string& what, const std::function<void()>& f) {
  try {
    f();
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    rep.add("error", what + ": " + e.what());
  }
}

std::string at(const StratifiedComplex& c, int s) { return "center " + c.id(s) + ": "; }

}  // namespace

ValidationReport check_complex_terms(ComplexPtr c) {
  ValidationReport rep;
  guarded(rep, "complexes", [&] {
    TablePtr t = make_arrow_table(c);
    rep.merge(verify_complex(*build_sd(t, 0, BuildMode::bounded())->chain), "Sd: ");
    rep.merge(verify_complex(*build_cech(t, 0, BuildMode::bounded())->chain), "C: ");
    rep.merge(verify_complex(*build_sd(t, 0, BuildMode::extended_to())->chain), "Sd+: ");
    rep.merge(verify_complex(*build_cech(t, 0, BuildMode::extended_to())->chain), "C+: ");
  });
  return rep;
}

ValidationReport check_cech_comparison(ComplexPtr c, bool with_parts) {
  ValidationReport rep;
  guarded(rep, "comparison", [&] {
    TablePtr t = make_arrow_table(c);
    BuiltPtr sd = build_sd(t, 0, BuildMode::bounded());
    BuiltPtr ch = build_cech(t, 0, BuildMode::bounded());
    ChainMap lam = build_last_vertex(sd, ch);
    ChainMap s = build_subdivision_map(ch, sd);
    rep.merge(verify_chain_map(lam), "lambda: ");
    rep.merge(verify_chain_map(s), "sd: ");
    rep.merge(check_map_generators(lam), "lambda: ");
    rep.merge(check_map_generators(s), "sd: ");
    rep.merge(compare_maps(compose_chain_maps(lam, s), identity_map(ch->chain), "lambda sd = id"));

    BuiltPtr sde = build_sd(t, 0, BuildMode::extended_to());
    BuiltPtr che = build_cech(t, 0, BuildMode::extended_to());
    ChainMap lame = build_last_vertex(sde, che);
    ChainMap se = build_subdivision_map(che, sde);
    rep.merge(verify_chain_map(lame), "lambda+: ");
    rep.merge(verify_chain_map(se), "sd+: ");
    ChainMap sl = compose_chain_maps(se, lame);
    ComparisonHomotopy h = build_comparison_homotopy(sde, sl, with_parts);
    rep.merge(verify_homotopy(h.homotopy), "h: ");
    rep.merge(check_map_generators(ChainMap{sde->chain, sde->chain, h.homotopy.components}), "h: ");
    if (with_parts) rep.merge(check_sign_identities(h), "signs: ");
  });
  return rep;
}

ValidationReport check_degeneracy_splitting(ComplexPtr c) {
  ValidationReport rep;
  guarded(rep, "degeneracies", [&] {
    TablePtr t = make_arrow_table(c);
    for (BuiltPtr ext : {build_sd(t, 0, BuildMode::extended_to()), build_cech(t, 0, BuildMode::extended_to())}) {
      const std::string tag = ext->kind == ComplexKind::Cech ? "C+: " : "Sd+: ";
      DegeneracySplitting d = degeneracy_splitting(ext);
      rep.merge(verify_chain_map(d.iota), tag + "iota: ");
      rep.merge(verify_chain_map(d.pi), tag + "pi: ");
      rep.merge(compare_maps(compose_chain_maps(d.pi, d.iota), identity_map(d.bounded->chain), tag + "pi iota = id"));
      rep.merge(verify_homotopy(d.homotopy), tag + "H: ");
    }
  });
  return rep;
}

ValidationReport check_star_all(ComplexPtr c) {
  ValidationReport rep;
  if (!c->simplicial()) return rep;
  for (int s = 0; s < c->stratum_count(); ++s)
    guarded(rep, at(*c, s) + "star", [&] {
      SubdivisionResult r = star_subdivide(c, s);
      rep.merge(validate_poset_map(r.pushforward), at(*c, s));
      CechPushforward p = star_cech_pushforward(r);
      rep.merge(verify_complex(*p.cech_derived->chain), at(*c, s) + "C(derived): ");
      rep.merge(p.report, at(*c, s));
      rep.merge(star_inverse_and_homotopy(r, p).report, at(*c, s));
    });
  return rep;
}

ValidationReport check_barycentric(ComplexPtr c) {
  ValidationReport rep;
  guarded(rep, "barycentric", [&] {
    SubdivisionResult r = barycentric(c);
    rep.merge(validate_poset_map(r.pushforward));
    rep.merge(barycentric_comparison(r).report);
  });
  return rep;
}

ValidationReport check_blowup_all(ComplexPtr c) {
  ValidationReport rep;
  if (!c->simplicial()) return rep;
  for (int s = 0; s < c->stratum_count(); ++s) {
    IntersectionProfile p;
    p.center = c->id(s);
    guarded(rep, at(*c, s) + "blowup", [&] {
      SubdivisionResult r = blowup_subdivide(c, p);
      rep.merge(validate_poset_map(r.pushforward), at(*c, s) + "blowup: ");
      rep.merge(blowup_inverse_and_homotopy(r).report, at(*c, s) + "blowup: ");
    });
    guarded(rep, at(*c, s) + "Z = center", [&] {
      p.mode = BlowupMode::EqualsCenter;
      SubdivisionResult r = blowup_subdivide(c, p);
      std::string why;
      if (!same_subdivision(r, star_subdivide(c, s), &why))
        rep.add("blowup", at(*c, s) + "Z = center differs from the star subdivision: " + why);
    });
    guarded(rep, at(*c, s) + "no stratum", [&] {
      p.mode = BlowupMode::NoStratum;
      rep.merge(check_isomorphism(blowup_subdivide(c, p)), at(*c, s) + "no stratum: ");
    });
  }
  return rep;
}

ValidationReport check_k0(ComplexPtr c) {
  ValidationReport rep;
  guarded(rep, "k0", [&] {
    const K0Class formula = motivic_volume_formula(*c);
    const K0Class cech = k0_class_of_complex(*build_cech(c, BuildMode::bounded()));
    const K0Class sd = k0_class_of_complex(*build_sd(c, BuildMode::bounded()));
    if (!(cech == formula)) rep.add("k0", "[C] = " + cech.to_string() + " but the volume formula gives " + formula.to_string());
    if (!(sd == cech)) rep.add("k0", "[Sd] = " + sd.to_string() + " but [C] = " + cech.to_string());
    auto compare = [&](const SubdivisionResult& r, const std::string& what) {
      K0Class d = pushforward_class(k0_class_of_complex(*build_cech(r.table, 1, BuildMode::bounded())), r);
      if (!(d == cech)) rep.add("k0", what + ": pushed-forward class " + d.to_string() + " differs from " + cech.to_string());
    };
    compare(barycentric(c), "barycentric");
    if (!c->simplicial()) return;
    for (int s = 0; s < c->stratum_count(); ++s) {
      compare(star_subdivide(c, s), "star at " + c->id(s));
      IntersectionProfile p;
      p.center = c->id(s);
      compare(blowup_subdivide(c, p), "blowup at " + c->id(s));
    }
  });
  return rep;
}

ValidationReport check_homology_invariance(ComplexPtr c) {
  ValidationReport rep;
  guarded(rep, "homology", [&] {
    const auto h = dual_complex_homology(c);
    auto compare = [&](const SubdivisionResult& r, const std::string& what) {
      auto g = dual_complex_homology(r.derived);
      // the derived complex may have a longer tail of zero groups
      const std::size_t n = std::max(h.size(), g.size());
      for (std::size_t i = 0; i < n; ++i) {
        HomologyGroup a = i < h.size() ? h[i] : HomologyGroup{};
        HomologyGroup b = i < g.size() ? g[i] : HomologyGroup{};
        if (!(a == b))
          rep.add("homology", what + ": H_" + std::to_string(i) + " = " + b.to_string() + " instead of " + a.to_string());
      }
    };
    compare(barycentric(c), "barycentric");
    if (!c->simplicial()) return;
    for (int s = 0; s < c->stratum_count(); ++s) {
      compare(star_subdivide(c, s), "star at " + c->id(s));
      IntersectionProfile p;
      p.center = c->id(s);
      compare(blowup_subdivide(c, p), "blowup at " + c->id(s));
    }
  });
  return rep;
}

bool SuiteReport::ok() const {
  for (const auto& c : checks)
    if (!c.report.ok()) return false;
  return true;
}

std::string SuiteReport::to_text() const {
  std::string s;
  for (const auto& c : checks) {
    s += (c.report.ok() ? "passed  " : "FAILED  ") + c.name + "\n";
    if (!c.report.ok()) s += c.report.to_string();
  }
  return s;
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json x = report_to_json(c.report);
    x["name"] = c.name;
    arr.push_back(x);
  }
  return nlohmann::json{{"ok", ok()}, {"checks", arr}};
}

namespace {

using CheckFn = ValidationReport (*)(ComplexPtr);

ValidationReport comparison_with_parts(ComplexPtr c) { return check_cech_comparison(std::move(c), true); }

std::vector<std::pair<std::string, CheckFn>> checks_for(const std::string& suite) {
  std::vector<std::pair<std::string, CheckFn>> complex = {{"d^2 = 0", check_complex_terms}};
  std::vector<std::pair<std::string, CheckFn>> maps = {{"barycentric comparison", check_barycentric}};
  std::vector<std::pair<std::string, CheckFn>> homotopies = {
      {"cech comparison homotopy", comparison_with_parts},
      {"degeneracy homotopy", check_degeneracy_splitting},
      {"star subdivisions", check_star_all},
      {"blowups", check_blowup_all}};
  std::vector<std::pair<std::string, CheckFn>> k0 = {{"k0 classes", check_k0}};
  std::vector<std::pair<std::string, CheckFn>> homology = {{"dual complex homology", check_homology_invariance}};
  if (suite == "complex") return complex;
  if (suite == "maps") return maps;
  if (suite == "homotopies") return homotopies;
  if (suite == "k0") return k0;
  if (suite == "homology") return homology;
  if (suite == "full") {
    auto all = complex;
    for (auto* part : {&maps, &homotopies, &k0, &homology}) all.insert(all.end(), part->begin(), part->end());
    return all;
  }
  throw InputError("unknown suite " + suite + " (expected complex, maps, homotopies, k0, homology or full)");
}

}  // namespace

SuiteReport run_suite(ComplexPtr c, const std::string& suite) {
  SuiteReport out;
  for (const auto& [name, fn] : checks_for(suite)) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult r{name, fn(c), 0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    out.checks.push_back(std::move(r));
  }
  return out;
}

SuiteReport run_random_suite(const std::string& suite, std::uint64_t seed, int cases, const RandomComplexOptions& opt) {
  const auto checks = checks_for(suite);
  SuiteReport out;
  for (const auto& [name, fn] : checks) out.checks.push_back({name, {}, 0});
  Rng rng(seed);
  for (int i = 0; i < cases; ++i) {
    ComplexPtr c = random_complex(rng, opt);
    for (std::size_t k = 0; k < checks.size(); ++k) {
      auto t0 = std::chrono::steady_clock::now();
      ValidationReport r = checks[k].second(c);
      out.checks[k].seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (!r.ok()) {
        out.checks[k].report.merge(r, "case " + std::to_string(i) + ": ");
        out.checks[k].report.add("witness", "case " + std::to_string(i) + " complex: " + complex_to_json(*c).dump());
      }
    }
  }
  return out;
}

}  // namespace sbc
