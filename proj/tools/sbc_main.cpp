// Command-line front end: validation, complexes, subdivisions, checks, homology, volumes.
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "sbc/builders.hpp"
#include "sbc/homology.hpp"
#include "sbc/io.hpp"
#include "sbc/lattice.hpp"
#include "sbc/subdivide.hpp"
#include "sbc/suite.hpp"
#include "sbc/volume.hpp"

using namespace sbc;

namespace {

bool g_json = false;

void emit(const Json& j, const std::string& text) {
  if (g_json) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

int report_exit(const ValidationReport& r) { return r.ok() ? 0 : 1; }

Json complex_summary(const BuiltComplex& b) {
  Json degrees = Json::array();
  for (int n = 0; n <= b.top(); ++n) {
    Json cells = Json::array();
    for (int i = 0; i < b.rank(n); ++i) cells.push_back(b.cell_name(n, i));
    degrees.push_back(Json{{"degree", n}, {"rank", b.rank(n)}, {"cells", cells}});
  }
  return degrees;
}

int cmd_build(const std::string& file, int extended, bool cech) {
  ComplexDocument doc = load_complex(file);
  BuildMode mode = extended >= 0 ? BuildMode::extended_to(extended == 0 ? -1 : extended) : BuildMode::bounded();
  BuiltPtr b = cech ? build_cech(doc.complex, mode) : build_sd(doc.complex, mode);
  ValidationReport rep = verify_complex(*b->chain);
  std::string text;
  for (int n = 0; n <= b->top(); ++n) {
    text += "degree " + std::to_string(n) + ": rank " + std::to_string(b->rank(n));
    std::string names;
    for (int i = 0; i < b->rank(n) && i < 12; ++i) names += (i ? " " : "") + b->cell_name(n, i);
    if (b->rank(n) > 12) names += " ...";
    text += names.empty() ? "\n" : "  " + names + "\n";
  }
  text += rep.ok() ? "d^2 = 0 verified\n" : rep.to_string();
  Json j{{"complex", cech ? "cech" : "sd"},
         {"extended", b->extended},
         {"truncated", b->chain->truncated},
         {"degrees", complex_summary(*b)},
         {"verification", report_to_json(rep)}};
  emit(j, text);
  return report_exit(rep);
}

int cmd_compare(const std::string& file) {
  ComplexDocument doc = load_complex(file);
  ValidationReport rep = check_cech_comparison(doc.complex, true);
  emit(report_to_json(rep), rep.ok() ? "lambda sd = id, sd lambda ~ id via h, sign identities verified\n" : rep.to_string());
  return report_exit(rep);
}

int cmd_subdivide(const std::string& file, bool bary, const std::string& star, const std::string& blowup,
                  const std::string& profile_file, const std::string& out_file, bool check) {
  ComplexDocument doc = load_complex(file);
  const int modes = int(bary) + int(!star.empty()) + int(!blowup.empty());
  if (modes != 1) throw InputError("choose exactly one of --barycentric, --star, --blowup");
  SubdivisionResult r;
  ValidationReport rep;
  if (bary) {
    r = barycentric(doc.complex);
    if (check) rep.merge(barycentric_comparison(r).report);
  } else if (!star.empty()) {
    r = star_subdivide(doc.complex, doc.complex->stratum_index(star));
    if (check) rep.merge(star_inverse_and_homotopy(r).report);
  } else {
    IntersectionProfile p;
    p.center = blowup;
    if (!profile_file.empty()) {
      p = profile_from_json(parse_json(read_text_file(profile_file), profile_file), profile_file);
      if (p.center != blowup) throw InputError("profile center " + p.center + " differs from --blowup " + blowup);
    }
    r = blowup_subdivide(doc.complex, p);
    if (check) {
      if (p.mode == BlowupMode::NoStratum) rep.merge(check_isomorphism(r));
      else rep.merge(blowup_inverse_and_homotopy(r).report);
    }
  }
  const std::string derived = serialize_complex(*r.derived);
  if (!out_file.empty()) {
    std::ofstream out(out_file);
    if (!out) throw InputError("cannot write " + out_file);
    out << derived;
  }
  Json j = complex_to_json(*r.derived);
  if (r.reordered) j["reordered_base"] = complex_to_json(*r.base);
  if (check) j["verification"] = report_to_json(rep);
  std::string text = out_file.empty() ? derived : "wrote " + out_file + "\n";
  if (r.reordered) text += "note: the base vertex order was replaced by an adapted linear order\n";
  if (check) text += rep.ok() ? "verified\n" : rep.to_string();
  emit(j, text);
  return report_exit(rep);
}

int cmd_resolve(const std::string& file) {
  ComplexDocument doc = load_complex(file);
  if (!doc.lattice) throw InputError(file + ": no lattice data");
  Resolution res = toric_resolve(*doc.lattice);
  SmoothnessReport sm = is_smooth(res.complex);
  Json steps = Json::array();
  std::string text;
  for (std::size_t i = 0; i < res.steps.size(); ++i) {
    const auto& s = res.steps[i];
    steps.push_back(Json{{"cone", s.cone}, {"center", s.center}, {"point", s.point},
                         {"multiplicity", s.multiplicity_before}, {"cones_at_multiplicity", s.count_before},
                         {"total_excess", s.total_before}});
    std::string pt;
    for (std::size_t k = 0; k < s.point.size(); ++k) pt += (k ? "," : "") + std::to_string(s.point[k]);
    text += "step " + std::to_string(i + 1) + ": cone " + s.cone + " (multiplicity " +
            std::to_string(s.multiplicity_before) + "), star at (" + pt + ") in " + s.center + "\n";
  }
  text += std::to_string(res.steps.size()) + (res.steps.size() == 1 ? " step, " : " steps, ") + (sm.smooth ? "smooth" : "NOT smooth") + "\n";
  emit(Json{{"steps", steps}, {"smooth", sm.smooth}, {"complex", complex_to_json(*res.complex.complex, &res.complex)}},
       text);
  return sm.smooth ? 0 : 1;
}

int cmd_homology(const std::string& file, const std::string& realization, bool constant) {
  ComplexDocument doc = load_complex(file);
  if (constant == !realization.empty()) throw InputError("choose exactly one of --realization, --constant");
  AbelianRealization r = constant ? AbelianRealization::constant_realization()
                                  : realization_from_json(parse_json(read_text_file(realization), realization), realization);
  BuiltPtr b = build_cech(doc.complex, BuildMode::bounded());
  auto h = homology_groups(realize(*b, r));
  std::string text;
  for (std::size_t n = 0; n < h.size(); ++n) text += "H_" + std::to_string(n) + " = " + h[n].to_string() + "\n";
  emit(homology_to_json(h), text);
  return 0;
}

int cmd_volume(const std::string& file, const std::string& quotient, const std::string& point) {
  ComplexDocument doc = load_complex(file);
  K0Class k = motivic_volume_formula(*doc.complex);
  std::optional<LabelQuotient> q;
  if (!quotient.empty()) q = quotient_from_json(parse_json(read_text_file(quotient), quotient), quotient);
  K0Class shown = q ? apply_quotient(k, *q) : k;
  Json j = k0_to_json(shown);
  std::string text = shown.to_string() + "\n";
  if (!point.empty()) {
    bool trivial = is_trivial_class(k, ClassLabel(point), q ? &*q : nullptr);
    j["trivial"] = trivial;
    j["point"] = point;
    text += trivial ? "trivial: equals [" + point + "]\n" : "non-trivial: differs from [" + point + "]\n";
  }
  emit(j, text);
  return 0;
}

int cmd_verify(const std::string& file, const std::string& suite, std::uint64_t seed, int cases) {
  SuiteReport rep = file.empty() ? run_random_suite(suite, seed, cases) : run_suite(load_complex(file).complex, suite);
  emit(rep.to_json(), rep.to_text());
  return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stratified complexes, subdivisions and their chain-level comparisons"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", g_json, "Machine-readable output");

  std::string file, realization, quotient, point, star, blowup, profile, out, suite = "full";
  int extended = -1, cases = 20;
  std::uint64_t seed = 1;
  bool bary = false, constant = false, check = false;
  int code = 0;

  auto* validate = app.add_subcommand("validate", "Validate a complex document");
  validate->add_option("file", file, "Complex document")->required();
  validate->callback([&] {
    ComplexDocument doc = load_complex(file);
    const auto& c = *doc.complex;
    std::string text = "valid: " + std::to_string(c.vertex_count()) + " vertices, " + std::to_string(c.stratum_count()) +
                       " strata" + (doc.lattice ? ", lattice data" : "") + "\n";
    emit(Json{{"ok", true}, {"vertices", c.vertex_count()}, {"strata", c.stratum_count()}, {"lattice", doc.lattice.has_value()}},
         text);
  });

  auto* sd = app.add_subcommand("sd", "Build the subdivision complex");
  sd->add_option("file", file)->required();
  sd->add_option("--extended", extended, "Extended complex up to degree N (0: default bound)");
  sd->callback([&] { code = cmd_build(file, extended, false); });

  auto* cech = app.add_subcommand("cech", "Build the Cech complex");
  cech->add_option("file", file)->required();
  cech->add_option("--extended", extended, "Extended complex up to degree N (0: default bound)");
  cech->callback([&] { code = cmd_build(file, extended, true); });

  auto* compare = app.add_subcommand("compare", "Check the lambda/sd equivalence and the homotopy");
  compare->add_option("file", file)->required();
  compare->callback([&] { code = cmd_compare(file); });

  auto* sub = app.add_subcommand("subdivide", "Barycentric, star or blowup subdivision");
  sub->add_option("file", file)->required();
  sub->add_flag("--barycentric", bary);
  sub->add_option("--star", star, "Center stratum");
  sub->add_option("--blowup", blowup, "Center stratum");
  sub->add_option("--profile", profile, "Intersection profile document");
  sub->add_option("-o,--output", out, "Write the derived complex here");
  sub->add_flag("--check", check, "Verify the comparison maps and homotopies");
  sub->callback([&] { code = cmd_subdivide(file, bary, star, blowup, profile, out, check); });

  auto* resolve = app.add_subcommand("resolve", "Resolve the lattice cone complex by star subdivisions");
  resolve->add_option("file", file)->required();
  resolve->callback([&] { code = cmd_resolve(file); });

  auto* hom = app.add_subcommand("homology", "Homology of the realized Cech complex");
  hom->add_option("file", file)->required();
  hom->add_option("--realization", realization, "Realization document");
  hom->add_flag("--constant", constant, "Constant realization (dual complex)");
  hom->callback([&] { code = cmd_homology(file, realization, constant); });

  auto* vol = app.add_subcommand("volume", "Motivic volume class");
  vol->add_option("file", file)->required();
  vol->add_option("--quotient", quotient, "Label quotient document");
  vol->add_option("--point", point, "Point label for the triviality test");
  vol->callback([&] { code = cmd_volume(file, quotient, point); });

  auto* ver = app.add_subcommand("verify", "Run a verification suite on a file or on random complexes");
  ver->add_option("file", file, "Complex document (random complexes when omitted)");
  ver->add_option("--suite", suite, "complex, maps, homotopies, k0, homology or full")
      ->check(CLI::IsMember({"complex", "maps", "homotopies", "k0", "homology", "full"}));
  ver->add_option("--seed", seed);
  ver->add_option("--cases", cases);
  ver->callback([&] { code = cmd_verify(file, suite, seed, cases); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MathError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return code;
}
