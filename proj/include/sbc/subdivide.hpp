#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "sbc/builders.hpp"
#include "sbc/chain.hpp"
#include "sbc/strata.hpp"

namespace sbc {

enum class SubdivisionKind { Barycentric, Star, Blowup };
enum class BlowupMode { Proper, EqualsCenter, NoStratum };

struct Provenance {
  enum class Kind { StrictTransform, Exceptional, Chain };
  Kind kind = Kind::StrictTransform;
  int image = -1;          // base stratum the derived one maps to
  int component = 0;       // blowup: component of Z meeting the image
  std::uint32_t mask = 0;  // exceptional: kept positions of Vert(image)
  Chain chain;             // barycentric
  bool operator==(const Provenance&) const = default;
};

/// Derived complex, pushforward and bookkeeping. The arrow table has the base
/// as space 0 and the derived complex as space 1.
struct SubdivisionResult {
  SubdivisionKind kind = SubdivisionKind::Barycentric;
  BlowupMode mode = BlowupMode::Proper;
  ComplexPtr base, derived;
  PosetMap pushforward;
  std::vector<Provenance> provenance;
  std::vector<std::pair<int, int>> iso_tags;       // (derived, base)
  std::vector<std::pair<int, int>> derived_isos;   // iso inclusions inside the derived complex
  int center = -1;
  int center_last_position = -1;  // position of b = max Vert(center) inside Vert(center)
  bool reordered = false;         // base order was replaced by an adapted linear order
  TablePtr table;
  std::map<std::tuple<int, int, std::uint32_t>, int> exceptional_index;

  /// Derived stratum with the given provenance, or -1.
  int exceptional(int image, int component, std::uint32_t mask) const;
};

/// Geometric data for a blowup center Z inside the center stratum.
struct IntersectionProfile {
  std::string center;
  BlowupMode mode = BlowupMode::Proper;
  std::map<std::string, int> components;   // Z ∩ D_tau component counts, default 1
  std::map<std::string, std::string> labels;  // optional classes of exceptional strata per tau
};

SubdivisionResult barycentric(ComplexPtr c);
SubdivisionResult simplicialize(ComplexPtr c);

struct BarycentricComparison {
  BuiltPtr cech_derived, sd_derived, sd_base;
  ChainMap phi, phi_inverse, lambda, pushforward;
  ValidationReport report;
};

/// Phi : C(derived) -> Sd(base); checks it is an isomorphism and Phi∘lambda = Sd(f).
BarycentricComparison barycentric_comparison(const SubdivisionResult& r);

/// Linear order with Vert(center) last inside every stratum of the star; c itself when already so.
ComplexPtr adapted_order(ComplexPtr c, int center, bool* reordered = nullptr);

SubdivisionResult star_subdivide(ComplexPtr c, int center);
SubdivisionResult blowup_subdivide(ComplexPtr c, const IntersectionProfile& profile);

struct CechPushforward {
  BuiltPtr cech_base, cech_derived;
  ChainMap closed_form;  // case analysis
  ChainMap composite;    // lambda ∘ Sd(mu) ∘ sd
  ValidationReport report;
};

/// C(mu) from the three-case closed form, checked against the composite.
CechPushforward star_cech_pushforward(const SubdivisionResult& r);

struct InverseAndHomotopy {
  ChainMap gamma;          // C(base) -> C(derived)
  ChainMap pushforward;    // C(mu)
  ChainHomotopy homotopy;  // between id and gamma∘C(mu)
  ValidationReport report;
};

InverseAndHomotopy star_inverse_and_homotopy(const SubdivisionResult& r, const CechPushforward& p);
InverseAndHomotopy star_inverse_and_homotopy(const SubdivisionResult& r);
InverseAndHomotopy blowup_inverse_and_homotopy(const SubdivisionResult& r, const CechPushforward& p);
InverseAndHomotopy blowup_inverse_and_homotopy(const SubdivisionResult& r);

/// For the no-stratum blowup: C(mu) is invertible and a chain map.
ValidationReport check_isomorphism(const SubdivisionResult& r);

/// Structural equality of two subdivision outputs (derived data, pushforward, tags).
bool same_subdivision(const SubdivisionResult& a, const SubdivisionResult& b, std::string* why = nullptr);

}  // namespace sbc
