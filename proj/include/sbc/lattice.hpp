#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sbc/smith.hpp"
#include "sbc/strata.hpp"
#include "sbc/subdivide.hpp"

namespace sbc {

using LatticeMatrix = IntMatrix<long long>;
using LatticeVector = std::vector<long long>;

struct LatticeCone {
  std::string id;
  int dim = 0;
  LatticeMatrix rays;  // dim rows, one column per ray
};

/// Cone data on every stratum of a simplicial complex. The cone of a stratum
/// lives in its own lattice Z^codim; ray columns follow the stratum's vertex order.
struct LatticeConeComplex {
  ComplexPtr complex;
  std::vector<LatticeMatrix> rays;

  LatticeCone cone(int s) const;
  /// N_face -> N_s for face j of s, computed from the rays.
  LatticeMatrix face_embedding(int s, int j) const;
};

/// Rays in column order, face lattices are determined by the embeddings check.
LatticeConeComplex make_lattice_complex(ComplexPtr c, std::vector<LatticeMatrix> rays);
/// Full-rank square rays, primitive columns, integral and saturated face embeddings.
ValidationReport validate_lattice(const LatticeConeComplex& cc);

/// Every stratum gets the standard cone.
LatticeConeComplex standard_lattice(ComplexPtr c);

/// One simplicial cone with all of its faces; face rays are coordinates in the
/// saturated sublattice they span.
LatticeConeComplex cone_complex_from_rays(const LatticeMatrix& rays, const std::string& name = "cone");

/// Coordinates X of the columns of c in a basis B of the saturation of their span (c = B X).
LatticeMatrix saturated_coordinates(const LatticeMatrix& c);

long long multiplicity(const LatticeCone& c);

struct SmoothnessReport {
  bool smooth = true;
  std::optional<int> witness;  // first stratum of multiplicity > 1
  long long multiplicity = 1;
};
SmoothnessReport is_smooth(const LatticeConeComplex& cc);

LatticeVector barycenter(const LatticeCone& c);

struct LatticeStar {
  LatticeConeComplex complex;
  SubdivisionResult subdivision;
};

/// Star subdivision at a primitive vector v in the relative interior of the center cone.
/// v is given in the coordinates of the center's lattice.
LatticeStar star_at_vector(const LatticeConeComplex& cc, int center, const LatticeVector& v);

struct ResolutionStep {
  std::string cone;     // cone of maximal multiplicity
  std::string center;   // face whose interior contains the chosen point
  LatticeVector point;  // in the center's coordinates
  long long multiplicity_before = 0;  // maximal multiplicity
  int count_before = 0;               // cones of maximal multiplicity
  long long total_before = 0;         // sum of (multiplicity - 1) over all cones
};

struct Resolution {
  LatticeConeComplex complex;
  std::vector<ResolutionStep> steps;
};

/// Nonzero lattice points of the half-open fundamental parallelepiped,
/// as numerators of barycentric coordinates over |det|.
std::vector<LatticeVector> parallelepiped_points(const LatticeMatrix& rays);

/// Every step lowers (maximal multiplicity, number of cones attaining it) lexicographically.
Resolution toric_resolve(const LatticeConeComplex& cc, int max_steps = 10000);

}  // namespace sbc
