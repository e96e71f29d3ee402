#pragma once

#include <cstdint>
#include <random>

#include "sbc/lattice.hpp"
#include "sbc/strata.hpp"

namespace sbc {

struct RandomComplexOptions {
  int max_vertices = 6;
  int max_simplex = 4;          // vertices per maximal stratum, so dim <= 3
  int max_maximal = 5;
  double partial_order = 0.25;  // probability of an order given by explicit edges
  double duplicate = 0.2;       // probability of a duplicated maximal stratum
  double pooled_labels = 0.5;   // labels from a small pool instead of distinct ones
};

using Rng = std::mt19937_64;

/// Ordered simplicial complex, closed under faces.
ComplexPtr random_complex(Rng& rng, const RandomComplexOptions& opt = {});

/// Square matrix with determinant ±1.
LatticeMatrix random_unimodular(Rng& rng, int n, int steps = 12);

/// Simplicial cone in Z^dim with primitive rays and multiplicity in [1, max_multiplicity].
LatticeMatrix random_cone(Rng& rng, int dim, long long max_multiplicity);

}  // namespace sbc
