#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rips/complex.hpp"
#include "rips/geometry.hpp"
#include "rips/linalg.hpp"

namespace rips {

/// Boundary operator d_p in canonical face order. Column j is the boundary of
/// the j-th p-face with sign (-1)^i on the face omitting its i-th vertex; d_0
/// is the augmentation (a 1 x f_0 row of ones), which yields reduced homology.
/// Throws DimensionOutOfRange unless 0 <= p <= dim_cap.
SparseColumnMatrix boundary_matrix(const SimplicialComplex& complex, int p,
                                   const FieldSpec& field = {});

/// Reduced Betti numbers over GF(p).
struct BettiVector {
  FieldSpec field;
  std::vector<std::size_t> betti;

  friend bool operator==(const BettiVector& a, const BettiVector& b) {
    return a.field.p == b.field.p && a.betti == b.betti;
  }
};

/// beta_0..beta_pmax; requires pmax <= dim_cap - 1 so that the image of
/// d_{pmax+1} is known.
BettiVector betti_numbers(const SimplicialComplex& complex, int pmax,
                          const FieldSpec& field = {});

/// beta_0..beta_dim_cap, treating the complex as having no faces above its
/// cap. Only meaningful when that is true (e.g. explicit face lists).
BettiVector betti_numbers_through_cap(const SimplicialComplex& complex,
                                      const FieldSpec& field = {});

struct EulerReport {
  std::int64_t from_faces = 0;  // sum (-1)^p f_p - 1
  std::int64_t from_betti = 0;  // sum (-1)^p beta_p
  bool passed = false;
};

/// Reduced Euler characteristic computed from face counts and from Betti
/// numbers. The caller asserts the complex has no faces above its cap.
EulerReport euler_poincare_check(const SimplicialComplex& complex, const FieldSpec& field = {});

/// A closed edge path (v_1, ..., v_r) in a complex's 1-skeleton.
struct Cycle {
  std::vector<Vertex> vertices;
  bool simple = false;
  bool chord_free = false;
  bool epsilon_simple = false;

  friend bool operator==(const Cycle&, const Cycle&) = default;
};

struct CycleBasis {
  std::vector<Cycle> cycles;
};

/// 1-chain of a closed walk over the complex's edges. Throws FaceNotPresent if
/// a step is not an edge.
SparseVector cycle_chain(const SimplicialComplex& complex, std::span<const Vertex> cycle,
                         const FieldSpec& field = {});

bool is_simple(std::span<const Vertex> cycle);
bool is_chord_free(const Graph& graph, std::span<const Vertex> cycle);
/// Length-4 cycle (u, u', v', v) with u, u' in one cube and v, v' in one cube,
/// up to rotation.
bool is_epsilon_simple(std::span<const Vertex> cycle, std::span<const CubeIndex> cubes);

/// Rotation/reflection representative with the smallest vertex first and the
/// smaller neighbour second.
std::vector<Vertex> canonical_cycle(std::span<const Vertex> cycle);

struct BasisCheck {
  bool edges_present = false;
  bool independent = false;
  bool spanning = false;
  std::size_t beta1 = 0;

  bool ok() const { return edges_present && independent && spanning; }
};

/// Rank test: do the classes of `cycles` form a basis of H_1?
BasisCheck check_h1_basis(const SimplicialComplex& complex, const std::vector<Cycle>& cycles,
                          const FieldSpec& field = {});

/// H_1 basis of simple, chord-free cycles. Starts from spanning-forest
/// fundamental cycles and splits at repeated vertices and chords until every
/// cycle is simple and chord-free, re-selecting a basis after each split
/// (shorter cycles first, then lexicographically smaller). Needs dim_cap >= 2.
CycleBasis h1_cycle_basis(const SimplicialComplex& complex, const FieldSpec& field = {});

struct RefinedBasis {
  CycleBasis basis;
  std::size_t non_epsilon_simple = 0;
  std::size_t rewrites = 0;
};

/// Replaces one of each pair of near, non-epsilon-simple basis cycles by the
/// quadrilaterals between them until no such pair remains. `complex` must be
/// the Rips complex of `cloud`. Throws InvalidBasis if the input classes are
/// not an H_1 basis.
RefinedBasis refine_epsilon_simple(const CycleBasis& basis, const SimplicialComplex& complex,
                                   const PointCloud& cloud, double epsilon,
                                   const FieldSpec& field = {});

/// Dimension of the image of H_p(sub) -> H_p(super) under the vertex map
/// `injection` (sub vertex i -> super vertex injection[i]). Throws
/// NotASubcomplex if a face of sub does not map to a face of super.
std::size_t induced_image_dim(const SimplicialComplex& sub, std::span<const Vertex> injection,
                              const SimplicialComplex& super, int p,
                              const FieldSpec& field = {});

}  // namespace rips
