#pragma once

#include <random>
#include <vector>

#include "rcd/matching.hpp"

namespace rcd {

// Per edge of G^d, the flux from the white to the black endpoint. Without
// boundary sources: 1/2 on short edges, 0 on long ones. For an augmented
// triple: the indicator of dobrushin_reference_matching.
std::vector<Rational> reference_form(const DirectedGraphTriple& t, const DimerGraph& dg);

// A cover in the marked family whose current is the odd path along the
// clockwise boundary arc from b to a.
DimerCover dobrushin_reference_matching(const DirectedGraphTriple& t, const DimerGraph& dg);

// Height of a cover on the faces of G^d, zero on the face holding the
// unbounded face of the carrier graph.
struct HeightField {
  std::vector<Rational> value;  // per face of G^d
  int base_face = -1;
};

// Crossing an edge of G^d from the left of half-edge hh to its right changes
// h by -(f_M - f0)(hh), with the opposite sign for an augmented triple. Plane only; throws std::domain_error on the torus and
// std::logic_error if the flux is not path independent.
HeightField height(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m);
// Restriction to the carrier faces (integers) and the base vertices
// (half-integers; isolated base vertices have no face and get 0).
std::vector<Rational> on_carrier_faces(const DimerGraph& dg, const HeightField& h);
std::vector<Rational> on_base_vertices(const DimerGraph& dg, const HeightField& h);

// Net number of flow edges crossing a face path from left to right, taken
// relative to the reference flow for an augmented triple. Per carrier face,
// zero on the unbounded one. Plane only.
std::vector<int> flow_height(const DirectedGraphTriple& t, const AlternatingFlow& f);

// Carrier faces that are faces of G: all of them, except for an augmented
// triple the face cut off between e_(a,b) and the arc from b to a.
std::vector<int> base_faces(const DirectedGraphTriple& t);

// Cluster of each carrier edge (boundary edge: the cluster of a), -1 when the
// edge is absent from w.
std::vector<int> edge_clusters(const DirectedGraphTriple& t, const ClusterDecomposition& c, const Current& w);

// Whether the odd edges of `cluster` (with e_(a,b) for the cluster of a)
// separate carrier face u from the unbounded face. Plane only.
bool odd_around(const DirectedGraphTriple& t, const Current& w, int cluster, int u);

struct NestingField {
  std::vector<int> value;  // per carrier face
  Current current;
  std::vector<int> xi;     // per cluster
};

// S_u = sum of xi_C over the clusters odd around u. The cluster joining a and
// b gets xi = 1. Plane only.
NestingField nesting_field(const DirectedGraphTriple& t, const Current& w, std::vector<int> xi);
NestingField nesting_field(const DirectedGraphTriple& t, const Current& w, std::mt19937_64& rng);

// Parity of the number of odd edges of `cluster` crossed by a carrier face
// path.
bool odd_wrt_path(const DirectedGraphTriple& t, const Current& w, int cluster, const FacePath& path);
// S along the path: sum of xi_C over clusters odd with respect to it.
int increment_along(const DirectedGraphTriple& t, const Current& w, const std::vector<int>& xi,
                    const FacePath& path);
// h along a carrier face path: flux of f_M - f0 across it.
Rational increment_along(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m,
                         const FacePath& path);

}  // namespace rcd
