#pragma once

#include <vector>

#include "rcd/dimer_graph.hpp"

namespace rcd {

// Replaces v by v1 - n - v2 joined by weight-1 edges. v1 (keeping the id of
// v) receives the half-edges of `arc`, v2 the others; both arcs must be
// nonempty and cyclically contiguous in the rotation of v.
DimerGraph vertex_split(const DimerGraph& dg, int v, const std::vector<int>& arc);

// Urban renewal of the quadrilateral on the left of half-edge h. With x_i
// the weight of the i-th boundary edge starting at h and D = x0 x2 + x1 x3,
// the quadrilateral is replaced by an inner one joined to the corners by
// weight-1 spokes, the inner edge parallel to edge i weighing x_{i+2} / D.
// The gauge is multiplied by D. Throws std::invalid_argument unless the face
// has four distinct corners and four distinct edges.
DimerGraph urban_renewal(const DimerGraph& dg, int h);

// Removes a degree-2 vertex with distinct neighbours u and w, merging w into
// u. Edges of u are multiplied by the weight of the v-w edge and edges of w
// by the weight of the u-v edge.
DimerGraph contract_vertex(const DimerGraph& dg, int v);

// Replaces the two edges of a 2-gon face by one edge carrying the sum of
// their weights. The 2-gon face disappears.
DimerGraph merge_parallel(const DimerGraph& dg, int face);

// For every edge of G: renews the quadrilateral between the strand m and s1
// (or s2 when s1 would glue two finished quadrilaterals), after splitting
// the corners it shares with the rest, then contracts the corners and
// collapses the doubled edge. The result is cubic with 4|E| vertices: one
// quadrilateral per edge with sides w = 2x/(1+x^2) and z = (1-x^2)/(1+x^2)
// and weight-1 connectors. Plane only.
DimerGraph to_cg(const DimerGraph& dg, const DirectedGraphTriple& t);

// Product of the weights of the half-edges of a face leaving white vertices
// over those leaving black ones; invariant under gauge changes.
Rational face_weight(const DimerGraph& dg, int face);

}  // namespace rcd
