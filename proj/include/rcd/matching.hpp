#pragma once

#include <functional>
#include <random>
#include <vector>

#include "rcd/dimer_graph.hpp"
#include "rcd/flow.hpp"

namespace rcd {

// Perfect matching as a sorted list of edge ids.
struct DimerCover {
  std::vector<int> edges;
  friend bool operator==(const DimerCover&, const DimerCover&) = default;
  friend auto operator<=>(const DimerCover&, const DimerCover&) = default;
};

inline constexpr int kDefaultMatchingCap = 96;

bool is_perfect_matching(const DimerGraph& dg, const DimerCover& m);

// All perfect matchings (containing the marked edge when there is one), in
// lexicographic branching order: the smallest unmatched vertex is matched
// along its rotation first.
void for_each_matching(const DimerGraph& dg, const std::function<void(const DimerCover&)>& fn,
                       int cap = kDefaultMatchingCap);
std::vector<DimerCover> enumerate_matchings(const DimerGraph& dg, int cap = kDefaultMatchingCap);
// Same list, with the branches below a shallow prefix explored in parallel.
std::vector<DimerCover> enumerate_matchings_parallel(const DimerGraph& dg, int cap = kDefaultMatchingCap);

// Sum of weights over all matchings, serial and parallel.
Rational matching_partition_function(const DimerGraph& dg, int cap = kDefaultMatchingCap);
Rational matching_partition_function_parallel(const DimerGraph& dg, int cap = kDefaultMatchingCap);

// prod_{e in M} x_e.
Rational dimer_measure_weight(const DimerGraph& dg, const DimerCover& m);

// Long edges of M as directed edges of G->. Throws std::logic_error if the
// result is not alternating.
AlternatingFlow eta(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m);
Current pi(const DirectedGraphTriple& t, const DimerGraph& dg, const DimerCover& m);

// Matchings M with eta(M) = f: long edges of f plus short edges, forced
// except on the cycles of isolated vertices (two choices each).
std::vector<DimerCover> eta_fiber(const DirectedGraphTriple& t, const DimerGraph& dg, const AlternatingFlow& f);

// Draws M from the dimer measure conditioned on pi(M) = w.
DimerCover sample_dimer_via_current(const DirectedGraphTriple& t, const DimerGraph& dg, const Current& w,
                                    std::mt19937_64& rng);

}  // namespace rcd
