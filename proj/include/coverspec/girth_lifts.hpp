#pragma once

#include <string>
#include <vector>

#include "coverspec/cover.hpp"

namespace coverspec {

inline constexpr std::size_t kDefaultLiftBudget = 20'000;

// The 2^{m+1}-lift (m = number of edge pairs) in which the i-th pair carries
// the shift j -> j + 2^i. Strictly increases the girth of a cyclic graph. An
// acyclic input is returned unchanged (degree 1) with a note.
Cover girth_doubling_lift(const Multigraph& h, std::size_t max_vertices = kDefaultLiftBudget);
LiftSpec girth_doubling_spec(const Multigraph& h);

// A cyclic (Z_N voltage) lift with girth >= target_girth, N prime, searched in
// increasing order until the vertex budget is reached. Throws BudgetExceeded
// when no such lift fits, and PreconditionError when some closed
// non-backtracking walk shorter than the target has zero homology (no abelian
// lift can then reach the target).
Cover cyclic_voltage_lift(const Multigraph& g, std::size_t target_girth,
                          std::size_t max_vertices = kDefaultLiftBudget);

struct GirthSequence {
  std::vector<Cover> covers;        // each a cover of the input, girths strictly increasing
  std::vector<std::size_t> girths;
  std::vector<std::string> warnings;
};

// k covers of g with strictly increasing girth. Each step applies the
// doubling lift to the previous element while it fits the budget and falls
// back to a direct cyclic lift of g otherwise; the sequence is truncated with
// a warning when neither fits.
GirthSequence girth_sequence(const Multigraph& g, std::size_t k, std::size_t max_vertices = kDefaultLiftBudget);

// Smallest cover found of girth > min_girth: g itself, else the doubling lift,
// else a cyclic lift.
Cover cover_with_girth_above(const Multigraph& g, std::size_t min_girth,
                             std::size_t max_vertices = kDefaultLiftBudget);

}  // namespace coverspec
