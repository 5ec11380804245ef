#pragma once

// Independent reference implementations used only by the tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "wlsim/graph.hpp"

namespace oracle {

/// All non-isomorphic simple graphs on n nodes, for n = 0..max_n
/// (result[n]). Orderly extension: every graph on n nodes arises from one
/// on n-1 nodes plus a node joined to some subset; duplicates are removed
/// by a brute-force canonical form. Requires max_n <= 8.
std::vector<std::vector<wlsim::Graph>> graphs_by_size(std::size_t max_n);

/// Minimum upper-triangle adjacency bitmask over all node orderings that
/// list nodes by non-increasing degree. Requires n <= 11.
std::uint64_t canonical_code(const wlsim::Graph& g);

/// Exhaustive search over all n! bijections.
bool brute_force_isomorphic(const wlsim::Graph& a, const wlsim::Graph& b);

/// Color refinement on the disjoint union without any compression
/// dictionary: two nodes stay together iff they were together and every
/// old class holds the same number of their neighbors (counted directly).
/// Returns the first round at which some class has different sizes in the
/// two graphs; empty once the union partition is stable.
std::optional<std::size_t> naive_wl_distinguish(const wlsim::Graph& a, const wlsim::Graph& b);

/// e^x / (1 + e^x) evaluated with `work_bits` of precision, then rounded to
/// a double.
double logistic_reference(double x, unsigned work_bits = 200);

/// Root of s(2g) + s(5g) - 2 s(3g) in (0.5, 0.8) for the logistic s, found
/// by bisection at 256 bits and rounded to a double.
double collision_gamma();

/// The graph behind collision_gamma: a path a-v-h, three extra leaves on
/// h, and a disjoint 4-cycle. WL separates v from the cycle nodes at round
/// 2, where their simplified-scheme features are s(g(s(3g) + s(2g) + s(5g)))
/// and s(3g s(3g)).
wlsim::Graph collision_graph();

}  // namespace oracle
