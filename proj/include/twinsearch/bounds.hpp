#ifndef TWINSEARCH_BOUNDS_HPP
#define TWINSEARCH_BOUNDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include "twinsearch/factor_graph.hpp"
#include "twinsearch/hypergraph.hpp"

namespace twinsearch {

// Exact arbitrary-precision nonnegative count. Products of binomials pass
// 64 bits around m ~ 20, so everything here stays in exact integers.
using BigCount = boost::multiprecision::cpp_int;

// binom(a, b) by the multiplicative formula; 0 when b > a or b < 0.
BigCount binomial(std::int64_t a, std::int64_t b);

// Worst-case search tree size over the initial factor graph:
// prod_e binom(|eta_e|, W_e). Also the basis for the per-edge maximum C.
BigCount worst_case_tree_size(const FactorGraph& f, const ProjectionMatrix& w);

// max_e binom(|eta_e|, W_e): the widest single-edge expansion.
BigCount max_edge_width(const FactorGraph& f, const ProjectionMatrix& w);

// Clique approximation to the twin-set size:
// prod_{k: M_k > 0} binom(C_k, M_k); exact 0 when some M_k > C_k.
BigCount clique_approximation(const CliqueCensus& census, const SizeDistribution& sizes);

// prod_k binom(binom(n,k), M_k): the size-distribution bound that ignores
// the projection entirely.
BigCount naive_upper_bound(int n, const SizeDistribution& sizes);

}  // namespace twinsearch

#endif
