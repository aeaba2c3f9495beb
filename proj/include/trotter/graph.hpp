#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "trotter/hamiltonian.hpp"

namespace trotter {

/// Term non-commutativity structure: node i is term i, an edge (i, j) means
/// terms i and j do not commute.
struct IncompatibilityGraph {
    std::size_t node_count = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
    std::vector<std::vector<bool>> adjacency;

    bool adjacent(std::size_t i, std::size_t j) const { return adjacency[i][j]; }
    std::size_t degree(std::size_t i) const;
};

enum class ColoringStrategy { independent_set, largest_first };

/// Partition of terms into fully commuting sets; each color class is an
/// independent set of the incompatibility graph.
struct Coloring {
    std::vector<std::size_t> assignment;  // term index -> 0-based color
    std::size_t set_count = 0;

    std::vector<std::size_t> class_sizes() const;
};

struct ColoringStats {
    std::size_t set_count = 0;
    double sets_per_term_ratio = 0.0;
    double mean_size = 0.0;
    double stddev_size = 0.0;  // population standard deviation
};

IncompatibilityGraph build_graph(const QubitHamiltonian& h);

/// Deterministic greedy coloring; ties always break toward the lowest node
/// index. independent_set repeatedly extracts a maximal independent set
/// (ascending index scan); largest_first colors nodes in degree-descending
/// order with the smallest available color.
Coloring greedy_color(const IncompatibilityGraph& g, ColoringStrategy strategy);

ColoringStats coloring_stats(const Coloring& c);

}  // namespace trotter
