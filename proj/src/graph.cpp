#include "trotter/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace trotter {

std::size_t IncompatibilityGraph::degree(std::size_t i) const {
    return static_cast<std::size_t>(std::count(adjacency[i].begin(), adjacency[i].end(), true));
}

std::vector<std::size_t> Coloring::class_sizes() const {
    std::vector<std::size_t> sizes(set_count, 0);
    for (std::size_t c : assignment) ++sizes[c];
    return sizes;
}

IncompatibilityGraph build_graph(const QubitHamiltonian& h) {
    IncompatibilityGraph g;
    g.node_count = h.terms.size();
    g.adjacency.assign(g.node_count, std::vector<bool>(g.node_count, false));
    for (std::size_t i = 0; i < g.node_count; ++i) {
        for (std::size_t j = i + 1; j < g.node_count; ++j) {
            if (!commutes(h.terms[i].string, h.terms[j].string)) {
                g.edges.emplace_back(i, j);
                g.adjacency[i][j] = g.adjacency[j][i] = true;
            }
        }
    }
    return g;
}

namespace {

Coloring color_independent_set(const IncompatibilityGraph& g) {
    const std::size_t n = g.node_count;
    Coloring c;
    c.assignment.assign(n, 0);
    std::vector<bool> colored(n, false);
    std::size_t remaining = n;
    std::size_t color = 0;
    std::vector<std::size_t> current;
    while (remaining > 0) {
        current.clear();
        for (std::size_t v = 0; v < n; ++v) {
            if (colored[v]) continue;
            bool independent = true;
            for (std::size_t u : current) {
                if (g.adjacent(u, v)) { independent = false; break; }
            }
            if (independent) current.push_back(v);
        }
        for (std::size_t v : current) {
            c.assignment[v] = color;
            colored[v] = true;
        }
        remaining -= current.size();
        ++color;
    }
    c.set_count = color;
    return c;
}

Coloring color_largest_first(const IncompatibilityGraph& g) {
    const std::size_t n = g.node_count;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&g](std::size_t a, std::size_t b) {
        return g.degree(a) > g.degree(b);
    });
    Coloring c;
    c.assignment.assign(n, 0);
    std::vector<bool> colored(n, false);
    std::vector<bool> used;
    for (std::size_t v : order) {
        used.assign(c.set_count + 1, false);
        for (std::size_t u = 0; u < n; ++u) {
            if (colored[u] && g.adjacent(u, v)) used[c.assignment[u]] = true;
        }
        std::size_t color = 0;
        while (color < used.size() && used[color]) ++color;
        c.assignment[v] = color;
        colored[v] = true;
        c.set_count = std::max(c.set_count, color + 1);
    }
    if (n == 0) c.set_count = 0;
    return c;
}

}  // namespace

Coloring greedy_color(const IncompatibilityGraph& g, ColoringStrategy strategy) {
    switch (strategy) {
        case ColoringStrategy::independent_set: return color_independent_set(g);
        case ColoringStrategy::largest_first: return color_largest_first(g);
    }
    throw std::logic_error("invalid coloring strategy");
}

ColoringStats coloring_stats(const Coloring& c) {
    ColoringStats s;
    s.set_count = c.set_count;
    if (c.set_count == 0) return s;
    const auto sizes = c.class_sizes();
    const double terms = static_cast<double>(c.assignment.size());
    s.sets_per_term_ratio = static_cast<double>(c.set_count) / terms;
    s.mean_size = terms / static_cast<double>(c.set_count);
    double var = 0.0;
    for (std::size_t k : sizes) {
        const double d = static_cast<double>(k) - s.mean_size;
        var += d * d;
    }
    s.stddev_size = std::sqrt(var / static_cast<double>(c.set_count));
    return s;
}

}  // namespace trotter
