#include "trotter/ordering.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace trotter {

namespace {

constexpr std::array<std::pair<OrderingStrategy, std::string_view>, 8> kStrategyNames = {{
    {OrderingStrategy::magnitude, "magnitude"},
    {OrderingStrategy::lexicographic, "lexicographic"},
    {OrderingStrategy::deplete_groups, "deplete_groups"},
    {OrderingStrategy::equalise_groups, "equalise_groups"},
    {OrderingStrategy::commutator, "commutator"},
    {OrderingStrategy::reverse_commutator, "reverse_commutator"},
    {OrderingStrategy::error_operator_greedy, "error_operator_greedy"},
    {OrderingStrategy::as_given, "as_given"},
}};

double magnitude(const PauliTerm& t) { return std::abs(t.coefficient); }

// Universal strategy tie-break: magnitude descending, then lexicographic key.
bool magnitude_then_lex(const PauliTerm& a, const PauliTerm& b) {
    const double ma = magnitude(a), mb = magnitude(b);
    if (ma != mb) return ma > mb;
    return lexicographic_less(a.string, b.string);
}

// Identity and exactly-zero terms contribute no Trotter error; strategies
// order the rest and keep these at the front in original order.
struct StrategyInput {
    std::vector<std::size_t> passive;  // prepended as-is
    std::vector<std::size_t> active;   // indices handed to the strategy
};

StrategyInput split_strategy_input(const QubitHamiltonian& h) {
    StrategyInput in;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        const PauliTerm& t = h.terms[i];
        if (t.string.is_identity() || t.coefficient == 0.0) {
            in.passive.push_back(i);
        } else {
            in.active.push_back(i);
        }
    }
    return in;
}

OrderingResult assemble(const QubitHamiltonian& h, const StrategyInput& in,
                        std::vector<std::size_t> ordered_active) {
    std::vector<std::size_t> perm = in.passive;
    perm.insert(perm.end(), ordered_active.begin(), ordered_active.end());
    return ordering_from_permutation(h, perm);
}

}  // namespace

std::string_view strategy_name(OrderingStrategy s) {
    for (const auto& [v, n] : kStrategyNames) {
        if (v == s) return n;
    }
    throw std::logic_error("invalid OrderingStrategy");
}

OrderingStrategy strategy_from_name(std::string_view name) {
    for (const auto& [v, n] : kStrategyNames) {
        if (n == name) return v;
    }
    throw std::invalid_argument("unknown ordering strategy '" + std::string(name) + "'");
}

std::span<const OrderingStrategy> all_strategies() {
    static const std::array<OrderingStrategy, 8> all = {
        OrderingStrategy::magnitude,        OrderingStrategy::lexicographic,
        OrderingStrategy::deplete_groups,   OrderingStrategy::equalise_groups,
        OrderingStrategy::commutator,       OrderingStrategy::reverse_commutator,
        OrderingStrategy::error_operator_greedy, OrderingStrategy::as_given,
    };
    return all;
}

OrderingResult ordering_from_permutation(const QubitHamiltonian& h,
                                         std::span<const std::size_t> permutation) {
    if (permutation.size() != h.terms.size()) {
        throw std::invalid_argument("permutation length does not match term count");
    }
    OrderingResult r;
    r.permutation.assign(permutation.begin(), permutation.end());
    r.ordered.qubit_count = h.qubit_count;
    r.ordered.label = h.label;
    r.ordered.terms.reserve(h.terms.size());
    std::vector<bool> seen(h.terms.size(), false);
    for (std::size_t p : permutation) {
        if (p >= h.terms.size() || seen[p]) {
            throw std::invalid_argument("permutation is not a bijection");
        }
        seen[p] = true;
        r.ordered.terms.push_back(h.terms[p]);
    }
    return r;
}

OrderingResult order_magnitude(const QubitHamiltonian& h) {
    StrategyInput in = split_strategy_input(h);
    std::stable_sort(in.active.begin(), in.active.end(), [&h](std::size_t a, std::size_t b) {
        return magnitude_then_lex(h.terms[a], h.terms[b]);
    });
    return assemble(h, in, in.active);
}

OrderingResult order_lexicographic(const QubitHamiltonian& h) {
    StrategyInput in = split_strategy_input(h);
    std::stable_sort(in.active.begin(), in.active.end(), [&h](std::size_t a, std::size_t b) {
        return lexicographic_less(h.terms[a].string, h.terms[b].string);
    });
    return assemble(h, in, in.active);
}

OrderingResult order_deplete_groups(const QubitHamiltonian& h, const Coloring& c) {
    if (c.assignment.size() != h.terms.size()) {
        throw std::invalid_argument("coloring does not match Hamiltonian");
    }
    StrategyInput in = split_strategy_input(h);

    // Bucket active terms per class, each bucket magnitude-sorted.
    std::vector<std::vector<std::size_t>> buckets(c.set_count);
    for (std::size_t i : in.active) buckets[c.assignment[i]].push_back(i);
    for (auto& b : buckets) {
        std::stable_sort(b.begin(), b.end(), [&h](std::size_t a, std::size_t bidx) {
            return magnitude_then_lex(h.terms[a], h.terms[bidx]);
        });
    }

    // Fixed cycle order: descending magnitude of each class's largest member,
    // then ascending color id.
    std::vector<std::size_t> cycle;
    for (std::size_t k = 0; k < buckets.size(); ++k) {
        if (!buckets[k].empty()) cycle.push_back(k);
    }
    std::stable_sort(cycle.begin(), cycle.end(), [&](std::size_t a, std::size_t b) {
        return magnitude(h.terms[buckets[a].front()]) > magnitude(h.terms[buckets[b].front()]);
    });

    std::vector<std::size_t> taken(buckets.size(), 0);
    std::vector<std::size_t> out;
    out.reserve(in.active.size());
    while (out.size() < in.active.size()) {
        for (std::size_t k : cycle) {
            if (taken[k] < buckets[k].size()) out.push_back(buckets[k][taken[k]++]);
        }
    }
    return assemble(h, in, std::move(out));
}

OrderingResult order_equalise_groups(const QubitHamiltonian& h, const Coloring& c) {
    if (c.assignment.size() != h.terms.size()) {
        throw std::invalid_argument("coloring does not match Hamiltonian");
    }
    StrategyInput in = split_strategy_input(h);

    std::vector<std::vector<std::size_t>> buckets(c.set_count);
    for (std::size_t i : in.active) buckets[c.assignment[i]].push_back(i);
    for (auto& b : buckets) {
        std::stable_sort(b.begin(), b.end(), [&h](std::size_t a, std::size_t bidx) {
            return magnitude_then_lex(h.terms[a], h.terms[bidx]);
        });
    }

    std::vector<std::size_t> taken(buckets.size(), 0);
    std::vector<std::size_t> out;
    out.reserve(in.active.size());
    while (out.size() < in.active.size()) {
        std::size_t largest = 0;
        for (std::size_t k = 0; k < buckets.size(); ++k) {
            largest = std::max(largest, buckets[k].size() - taken[k]);
        }
        std::size_t pick = h.terms.size();
        for (std::size_t k = 0; k < buckets.size(); ++k) {
            if (buckets[k].size() - taken[k] != largest) continue;
            const std::size_t head = buckets[k][taken[k]];
            if (pick == h.terms.size() || magnitude_then_lex(h.terms[head], h.terms[pick])) {
                pick = head;
            }
        }
        out.push_back(pick);
        ++taken[c.assignment[pick]];
    }
    return assemble(h, in, std::move(out));
}

OrderingResult order_commutator(const QubitHamiltonian& h) {
    StrategyInput in = split_strategy_input(h);
    std::vector<std::size_t> pool = in.active;
    std::vector<std::size_t> out;
    out.reserve(pool.size());
    // commute_count[i] = ordered terms that h.terms[i] commutes with.
    std::vector<std::size_t> commute_count(h.terms.size(), 0);
    while (!pool.empty()) {
        std::size_t best_pos = 0;
        for (std::size_t p = 1; p < pool.size(); ++p) {
            const std::size_t i = pool[p], j = pool[best_pos];
            if (commute_count[i] != commute_count[j]) {
                if (commute_count[i] < commute_count[j]) best_pos = p;
            } else if (magnitude_then_lex(h.terms[i], h.terms[j])) {
                best_pos = p;
            }
        }
        const std::size_t chosen = pool[best_pos];
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_pos));
        out.push_back(chosen);
        for (std::size_t i : pool) {
            if (commutes(h.terms[i].string, h.terms[chosen].string)) ++commute_count[i];
        }
    }
    return assemble(h, in, std::move(out));
}

OrderingResult order_reverse_commutator(const QubitHamiltonian& h) {
    StrategyInput in = split_strategy_input(h);
    std::vector<std::size_t> pool = in.active;
    std::vector<std::size_t> out;
    out.reserve(pool.size());
    while (!pool.empty()) {
        // Count, per candidate, the other unordered terms it commutes with.
        std::vector<std::size_t> count(pool.size(), 0);
        for (std::size_t a = 0; a < pool.size(); ++a) {
            for (std::size_t b = a + 1; b < pool.size(); ++b) {
                if (commutes(h.terms[pool[a]].string, h.terms[pool[b]].string)) {
                    ++count[a];
                    ++count[b];
                }
            }
        }
        std::size_t best_pos = 0;
        for (std::size_t p = 1; p < pool.size(); ++p) {
            if (count[p] != count[best_pos]) {
                if (count[p] > count[best_pos]) best_pos = p;
            } else if (magnitude_then_lex(h.terms[pool[p]], h.terms[pool[best_pos]])) {
                best_pos = p;
            }
        }
        out.push_back(pool[best_pos]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best_pos));
    }
    return assemble(h, in, std::move(out));
}

std::uint64_t factorial(std::size_t n) {
    if (n > 20) {
        throw std::overflow_error("factorial(" + std::to_string(n) + ") exceeds 64 bits");
    }
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return f;
}

std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t index) {
    if (index >= factorial(n)) {
        throw std::out_of_range("permutation index out of range");
    }
    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::size_t> perm;
    perm.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t f = factorial(n - 1 - i);
        const std::size_t k = static_cast<std::size_t>(index / f);
        index %= f;
        perm.push_back(remaining[k]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(k));
    }
    return perm;
}

void for_each_permutation(
    std::size_t n, std::uint64_t first, std::uint64_t last,
    const std::function<bool(std::uint64_t, std::span<const std::size_t>)>& visit) {
    const std::uint64_t total = factorial(n);
    last = std::min(last, total);
    if (first >= last) return;
    std::vector<std::size_t> perm = permutation_at(n, first);
    for (std::uint64_t idx = first; idx < last; ++idx) {
        if (!visit(idx, perm)) return;
        std::next_permutation(perm.begin(), perm.end());
    }
}

void enumerate_orderings(
    const QubitHamiltonian& h,
    const std::function<bool(std::uint64_t, const OrderingResult&)>& visit,
    std::uint64_t first, std::uint64_t last, std::size_t cap) {
    const std::size_t n = h.terms.size();
    if (n > cap) {
        throw CapExceeded("enumeration refused: " + std::to_string(n) + " terms exceed cap " +
                          std::to_string(cap) + " (" + std::to_string(n) + "! orderings)");
    }
    OrderingResult scratch;
    for_each_permutation(n, first, last, [&](std::uint64_t idx, std::span<const std::size_t> perm) {
        scratch = ordering_from_permutation(h, perm);
        return visit(idx, scratch);
    });
}

RandomPermutations::RandomPermutations(std::size_t n, std::uint64_t seed)
    : perm_(n), engine_(seed) {}

std::uint64_t RandomPermutations::draw_below(std::uint64_t bound) {
    // Rejection sampling keeps the stream uniform and portable.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    std::uint64_t v = engine_();
    while (v > limit) v = engine_();
    return v % bound;
}

const std::vector<std::size_t>& RandomPermutations::next() {
    std::iota(perm_.begin(), perm_.end(), 0);
    for (std::size_t i = perm_.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(draw_below(i));
        std::swap(perm_[i - 1], perm_[j]);
    }
    return perm_;
}

}  // namespace trotter
