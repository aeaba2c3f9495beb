#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "trotter/graph.hpp"
#include "trotter/hamiltonian.hpp"

namespace trotter {

enum class OrderingStrategy {
    magnitude,
    lexicographic,
    deplete_groups,
    equalise_groups,
    commutator,
    reverse_commutator,
    error_operator_greedy,
    as_given,
};

std::string_view strategy_name(OrderingStrategy s);
OrderingStrategy strategy_from_name(std::string_view name);
std::span<const OrderingStrategy> all_strategies();

/// A reordering of a Hamiltonian: ordered.terms[k] == input.terms[permutation[k]].
struct OrderingResult {
    std::vector<std::size_t> permutation;
    QubitHamiltonian ordered;
};

OrderingResult ordering_from_permutation(const QubitHamiltonian& h,
                                         std::span<const std::size_t> permutation);

/// Coefficient magnitude descending; equal magnitudes break by the
/// lexicographic string key. Identity and zero-coefficient terms are kept
/// at the front in original order (they add no Trotter error); the same
/// convention applies to every strategy below.
OrderingResult order_magnitude(const QubitHamiltonian& h);

/// Sorted by the canonical string key (see lexicographic_less).
OrderingResult order_lexicographic(const QubitHamiltonian& h);

/// Cycle through color classes in a fixed order (descending magnitude of
/// each class's largest member, then ascending color id), taking the
/// highest-magnitude remaining term from each; depleted classes are skipped.
OrderingResult order_deplete_groups(const QubitHamiltonian& h, const Coloring& c);

/// At each step pick the highest-magnitude term in the union of all classes
/// of maximal remaining size.
OrderingResult order_equalise_groups(const QubitHamiltonian& h, const Coloring& c);

/// Greedy: seed with the global highest-magnitude term, then repeatedly
/// append the highest-magnitude term among those commuting with the fewest
/// already-ordered terms.
OrderingResult order_commutator(const QubitHamiltonian& h);

/// Greedy: at each step count, for every remaining term, how many other
/// remaining terms it commutes with; append the highest-magnitude term among
/// those maximizing the count.
OrderingResult order_reverse_commutator(const QubitHamiltonian& h);

inline constexpr std::size_t kDefaultEnumerationCap = 10;

/// Thrown when an enumeration request exceeds the configured term cap.
class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// n! for n <= 20; throws std::overflow_error beyond.
std::uint64_t factorial(std::size_t n);

/// The index-th permutation of 0..n-1 in lexicographic order.
std::vector<std::size_t> permutation_at(std::size_t n, std::uint64_t index);

/// Visit permutations [first, last) of 0..n-1 in lexicographic order.
/// The visitor gets (permutation index, permutation) and may return false
/// to stop early.
void for_each_permutation(
    std::size_t n, std::uint64_t first, std::uint64_t last,
    const std::function<bool(std::uint64_t, std::span<const std::size_t>)>& visit);

/// Enumerate all orderings of h (index range [first, last), lexicographic).
/// Throws CapExceeded when h has more than `cap` terms.
void enumerate_orderings(
    const QubitHamiltonian& h,
    const std::function<bool(std::uint64_t, const OrderingResult&)>& visit,
    std::uint64_t first = 0,
    std::uint64_t last = std::numeric_limits<std::uint64_t>::max(),
    std::size_t cap = kDefaultEnumerationCap);

/// Deterministic stream of uniform random permutations (Fisher-Yates over a
/// seeded 64-bit Mersenne twister). Streams with equal (n, seed) agree.
class RandomPermutations {
public:
    RandomPermutations(std::size_t n, std::uint64_t seed);

    const std::vector<std::size_t>& next();

private:
    std::uint64_t draw_below(std::uint64_t bound);

    std::vector<std::size_t> perm_;
    std::mt19937_64 engine_;
};

}  // namespace trotter
