#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "oracle.hpp"
#include "trotter/ordering.hpp"

using namespace trotter;

namespace {

constexpr auto X = PauliAxis::X;
constexpr auto Y = PauliAxis::Y;
constexpr auto Z = PauliAxis::Z;

QubitHamiltonian active_h2() {
    QubitHamiltonian h = builtin_fixture("h2_active_0.7414");
    h.label = "h2_active";
    return h;
}

bool is_z_only(const PauliString& s) {
    for (std::size_t q = 0; q < s.width(); ++q) {
        if (s.axis(q) == X || s.axis(q) == Y) return false;
    }
    return true;
}

bool is_permutation_of(const OrderingResult& r, const QubitHamiltonian& h) {
    if (r.permutation.size() != h.terms.size()) return false;
    std::set<std::size_t> seen(r.permutation.begin(), r.permutation.end());
    if (seen.size() != h.terms.size()) return false;
    for (std::size_t k = 0; k < r.permutation.size(); ++k) {
        if (!(r.ordered.terms[k].string == h.terms[r.permutation[k]].string)) return false;
    }
    return true;
}

QubitHamiltonian ham_of(std::vector<PauliTerm> terms, std::size_t width) {
    QubitHamiltonian h;
    h.qubit_count = width;
    h.terms = std::move(terms);
    return h;
}

}  // namespace

TEST_CASE("magnitude ordering on the hydrogen active part") {
    const QubitHamiltonian h = active_h2();
    const OrderingResult r = order_magnitude(h);
    CHECK(is_permutation_of(r, h));
    CHECK(r.ordered.terms[0].string == oracle::make_string(4, {{2, Z}}));
    CHECK(r.ordered.terms[1].string == oracle::make_string(4, {{3, Z}}));
    for (std::size_t k = 4; k < 8; ++k) {
        CHECK(std::abs(r.ordered.terms[k].coefficient) ==
              doctest::Approx(0.04532).epsilon(1e-12));
    }
}

TEST_CASE("magnitude ordering basics") {
    const QubitHamiltonian single = ham_of({oracle::make_term(0.3, 2, {{0, X}})}, 2);
    CHECK(order_magnitude(single).permutation == std::vector<std::size_t>{0});

    const QubitHamiltonian three = ham_of({oracle::make_term(0.1, 2, {{0, X}}),
                                           oracle::make_term(-0.5, 2, {{0, Y}}),
                                           oracle::make_term(0.3, 2, {{1, Z}})},
                                          2);
    CHECK(order_magnitude(three).permutation == std::vector<std::size_t>{1, 2, 0});
}

TEST_CASE("lexicographic comparator fixes the documented order") {
    const QubitHamiltonian zx =
        ham_of({oracle::make_term(1.0, 1, {{0, Z}}), oracle::make_term(1.0, 1, {{0, X}})}, 1);
    CHECK(order_lexicographic(zx).permutation == std::vector<std::size_t>{1, 0});

    const QubitHamiltonian x01 =
        ham_of({oracle::make_term(1.0, 2, {{0, X}}), oracle::make_term(1.0, 2, {{1, X}})}, 2);
    CHECK(order_lexicographic(x01).permutation == std::vector<std::size_t>{0, 1});

    // On the hydrogen active part both families come out contiguous.
    const OrderingResult r = order_lexicographic(active_h2());
    std::vector<int> z_flags;
    for (const PauliTerm& t : r.ordered.terms) z_flags.push_back(is_z_only(t.string) ? 1 : 0);
    CHECK(std::is_sorted(z_flags.begin(), z_flags.end()));  // all XY first, then all Z
}

TEST_CASE("deplete_groups alternates between the hydrogen sets") {
    const QubitHamiltonian h = active_h2();
    const Coloring c = greedy_color(build_graph(h), ColoringStrategy::independent_set);
    const OrderingResult r = order_deplete_groups(h, c);
    CHECK(is_permutation_of(r, h));
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(is_z_only(r.ordered.terms[k].string) == (k % 2 == 0));  // Z class leads
    }
}

TEST_CASE("deplete_groups visit pattern with uneven classes") {
    // Class A = {X0, X1, X0X1} mutually commuting, class B = {Z0}.
    const QubitHamiltonian h = ham_of({oracle::make_term(0.9, 2, {{0, X}}),
                                       oracle::make_term(0.8, 2, {{1, X}}),
                                       oracle::make_term(0.7, 2, {{0, X}, {1, X}}),
                                       oracle::make_term(0.6, 2, {{0, Z}})},
                                      2);
    const Coloring c = greedy_color(build_graph(h), ColoringStrategy::independent_set);
    REQUIRE(c.set_count == 2);
    const OrderingResult r = order_deplete_groups(h, c);
    // Cycle A,B then A alone twice: 0.9, 0.6, 0.8, 0.7.
    std::vector<double> coeffs;
    for (const PauliTerm& t : r.ordered.terms) coeffs.push_back(t.coefficient.real());
    CHECK(coeffs == std::vector<double>{0.9, 0.6, 0.8, 0.7});

    // One color class reduces to the magnitude ordering.
    const QubitHamiltonian commuting = ham_of({oracle::make_term(0.2, 2, {{0, Z}}),
                                               oracle::make_term(0.9, 2, {{1, Z}}),
                                               oracle::make_term(0.5, 2, {{0, Z}, {1, Z}})},
                                              2);
    const Coloring one = greedy_color(build_graph(commuting), ColoringStrategy::independent_set);
    REQUIRE(one.set_count == 1);
    CHECK(order_deplete_groups(commuting, one).permutation ==
          order_magnitude(commuting).permutation);
}

TEST_CASE("equalise_groups walk-through") {
    // Sizes {2, 1}: A = {0.9, 0.1}, B = {0.5}.
    const QubitHamiltonian h = ham_of({oracle::make_term(0.9, 1, {{0, X}}),
                                       oracle::make_term(0.1, 1, {}),
                                       oracle::make_term(0.5, 1, {{0, Z}})},
                                      1);
    // Identity is excluded from strategies, so build the classes by hand.
    const QubitHamiltonian h2 = ham_of({oracle::make_term(0.9, 2, {{0, X}}),
                                        oracle::make_term(0.1, 2, {{1, X}}),
                                        oracle::make_term(0.5, 2, {{0, Z}})},
                                       2);
    const Coloring c = greedy_color(build_graph(h2), ColoringStrategy::independent_set);
    REQUIRE(c.set_count == 2);
    const OrderingResult r = order_equalise_groups(h2, c);
    std::vector<double> coeffs;
    for (const PauliTerm& t : r.ordered.terms) coeffs.push_back(t.coefficient.real());
    CHECK(coeffs == std::vector<double>{0.9, 0.5, 0.1});

    // Equal class sizes on hydrogen reproduce deplete_groups.
    const QubitHamiltonian hy = active_h2();
    const Coloring cy = greedy_color(build_graph(hy), ColoringStrategy::independent_set);
    CHECK(order_equalise_groups(hy, cy).permutation == order_deplete_groups(hy, cy).permutation);
}

TEST_CASE("commutator ordering starts at the global maximum then alternates") {
    const QubitHamiltonian h = active_h2();
    const OrderingResult r = order_commutator(h);
    CHECK(is_permutation_of(r, h));
    CHECK(r.ordered.terms[0].string == oracle::make_string(4, {{2, Z}}));  // global max
    CHECK_FALSE(is_z_only(r.ordered.terms[1].string));                     // then the XY set
    for (std::size_t k = 0; k < 8; ++k) {
        CHECK(is_z_only(r.ordered.terms[k].string) == (k % 2 == 0));
    }
}

TEST_CASE("commutator ordering on mutually commuting terms is magnitude order") {
    const QubitHamiltonian h = ham_of({oracle::make_term(0.2, 2, {{0, Z}}),
                                       oracle::make_term(0.9, 2, {{1, Z}}),
                                       oracle::make_term(0.5, 2, {{0, Z}, {1, Z}})},
                                      2);
    CHECK(order_commutator(h).permutation == order_magnitude(h).permutation);

    const QubitHamiltonian pair =
        ham_of({oracle::make_term(0.2, 1, {{0, Z}}), oracle::make_term(0.9, 1, {{0, X}})}, 1);
    CHECK(order_commutator(pair).permutation == order_magnitude(pair).permutation);
}

TEST_CASE("reverse_commutator picks the most-commuting candidates") {
    // t0 commutes with nothing, t1 and t2 commute with each other.
    const QubitHamiltonian h = ham_of({oracle::make_term(0.9, 2, {{0, X}, {1, X}}),
                                       oracle::make_term(0.5, 2, {{0, Z}}),
                                       oracle::make_term(0.4, 2, {{1, Z}})},
                                      2);
    REQUIRE_FALSE(commutes(h.terms[0].string, h.terms[1].string));
    REQUIRE_FALSE(commutes(h.terms[0].string, h.terms[2].string));
    REQUIRE(commutes(h.terms[1].string, h.terms[2].string));
    const OrderingResult r = order_reverse_commutator(h);
    CHECK(r.permutation[0] == 1);  // max count, magnitude breaks the tie

    const QubitHamiltonian commuting = ham_of({oracle::make_term(0.2, 2, {{0, Z}}),
                                               oracle::make_term(0.9, 2, {{1, Z}}),
                                               oracle::make_term(0.5, 2, {{0, Z}, {1, Z}})},
                                              2);
    CHECK(order_reverse_commutator(commuting).permutation ==
          order_magnitude(commuting).permutation);
}

TEST_CASE("reverse_commutator matches an independent rule oracle on hydrogen") {
    const QubitHamiltonian h = active_h2();
    const OrderingResult r = order_reverse_commutator(h);
    CHECK(is_permutation_of(r, h));

    // Direct reimplementation of the flowchart over the shrinking pool.
    std::vector<std::size_t> pool(h.terms.size());
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    std::vector<std::size_t> expected;
    while (!pool.empty()) {
        std::size_t best = pool.size();
        std::size_t best_count = 0;
        for (std::size_t p = 0; p < pool.size(); ++p) {
            std::size_t count = 0;
            for (std::size_t q = 0; q < pool.size(); ++q) {
                if (p != q && commutes(h.terms[pool[p]].string, h.terms[pool[q]].string)) {
                    ++count;
                }
            }
            auto better = [&]() {
                if (best == pool.size()) return true;
                if (count != best_count) return count > best_count;
                const double mp = std::abs(h.terms[pool[p]].coefficient);
                const double mb = std::abs(h.terms[pool[best]].coefficient);
                if (mp != mb) return mp > mb;
                return lexicographic_less(h.terms[pool[p]].string, h.terms[pool[best]].string);
            };
            if (better()) {
                best = p;
                best_count = count;
            }
        }
        expected.push_back(pool[best]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));
    }
    CHECK(r.permutation == expected);
}

TEST_CASE("identity terms are excluded from strategies and prepended") {
    QubitHamiltonian h = builtin_fixture("h2_sto3g_0.7414");
    const OrderingResult r = order_magnitude(h);
    CHECK(is_permutation_of(r, h));
    CHECK(r.ordered.terms[0].string.is_identity());
    // The identity has the largest coefficient magnitude but is pinned first
    // by exclusion, and the rest is magnitude-sorted.
    for (std::size_t k = 2; k < r.ordered.terms.size(); ++k) {
        CHECK(std::abs(r.ordered.terms[k - 1].coefficient) >=
              std::abs(r.ordered.terms[k].coefficient));
    }
}

TEST_CASE("every strategy emits a permutation") {
    const QubitHamiltonian h = active_h2();
    const Coloring c = greedy_color(build_graph(h), ColoringStrategy::independent_set);
    CHECK(is_permutation_of(order_magnitude(h), h));
    CHECK(is_permutation_of(order_lexicographic(h), h));
    CHECK(is_permutation_of(order_deplete_groups(h, c), h));
    CHECK(is_permutation_of(order_equalise_groups(h, c), h));
    CHECK(is_permutation_of(order_commutator(h), h));
    CHECK(is_permutation_of(order_reverse_commutator(h), h));
}

TEST_CASE("strategies are deterministic") {
    const QubitHamiltonian h = active_h2();
    CHECK(order_magnitude(h).permutation == order_magnitude(h).permutation);
    CHECK(order_commutator(h).permutation == order_commutator(h).permutation);
    CHECK(order_reverse_commutator(h).permutation == order_reverse_commutator(h).permutation);
}

TEST_CASE("factorial and unranking") {
    CHECK(factorial(0) == 1);
    CHECK(factorial(3) == 6);
    CHECK(factorial(8) == 40320);
    CHECK(factorial(20) == 2432902008176640000ULL);
    CHECK_THROWS_AS(factorial(21), std::overflow_error);

    CHECK(permutation_at(3, 0) == std::vector<std::size_t>{0, 1, 2});
    CHECK(permutation_at(3, 5) == std::vector<std::size_t>{2, 1, 0});
    CHECK_THROWS_AS(permutation_at(3, 6), std::out_of_range);

    // Unranking agrees with sequential enumeration.
    std::vector<std::vector<std::size_t>> all;
    for_each_permutation(4, 0, 24, [&](std::uint64_t, std::span<const std::size_t> p) {
        all.emplace_back(p.begin(), p.end());
        return true;
    });
    REQUIRE(all.size() == 24);
    for (std::uint64_t i = 0; i < 24; ++i) {
        CHECK(permutation_at(4, i) == all[i]);
    }
    CHECK(std::is_sorted(all.begin(), all.end()));
}

TEST_CASE("enumeration yields n! orderings and partitions cleanly") {
    const QubitHamiltonian h = ham_of({oracle::make_term(0.9, 2, {{0, X}}),
                                       oracle::make_term(0.5, 2, {{0, Z}}),
                                       oracle::make_term(0.1, 2, {{1, Z}})},
                                      2);
    std::size_t count = 0;
    enumerate_orderings(h, [&](std::uint64_t, const OrderingResult& r) {
        CHECK(is_permutation_of(r, h));
        ++count;
        return true;
    });
    CHECK(count == 6);

    // Disjoint ranges cover the whole space exactly once.
    std::set<std::vector<std::size_t>> seen;
    for (std::uint64_t lo = 0; lo < 6; lo += 2) {
        enumerate_orderings(h,
                            [&](std::uint64_t, const OrderingResult& r) {
                                CHECK(seen.insert(r.permutation).second);
                                return true;
                            },
                            lo, lo + 2);
    }
    CHECK(seen.size() == 6);
}

TEST_CASE("enumeration refuses beyond the cap") {
    QubitHamiltonian h;
    h.qubit_count = 2;
    for (int k = 0; k < 11; ++k) {
        h.terms.push_back(oracle::make_term(0.1 + k, 2, {{0, X}}));
    }
    CHECK_THROWS_AS(enumerate_orderings(h, [](std::uint64_t, const OrderingResult&) {
        return true;
    }),
                    CapExceeded);
}

TEST_CASE("hydrogen active part enumerates to 40320 orderings") {
    const QubitHamiltonian h = active_h2();
    std::size_t count = 0;
    for_each_permutation(h.terms.size(), 0, factorial(h.terms.size()),
                         [&](std::uint64_t, std::span<const std::size_t>) {
                             ++count;
                             return true;
                         });
    CHECK(count == 40320);
}

TEST_CASE("random permutation streams are reproducible and uniform") {
    RandomPermutations a(4, 99), b(4, 99);
    for (int k = 0; k < 50; ++k) {
        CHECK(a.next() == b.next());
    }

    RandomPermutations single(1, 7);
    for (int k = 0; k < 5; ++k) {
        CHECK(single.next() == std::vector<std::size_t>{0});
    }

    // Frequency test: 10k draws over 4! cells, 5-sigma binomial bound.
    RandomPermutations stream(4, 12345);
    std::map<std::vector<std::size_t>, int> counts;
    const int n = 10000;
    for (int k = 0; k < n; ++k) counts[stream.next()]++;
    CHECK(counts.size() == 24);
    const double p = 1.0 / 24.0;
    const double sigma = std::sqrt(n * p * (1 - p));
    for (const auto& [perm, c] : counts) {
        CHECK(std::abs(c - n * p) < 5.0 * sigma);
    }
}
