#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.hpp"
#include "trotter/hamiltonian.hpp"

using namespace trotter;

namespace {

constexpr auto X = PauliAxis::X;
constexpr auto Y = PauliAxis::Y;
constexpr auto Z = PauliAxis::Z;

const char* kH2File = R"(# hydrogen molecule, STO-3G, 0.7414 A
qubits: 4
-0.81262
0.17120 Z0
0.17120 Z1
-0.22279 Z2
-0.22279 Z3
0.16862 Z1 Z0
0.12054 Z2 Z0
0.16587 Z3 Z0
0.16587 Z2 Z1
0.12054 Z3 Z1
0.17435 Z3 Z2
-0.04532 Y3 Y2 X1 X0
0.04532 X3 Y2 Y1 X0
0.04532 Y3 X2 X1 Y0
-0.04532 X3 X2 Y1 Y0
)";

double coefficient_of(const QubitHamiltonian& h, const PauliString& s) {
    for (const PauliTerm& t : h.terms) {
        if (t.string == s) return t.coefficient.real();
    }
    FAIL("string not found: ", s.str());
    return 0.0;
}

}  // namespace

TEST_CASE("parse reads the full hydrogen Hamiltonian") {
    const QubitHamiltonian h = parse_hamiltonian(kH2File, "h2");
    CHECK(h.qubit_count == 4);
    CHECK(h.terms.size() == 15);
    CHECK(coefficient_of(h, PauliString(4)) == -0.81262);
    CHECK(coefficient_of(h, oracle::make_string(4, {{0, Z}})) == 0.17120);
    CHECK(coefficient_of(h, oracle::make_string(4, {{0, X}, {1, X}, {2, Y}, {3, Y}})) ==
          -0.04532);
}

TEST_CASE("a bare coefficient line is the identity term") {
    const QubitHamiltonian h = parse_hamiltonian("qubits: 1\n1.0\n");
    CHECK(h.qubit_count == 1);
    REQUIRE(h.terms.size() == 1);
    CHECK(h.terms[0].string.is_identity());
    CHECK(h.terms[0].coefficient == std::complex<double>{1, 0});

    // Without a header the width defaults to one qubit.
    const QubitHamiltonian bare = parse_hamiltonian("1.0\n");
    CHECK(bare.qubit_count == 1);
}

TEST_CASE("duplicate strings combine at ingestion") {
    const QubitHamiltonian h = parse_hamiltonian("0.5 X0\n0.25 X0\n");
    REQUIRE(h.terms.size() == 1);
    CHECK(h.terms[0].coefficient.real() == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("parse errors carry line numbers") {
    auto line_of = [](const char* text) {
        try {
            parse_hamiltonian(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return std::size_t{0};
    };
    CHECK(line_of("0.5 X0\nnot-a-number Z1\n") == 2);       // malformed coefficient
    CHECK(line_of("0.5 Q0\n") == 1);                         // unknown axis letter
    CHECK(line_of("0.5 X-1\n") == 1);                        // negative index
    CHECK(line_of("qubits: 2\n0.5 X2\n") == 2);              // index >= declared count
    CHECK(line_of("0.5 X0 Z0\n") == 1);                      // duplicate index in one line
    CHECK(line_of("0.5 X0\n0.1 Z\n") == 2);                  // missing index
}

TEST_CASE("parse round-trips serialize exactly") {
    std::mt19937_64 rng(3);
    QubitHamiltonian h;
    h.qubit_count = 5;
    for (int k = 0; k < 12; ++k) {
        PauliString s(5);
        for (std::size_t q = 0; q < 5; ++q) {
            static constexpr PauliAxis axes[4] = {PauliAxis::I, X, Y, Z};
            s.set_axis(q, axes[rng() % 4]);
        }
        const double c = std::ldexp(static_cast<double>(rng() % (1 << 20)) - (1 << 19), -25);
        h.terms.push_back({c, std::move(s)});
    }
    h.terms = combine(h.terms);
    const QubitHamiltonian back = parse_hamiltonian(serialize(h));
    REQUIRE(back.terms.size() == h.terms.size());
    CHECK(back.qubit_count == h.qubit_count);
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        CHECK(back.terms[i].string == h.terms[i].string);
        CHECK(back.terms[i].coefficient == h.terms[i].coefficient);
    }
}

TEST_CASE("factoring the hydrogen Hamiltonian matches the 7/8 split") {
    const QubitHamiltonian h = builtin_fixture("h2_sto3g_0.7414");
    const FactoredHamiltonian f = factor_totally_commuting(h);
    CHECK(f.commuting_part.terms.size() == 7);  // identity + six ZZ strings
    CHECK(f.active_part.terms.size() == 8);
    for (const PauliTerm& t : f.commuting_part.terms) {
        CHECK(t.string.weight() != 1);  // single-Z terms are all active
    }
}

TEST_CASE("factoring a pairwise commuting Hamiltonian leaves the active part empty") {
    const QubitHamiltonian h = parse_hamiltonian("1.0 Z0\n0.5 Z1\n0.25 Z0 Z1\n");
    const FactoredHamiltonian f = factor_totally_commuting(h);
    CHECK(f.active_part.terms.empty());
    CHECK(f.commuting_part.terms.size() == 3);
}

TEST_CASE("factoring matches an all-pairs oracle on random Hamiltonians") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 30; ++trial) {
        QubitHamiltonian h;
        h.qubit_count = 3;
        while (h.terms.size() < 10) {
            PauliString s(3);
            for (std::size_t q = 0; q < 3; ++q) {
                static constexpr PauliAxis axes[4] = {PauliAxis::I, X, Y, Z};
                s.set_axis(q, axes[rng() % 4]);
            }
            h.terms.push_back({1.0 + static_cast<double>(rng() % 8), std::move(s)});
        }
        h.terms = combine(h.terms);
        const FactoredHamiltonian f = factor_totally_commuting(h);

        // Independent membership check against every other term.
        for (const PauliTerm& t : h.terms) {
            bool central = true;
            for (const PauliTerm& u : h.terms) {
                if (!commutes(t.string, u.string)) central = false;
            }
            const auto& list = central ? f.commuting_part.terms : f.active_part.terms;
            const bool found =
                std::any_of(list.begin(), list.end(),
                            [&t](const PauliTerm& u) { return u.string == t.string; });
            CHECK(found);
        }
        CHECK(f.commuting_part.terms.size() + f.active_part.terms.size() == h.terms.size());
    }
}

TEST_CASE("trotter evolution time rule") {
    CHECK(trotter_time(1.0) == 1.0);
    CHECK(trotter_time(-10.0) == doctest::Approx(1.0 / (2.0 * std::numbers::pi)));
    CHECK(trotter_time(-40.0) == doctest::Approx(1.0 / (12.0 * std::numbers::pi)));

    std::mt19937_64 rng(23);
    for (int k = 0; k < 200; ++k) {
        const double e = (static_cast<double>(rng() % 20000) - 10000.0) / 13.0;
        const double t = trotter_time(e);
        CHECK(t > 0.0);
        CHECK(t <= 1.0);
    }
}

TEST_CASE("fixture coefficients match the published values") {
    const QubitHamiltonian full = builtin_fixture("h2_sto3g_0.7414");
    CHECK(coefficient_of(full, PauliString(4)) == -0.81262);
    CHECK(coefficient_of(full, oracle::make_string(4, {{0, Z}})) == 0.17120);

    const QubitHamiltonian far = builtin_fixture("h2_active_10.000");
    for (std::size_t q = 0; q < 4; ++q) {
        CHECK(coefficient_of(far, oracle::make_string(4, {{q, Z}})) == 0.03964);
    }
    for (const PauliTerm& t : far.terms) {
        if (t.string.weight() == 4) {
            CHECK(std::abs(t.coefficient) == doctest::Approx(0.09021).epsilon(1e-12));
        }
    }

    const QubitHamiltonian close = builtin_fixture("h2_active_0.3707");
    CHECK(coefficient_of(close, oracle::make_string(4, {{3, Z}})) == -0.48079);

    CHECK_THROWS_AS(builtin_fixture("h2_active_2.0"), std::invalid_argument);
}

TEST_CASE("fixtures store magnitude-descending canonical order") {
    for (const std::string& name : builtin_fixture_names()) {
        const QubitHamiltonian h = builtin_fixture(name);
        for (std::size_t i = 1; i < h.terms.size(); ++i) {
            CHECK(std::abs(h.terms[i - 1].coefficient) >= std::abs(h.terms[i].coefficient));
        }
    }
    // Tie-break puts Z2 ahead of Z3 at equilibrium geometry.
    const QubitHamiltonian h = builtin_fixture("h2_active_0.7414");
    CHECK(h.terms[0].string == oracle::make_string(4, {{2, Z}}));
    CHECK(h.terms[1].string == oracle::make_string(4, {{3, Z}}));
}

TEST_CASE("reference optimal orderings are permutations of the fixtures") {
    for (const std::string& name : builtin_fixture_names()) {
        if (name == "h2_sto3g_0.7414") continue;
        const QubitHamiltonian h = builtin_fixture(name);
        const std::vector<PauliTerm> order = reference_optimal_ordering(name);
        REQUIRE(order.size() == h.terms.size());
        for (const PauliTerm& t : order) {
            const bool found = std::any_of(h.terms.begin(), h.terms.end(), [&](const PauliTerm& u) {
                return u.string == t.string && u.coefficient == t.coefficient;
            });
            CHECK(found);
        }
    }
}
