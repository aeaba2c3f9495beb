#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "trotter/pauli.hpp"

namespace trotter {

/// Qubit Hamiltonian as an ordered list of real-weighted Pauli strings.
/// The term order is the Trotter simulation order.
struct QubitHamiltonian {
    std::size_t qubit_count = 0;
    std::vector<PauliTerm> terms;
    std::string label;
};

/// Split of a Hamiltonian into the part commuting with every term and the
/// remainder that actually needs Trotterization.
struct FactoredHamiltonian {
    QubitHamiltonian commuting_part;
    QubitHamiltonian active_part;
};

/// Trotterization parameters. step_size() * trotter_number == total_time.
struct TrotterConfig {
    double total_time = 1.0;
    int trotter_number = 1;
    int approximant_order = 2;

    double step_size() const { return total_time / trotter_number; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Parse the Hamiltonian file format:
///   - optional header "qubits: <N>"
///   - comment lines starting with '#'
///   - term lines "<coefficient> [<axis><index> ...]"; a bare coefficient is
///     the identity term.
/// Duplicate strings are combined; qubit count defaults to 1 + max index.
/// Throws ParseError with a line number on malformed input.
QubitHamiltonian parse_hamiltonian(std::string_view text, std::string label = "");

QubitHamiltonian load_hamiltonian(const std::filesystem::path& path);

/// Header plus one line per term in current order; coefficients are written
/// with 17 significant digits so parse(serialize(h)) round-trips exactly.
std::string serialize(const QubitHamiltonian& h);

/// Partition into the totally commuting set and the active remainder,
/// preserving relative order within each part.
FactoredHamiltonian factor_totally_commuting(const QubitHamiltonian& h);

/// Trotter evolution time rule: 1 when |E| < 2*pi, else 1/(2*pi*floor(|E|/2*pi)).
double trotter_time(double reference_energy);

/// Names accepted by builtin_fixture().
const std::vector<std::string>& builtin_fixture_names();

/// Built-in hydrogen-molecule Hamiltonians: the full 15-term STO-3G
/// Hamiltonian at 0.7414 A, and the 8-term active parts at five bond
/// lengths. Terms are stored in magnitude-descending canonical order.
QubitHamiltonian builtin_fixture(std::string_view name);

/// Reference optimal second-order Trotter sequence for the five active-part
/// fixtures (simulation order). Throws for other names.
std::vector<PauliTerm> reference_optimal_ordering(std::string_view name);

}  // namespace trotter
