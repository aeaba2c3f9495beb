#pragma once

#include <cstddef>
#include <vector>

#include "trotter/hamiltonian.hpp"
#include "trotter/ordering.hpp"

namespace trotter {

/// Pauli expansion of the second-order Trotter error operator V for an
/// ordered Hamiltonian at step size dt. Terms are kept combined; for a
/// mutually commuting Hamiltonian the expansion is empty.
struct ErrorOperator {
    double step_size = 0.0;
    std::vector<PauliTerm> terms;
    std::vector<std::size_t> source_order;
};

enum class NormKind { coeff_one_norm, spectral };

NormKind norm_from_name(std::string_view name);

/// Term operator C_{abg} = (-dt^2/12) [H_a (1 - delta_ab/2), [H_b, H_g]].
/// Result is empty when either commutator vanishes, otherwise one term.
std::vector<PauliTerm> term_operator(const PauliTerm& alpha, const PauliTerm& beta,
                                     const PauliTerm& gamma, bool alpha_eq_beta, double dt);

/// Assemble V over the ordered index ranges beta, gamma < beta, alpha <= beta,
/// skipping beta/gamma pairs whose inner commutator vanishes.
ErrorOperator build_error_operator(const QubitHamiltonian& ordered, double dt);

/// Pauli expansion of the terms added to V when `inserted` is placed at
/// `position` (0..n) of `ordered`:
///   build(after insertion) == combine(build(before) + delta).
std::vector<PauliTerm> term_insertion_delta(const QubitHamiltonian& ordered,
                                            const PauliTerm& inserted, std::size_t position,
                                            double dt);

/// coeff_one_norm: sum of |c| over the combined expansion (an upper bound on
/// the spectral norm). spectral: largest singular value of the dense matrix;
/// refused above `dense_qubit_threshold` qubits.
double operator_norm(const ErrorOperator& v, NormKind kind,
                     std::size_t dense_qubit_threshold = 12);

/// Greedy insertion ordering: terms visited in descending magnitude, each
/// placed at the position minimizing the norm of the updated error operator
/// (incrementally maintained via term_insertion_delta). Position ties keep
/// the latest (append-side) slot so fully commuting inputs reduce to the
/// magnitude ordering.
OrderingResult order_error_operator_greedy(const QubitHamiltonian& h, double dt, NormKind kind);

/// Dispatch any catalog strategy. Group strategies color the incompatibility
/// graph with the independent-set heuristic; the greedy error-operator
/// strategy uses (dt, kind).
OrderingResult apply_strategy(const QubitHamiltonian& h, OrderingStrategy strategy,
                              double dt = 1.0, NormKind kind = NormKind::coeff_one_norm);

}  // namespace trotter
