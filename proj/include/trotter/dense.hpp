#pragma once

#include <Eigen/Dense>
#include <span>

#include "trotter/hamiltonian.hpp"

namespace trotter {

/// Dense 2^n x 2^n matrix of a Pauli string (qubit 0 least significant).
Eigen::MatrixXcd dense_matrix(const PauliString& s);

/// Dense matrix of a weighted sum of Pauli terms on `qubit_count` qubits.
Eigen::MatrixXcd dense_matrix(std::span<const PauliTerm> terms, std::size_t qubit_count);

Eigen::MatrixXcd dense_matrix(const QubitHamiltonian& h);

}  // namespace trotter
