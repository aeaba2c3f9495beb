#pragma once

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <vector>

#include "trotter/hamiltonian.hpp"

namespace trotter {

/// Dense complex amplitude vector of length 2^qubit_count; qubit 0 indexes
/// the least significant bit.
using Statevector = Eigen::VectorXcd;

/// Computational basis state |index> on qubit_count qubits.
Statevector basis_state(std::size_t qubit_count, std::uint64_t index = 0);

/// In-place |psi> -> P|psi| via bit-mask index transforms.
void apply_pauli(Statevector& psi, const PauliString& p);

/// In-place |psi> -> exp(-i theta P)|psi> using the closed form
/// cos(theta) - i sin(theta) P. The caller folds any coefficient into theta.
void apply_term_exponential(Statevector& psi, const PauliString& p, double theta);

/// |psi> -> H|psi> for a term sum (matrix-free).
Statevector apply_hamiltonian(const QubitHamiltonian& h, const Statevector& psi);

/// <psi| sum_k c_k P_k |psi>.
std::complex<double> expectation_value(const Statevector& psi, std::span<const PauliTerm> terms);

/// Trotterized evolution in the Hamiltonian's stored term order; the first
/// term acts on the state first. Order 1 applies each term once per step
/// with angle c*t/N; order 2 applies the forward-then-reverse palindrome at
/// half angles.
Statevector trotter_apply(Statevector psi, const QubitHamiltonian& ordered,
                          const TrotterConfig& config);

struct EigenPair {
    double energy = 0.0;
    Statevector state;
    bool degenerate = false;  // spectral gap below 1e-8
};

/// Thrown when the iterative eigensolver exhausts its matrix-apply budget.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const { return residual_; }

private:
    double residual_;
};

struct GroundStateOptions {
    std::size_t dense_qubit_threshold = 12;
    double residual_tolerance = 1e-9;
    std::size_t max_matrix_applies = 10000;
    std::uint64_t seed = 0x72616e646f6d5f76ULL;  // iterative start vector
};

/// Lowest eigenpair: dense solve up to the threshold, restarted Lanczos with
/// matrix-free application above it.
EigenPair ground_state(const QubitHamiltonian& h, const GroundStateOptions& opts = {});

struct TrotterErrorReport {
    double measured_error = 0.0;   // |estimated - exact|, a.u.
    double exact_energy = 0.0;
    double estimated_energy = 0.0;
    double overlap_magnitude = 0.0;  // |<psi0|U|psi0>|; phase estimate is noisy below 0.999
    TrotterConfig config;
    std::vector<std::size_t> permutation;
};

/// Trotter error as the phase deviation of <psi0|U|psi0> from exp(-i E0 t):
/// measured = |principal_arg(z * exp(+i E0 t))| / t. Pass a precomputed
/// ground state to amortize it across many orderings of the same Hamiltonian.
TrotterErrorReport measure_trotter_error(const QubitHamiltonian& ordered,
                                         const TrotterConfig& config,
                                         const EigenPair* ground = nullptr);

/// Measured error per Trotter number at fixed total time and order.
std::vector<std::pair<int, double>> error_vs_steps(const QubitHamiltonian& ordered, double t,
                                                   int order, std::span<const int> steps);

}  // namespace trotter
