// Dense-matrix reference implementations used as independent oracles.
// Everything here is built from explicit 2x2 constants and Kronecker
// products, never from the symplectic code paths under test.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <span>
#include <string>

#include "trotter/hamiltonian.hpp"
#include "trotter/pauli.hpp"

namespace oracle {

using Matrix = Eigen::MatrixXcd;
using trotter::PauliAxis;
using trotter::PauliString;
using trotter::PauliTerm;
using trotter::QubitHamiltonian;

inline Matrix axis_matrix(PauliAxis a) {
    Matrix m(2, 2);
    const std::complex<double> i{0.0, 1.0};
    switch (a) {
        case PauliAxis::I: m << 1, 0, 0, 1; break;
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, -i, i, 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

// Qubit 0 is the least significant factor: M = A_{n-1} (x) ... (x) A_0.
inline Matrix string_matrix(const PauliString& s) {
    Matrix m = Matrix::Identity(1, 1);
    for (std::size_t q = s.width(); q-- > 0;) {
        m = kron(m, axis_matrix(s.axis(q)));
    }
    return m;
}

inline Matrix term_matrix(const PauliTerm& t) { return t.coefficient * string_matrix(t.string); }

inline Matrix sum_matrix(std::span<const PauliTerm> terms, std::size_t qubit_count) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubit_count);
    Matrix m = Matrix::Zero(dim, dim);
    for (const PauliTerm& t : terms) m += term_matrix(t);
    return m;
}

inline Matrix ham_matrix(const QubitHamiltonian& h) {
    return sum_matrix(std::span<const PauliTerm>(h.terms), h.qubit_count);
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

// exp(-i theta M) for Hermitian M via eigendecomposition (independent of the
// cos/sin closed form used by the implementation).
inline Matrix expm_hermitian(const Matrix& m, double theta) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const auto& vals = solver.eigenvalues();
    const Matrix& vecs = solver.eigenvectors();
    Eigen::VectorXcd phases(vals.size());
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
        phases(k) = std::exp(std::complex<double>(0.0, -theta * vals(k)));
    }
    return vecs * phases.asDiagonal() * vecs.adjoint();
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Convenience builder: "Y3 Y2 X1 X0"-style constructions from (qubit, axis)
// pairs on a given width.
inline PauliString make_string(std::size_t width,
                               std::initializer_list<std::pair<std::size_t, PauliAxis>> ops) {
    PauliString s(width);
    for (const auto& [q, a] : ops) s.set_axis(q, a);
    return s;
}

inline PauliTerm make_term(std::complex<double> c, std::size_t width,
                           std::initializer_list<std::pair<std::size_t, PauliAxis>> ops) {
    return {c, make_string(width, ops)};
}

}  // namespace oracle
