#include "trotter/dense.hpp"

#include <bit>
#include <stdexcept>

namespace trotter {

namespace {

constexpr std::size_t kMaxDenseQubits = 13;

void add_term(Eigen::MatrixXcd& m, const PauliTerm& t) {
    const PauliString& s = t.string;
    const std::uint64_t x = s.x_words().empty() ? 0 : s.x_words()[0];
    const std::uint64_t z = s.z_words().empty() ? 0 : s.z_words()[0];
    static constexpr std::complex<double> kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const std::complex<double> y_phase = kI[s.y_count() % 4];
    const std::uint64_t dim = std::uint64_t{1} << s.width();
    for (std::uint64_t k = 0; k < dim; ++k) {
        const double sign = (std::popcount(k & z) % 2) ? -1.0 : 1.0;
        m(static_cast<Eigen::Index>(k ^ x), static_cast<Eigen::Index>(k)) +=
            t.coefficient * y_phase * sign;
    }
}

void check_width(std::size_t width) {
    if (width == 0 || width > kMaxDenseQubits) {
        throw std::invalid_argument("dense matrix limited to 1.." +
                                    std::to_string(kMaxDenseQubits) + " qubits, got " +
                                    std::to_string(width));
    }
}

}  // namespace

Eigen::MatrixXcd dense_matrix(const PauliString& s) {
    check_width(s.width());
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << s.width());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    add_term(m, PauliTerm{1.0, s});
    return m;
}

Eigen::MatrixXcd dense_matrix(std::span<const PauliTerm> terms, std::size_t qubit_count) {
    check_width(qubit_count);
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << qubit_count);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const PauliTerm& t : terms) {
        if (t.string.width() != qubit_count) {
            throw std::invalid_argument("term width does not match qubit count");
        }
        add_term(m, t);
    }
    return m;
}

Eigen::MatrixXcd dense_matrix(const QubitHamiltonian& h) {
    return dense_matrix(std::span<const PauliTerm>(h.terms), h.qubit_count);
}

}  // namespace trotter
