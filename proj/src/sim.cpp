#include "trotter/sim.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "trotter/dense.hpp"

namespace trotter {

namespace {

constexpr std::size_t kMaxSimQubits = 30;

std::uint64_t dimension(std::size_t qubit_count) {
    if (qubit_count == 0 || qubit_count > kMaxSimQubits) {
        throw std::invalid_argument("statevector limited to 1.." +
                                    std::to_string(kMaxSimQubits) + " qubits, got " +
                                    std::to_string(qubit_count));
    }
    return std::uint64_t{1} << qubit_count;
}

std::size_t qubit_count_of(const Statevector& psi) {
    const auto n = static_cast<std::uint64_t>(psi.size());
    if (n == 0 || (n & (n - 1)) != 0) {
        throw std::invalid_argument("statevector length is not a power of two");
    }
    return static_cast<std::size_t>(std::countr_zero(n));
}

struct Masks {
    std::uint64_t x = 0;
    std::uint64_t z = 0;
    std::complex<double> y_phase{1.0, 0.0};
};

Masks masks_of(const PauliString& p, const Statevector& psi) {
    if (qubit_count_of(psi) != p.width()) {
        throw std::invalid_argument("Pauli string width does not match statevector");
    }
    static constexpr std::complex<double> kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Masks m;
    m.x = p.x_words().empty() ? 0 : p.x_words()[0];
    m.z = p.z_words().empty() ? 0 : p.z_words()[0];
    m.y_phase = kI[p.y_count() % 4];
    return m;
}

}  // namespace

Statevector basis_state(std::size_t qubit_count, std::uint64_t index) {
    const std::uint64_t dim = dimension(qubit_count);
    if (index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    Statevector psi = Statevector::Zero(static_cast<Eigen::Index>(dim));
    psi(static_cast<Eigen::Index>(index)) = 1.0;
    return psi;
}

void apply_pauli(Statevector& psi, const PauliString& p) {
    const Masks m = masks_of(p, psi);
    const auto dim = static_cast<std::uint64_t>(psi.size());
    auto* a = psi.data();
    if (m.x == 0) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            if (std::popcount(k & m.z) % 2) a[k] = -a[k];
        }
        return;
    }
    const std::uint64_t low = m.x & (~m.x + 1);
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (k & low) continue;
        const std::uint64_t j = k ^ m.x;
        const std::complex<double> pk =
            (std::popcount(k & m.z) % 2) ? -m.y_phase : m.y_phase;
        const std::complex<double> pj =
            (std::popcount(j & m.z) % 2) ? -m.y_phase : m.y_phase;
        const std::complex<double> ak = a[k];
        a[k] = pj * a[j];
        a[j] = pk * ak;
    }
}

void apply_term_exponential(Statevector& psi, const PauliString& p, double theta) {
    const Masks m = masks_of(p, psi);
    const auto dim = static_cast<std::uint64_t>(psi.size());
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    auto* a = psi.data();
    if (m.x == 0) {
        // Diagonal action: each amplitude picks up exp(-i theta (+/-1)).
        const std::complex<double> plus{c, -s};
        const std::complex<double> minus{c, s};
        for (std::uint64_t k = 0; k < dim; ++k) {
            a[k] *= (std::popcount(k & m.z) % 2) ? minus : plus;
        }
        return;
    }
    const std::complex<double> mis{0.0, -s};
    const std::uint64_t low = m.x & (~m.x + 1);
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (k & low) continue;
        const std::uint64_t j = k ^ m.x;
        const std::complex<double> pk =
            (std::popcount(k & m.z) % 2) ? -m.y_phase : m.y_phase;
        const std::complex<double> pj =
            (std::popcount(j & m.z) % 2) ? -m.y_phase : m.y_phase;
        const std::complex<double> ak = a[k];
        a[k] = c * ak + mis * pj * a[j];
        a[j] = c * a[j] + mis * pk * ak;
    }
}

Statevector apply_hamiltonian(const QubitHamiltonian& h, const Statevector& psi) {
    Statevector out = Statevector::Zero(psi.size());
    Statevector scratch(psi.size());
    for (const PauliTerm& t : h.terms) {
        scratch = psi;
        apply_pauli(scratch, t.string);
        out += t.coefficient * scratch;
    }
    return out;
}

std::complex<double> expectation_value(const Statevector& psi, std::span<const PauliTerm> terms) {
    std::complex<double> sum = 0.0;
    Statevector scratch(psi.size());
    for (const PauliTerm& t : terms) {
        scratch = psi;
        apply_pauli(scratch, t.string);
        sum += t.coefficient * psi.dot(scratch);
    }
    return sum;
}

Statevector trotter_apply(Statevector psi, const QubitHamiltonian& ordered,
                          const TrotterConfig& config) {
    if (config.trotter_number < 1) {
        throw std::invalid_argument("trotter_number must be positive");
    }
    if (config.approximant_order != 1 && config.approximant_order != 2) {
        throw std::invalid_argument("approximant order must be 1 or 2");
    }
    const double dt = config.step_size();
    const auto& terms = ordered.terms;
    if (config.approximant_order == 1) {
        for (int step = 0; step < config.trotter_number; ++step) {
            for (const PauliTerm& t : terms) {
                apply_term_exponential(psi, t.string, t.coefficient.real() * dt);
            }
        }
    } else {
        const double half = dt / 2.0;
        for (int step = 0; step < config.trotter_number; ++step) {
            for (std::size_t k = 0; k < terms.size(); ++k) {
                apply_term_exponential(psi, terms[k].string, terms[k].coefficient.real() * half);
            }
            for (std::size_t k = terms.size(); k-- > 0;) {
                apply_term_exponential(psi, terms[k].string, terms[k].coefficient.real() * half);
            }
        }
    }
    return psi;
}

namespace {

EigenPair dense_ground_state(const QubitHamiltonian& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(dense_matrix(h));
    EigenPair pair;
    pair.energy = solver.eigenvalues()(0);
    pair.state = solver.eigenvectors().col(0);
    if (solver.eigenvalues().size() > 1) {
        pair.degenerate = solver.eigenvalues()(1) - solver.eigenvalues()(0) < 1e-8;
    }
    return pair;
}

Statevector seeded_start_vector(std::uint64_t dim, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    Statevector v(static_cast<Eigen::Index>(dim));
    const double scale = 1.0 / static_cast<double>(std::numeric_limits<std::uint64_t>::max());
    for (std::uint64_t k = 0; k < dim; ++k) {
        const double re = 2.0 * (static_cast<double>(engine()) * scale) - 1.0;
        const double im = 2.0 * (static_cast<double>(engine()) * scale) - 1.0;
        v(static_cast<Eigen::Index>(k)) = {re, im};
    }
    v.normalize();
    return v;
}

// Restarted Lanczos with full reorthogonalization inside each cycle.
EigenPair lanczos_ground_state(const QubitHamiltonian& h, const GroundStateOptions& opts) {
    const std::uint64_t dim = dimension(h.qubit_count);
    const std::size_t cycle = std::min<std::size_t>(48, static_cast<std::size_t>(dim));
    Statevector v = seeded_start_vector(dim, opts.seed);
    std::size_t applies = 0;
    double residual = std::numeric_limits<double>::infinity();
    EigenPair pair;

    while (applies < opts.max_matrix_applies) {
        std::vector<Statevector> basis;
        basis.reserve(cycle);
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cycle),
                                                    static_cast<Eigen::Index>(cycle));
        basis.push_back(v.normalized());
        std::size_t m = 0;
        for (; m < cycle && applies < opts.max_matrix_applies; ++m) {
            Statevector w = apply_hamiltonian(h, basis[m]);
            ++applies;
            const double alpha = std::real(basis[m].dot(w));
            tri(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)) = alpha;
            for (const Statevector& b : basis) {
                w -= b.dot(w) * b;
            }
            for (const Statevector& b : basis) {  // second pass for stability
                w -= b.dot(w) * b;
            }
            const double beta = w.norm();
            if (m + 1 < cycle) {
                if (beta < 1e-14) {
                    ++m;
                    break;
                }
                tri(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m + 1)) = beta;
                tri(static_cast<Eigen::Index>(m + 1), static_cast<Eigen::Index>(m)) = beta;
                basis.push_back(w / beta);
            }
        }

        const auto mm = static_cast<Eigen::Index>(std::min(m, basis.size()));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(tri.topLeftCorner(mm, mm));
        const Eigen::VectorXd ritz = small.eigenvectors().col(0);
        Statevector x = Statevector::Zero(static_cast<Eigen::Index>(dim));
        for (Eigen::Index k = 0; k < mm; ++k) {
            x += ritz(k) * basis[static_cast<std::size_t>(k)];
        }
        x.normalize();
        const double theta = small.eigenvalues()(0);
        Statevector hx = apply_hamiltonian(h, x);
        ++applies;
        residual = (hx - theta * x).norm();
        if (residual <= opts.residual_tolerance) {
            pair.energy = theta;
            pair.state = std::move(x);
            pair.degenerate = mm > 1 && small.eigenvalues()(1) - theta < 1e-8;
            return pair;
        }
        v = std::move(x);
    }
    throw ConvergenceError("ground state did not converge within " +
                               std::to_string(opts.max_matrix_applies) +
                               " matrix applications (residual " + std::to_string(residual) + ")",
                           residual);
}

}  // namespace

EigenPair ground_state(const QubitHamiltonian& h, const GroundStateOptions& opts) {
    if (h.qubit_count <= opts.dense_qubit_threshold) {
        return dense_ground_state(h);
    }
    return lanczos_ground_state(h, opts);
}

TrotterErrorReport measure_trotter_error(const QubitHamiltonian& ordered,
                                         const TrotterConfig& config, const EigenPair* ground) {
    if (config.total_time == 0.0) {
        throw std::invalid_argument("total_time must be nonzero");
    }
    EigenPair local;
    if (ground == nullptr) {
        local = ground_state(ordered);
        ground = &local;
    }
    const double t = config.total_time;
    const Statevector evolved = trotter_apply(ground->state, ordered, config);
    const std::complex<double> z = ground->state.dot(evolved);
    const std::complex<double> rotated = z * std::exp(std::complex<double>(0.0, ground->energy * t));

    TrotterErrorReport report;
    report.config = config;
    report.exact_energy = ground->energy;
    report.overlap_magnitude = std::abs(z);
    report.estimated_energy = ground->energy - std::arg(rotated) / t;
    report.measured_error = std::abs(std::arg(rotated)) / t;
    report.permutation.resize(ordered.terms.size());
    for (std::size_t i = 0; i < report.permutation.size(); ++i) report.permutation[i] = i;
    return report;
}

std::vector<std::pair<int, double>> error_vs_steps(const QubitHamiltonian& ordered, double t,
                                                   int order, std::span<const int> steps) {
    const EigenPair ground = ground_state(ordered);
    std::vector<std::pair<int, double>> out;
    out.reserve(steps.size());
    for (int n : steps) {
        TrotterConfig config{t, n, order};
        out.emplace_back(n, measure_trotter_error(ordered, config, &ground).measured_error);
    }
    return out;
}

}  // namespace trotter
