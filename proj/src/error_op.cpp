#include "trotter/error_op.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/Eigenvalues>

#include "trotter/dense.hpp"

namespace trotter {

namespace {

// Combines terms on the fly, emitting first-seen order.
class Accumulator {
public:
    void add(const PauliTerm& t) {
        auto [it, inserted] = index_.try_emplace(t.string, terms_.size());
        if (inserted) {
            terms_.push_back(t);
        } else {
            terms_[it->second].coefficient += t.coefficient;
        }
    }

    void add(std::span<const PauliTerm> terms) {
        for (const PauliTerm& t : terms) add(t);
    }

    std::vector<PauliTerm> take() { return std::move(terms_); }

private:
    std::vector<PauliTerm> terms_;
    std::unordered_map<PauliString, std::size_t, PauliStringHash> index_;
};

// [H_a (1 - delta/2), inner] scaled by -dt^2/12, appended to acc.
void add_outer(Accumulator& acc, const PauliTerm& alpha, const PauliTerm& inner,
               bool alpha_eq_beta, double dt) {
    auto outer = commutator(alpha, inner);
    if (!outer) return;
    const double factor = -(dt * dt) / 12.0 * (alpha_eq_beta ? 0.5 : 1.0);
    outer->coefficient *= factor;
    acc.add(*outer);
}

double magnitude(const PauliTerm& t) { return std::abs(t.coefficient); }

bool magnitude_then_lex(const PauliTerm& a, const PauliTerm& b) {
    const double ma = magnitude(a), mb = magnitude(b);
    if (ma != mb) return ma > mb;
    return lexicographic_less(a.string, b.string);
}

double coeff_one_norm(std::span<const PauliTerm> terms) {
    double sum = 0.0;
    for (const PauliTerm& t : terms) sum += std::abs(t.coefficient);
    return sum;
}

double spectral_norm(std::span<const PauliTerm> terms, std::size_t qubit_count,
                     std::size_t threshold) {
    if (qubit_count > threshold) {
        throw CapExceeded("spectral norm refused: " + std::to_string(qubit_count) +
                          " qubits exceed dense threshold " + std::to_string(threshold));
    }
    if (terms.empty()) return 0.0;
    const Eigen::MatrixXcd m = dense_matrix(terms, qubit_count);
    // The expansion is Hermitian up to rounding, so the largest singular
    // value equals the largest |eigenvalue| of the Hermitian part.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver((m + m.adjoint()) / 2.0);
    const auto& ev = solver.eigenvalues();
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
}

}  // namespace

NormKind norm_from_name(std::string_view name) {
    if (name == "coeff" || name == "coeff_one_norm") return NormKind::coeff_one_norm;
    if (name == "spectral") return NormKind::spectral;
    throw std::invalid_argument("unknown norm kind '" + std::string(name) + "'");
}

std::vector<PauliTerm> term_operator(const PauliTerm& alpha, const PauliTerm& beta,
                                     const PauliTerm& gamma, bool alpha_eq_beta, double dt) {
    auto inner = commutator(beta, gamma);
    if (!inner) return {};
    Accumulator acc;
    add_outer(acc, alpha, *inner, alpha_eq_beta, dt);
    return acc.take();
}

ErrorOperator build_error_operator(const QubitHamiltonian& ordered, double dt) {
    ErrorOperator v;
    v.step_size = dt;
    v.source_order.resize(ordered.terms.size());
    for (std::size_t i = 0; i < v.source_order.size(); ++i) v.source_order[i] = i;

    Accumulator acc;
    const auto& t = ordered.terms;
    for (std::size_t b = 0; b < t.size(); ++b) {
        for (std::size_t g = 0; g < b; ++g) {
            auto inner = commutator(t[b], t[g]);
            if (!inner) continue;
            for (std::size_t a = 0; a <= b; ++a) {
                add_outer(acc, t[a], *inner, a == b, dt);
            }
        }
    }
    v.terms = acc.take();
    return v;
}

std::vector<PauliTerm> term_insertion_delta(const QubitHamiltonian& ordered,
                                            const PauliTerm& inserted, std::size_t position,
                                            double dt) {
    const auto& t = ordered.terms;
    const std::size_t n = t.size();
    if (position > n) {
        throw std::out_of_range("insertion position " + std::to_string(position) +
                                " out of range 0.." + std::to_string(n));
    }
    if (!t.empty() && inserted.string.width() != t.front().string.width()) {
        throw std::invalid_argument("inserted term width mismatch");
    }

    // Post-insertion sequence: t[0..i-1], inserted, t[i..n-1].
    const std::size_t i = position;
    auto seq = [&](std::size_t k) -> const PauliTerm& {
        if (k < i) return t[k];
        if (k == i) return inserted;
        return t[k - 1];
    };

    Accumulator acc;

    // beta = i: alpha <= i, gamma < i.
    for (std::size_t g = 0; g < i; ++g) {
        auto inner = commutator(inserted, seq(g));
        if (!inner) continue;
        for (std::size_t a = 0; a <= i; ++a) {
            add_outer(acc, seq(a), *inner, a == i, dt);
        }
    }

    for (std::size_t b = i + 1; b <= n; ++b) {
        // alpha = i: gamma < beta (gamma may equal i).
        for (std::size_t g = 0; g < b; ++g) {
            auto inner = commutator(seq(b), seq(g));
            if (!inner) continue;
            add_outer(acc, inserted, *inner, false, dt);
        }
        // gamma = i: alpha <= beta, alpha != i.
        auto inner = commutator(seq(b), inserted);
        if (!inner) continue;
        for (std::size_t a = 0; a <= b; ++a) {
            if (a == i) continue;
            add_outer(acc, seq(a), *inner, a == b, dt);
        }
    }
    return acc.take();
}

double operator_norm(const ErrorOperator& v, NormKind kind, std::size_t dense_qubit_threshold) {
    switch (kind) {
        case NormKind::coeff_one_norm:
            return coeff_one_norm(v.terms);
        case NormKind::spectral: {
            std::size_t width = 0;
            for (const PauliTerm& t : v.terms) width = std::max(width, t.string.width());
            return spectral_norm(v.terms, width, dense_qubit_threshold);
        }
    }
    throw std::logic_error("invalid NormKind");
}

OrderingResult order_error_operator_greedy(const QubitHamiltonian& h, double dt, NormKind kind) {
    // Identity/zero terms stay at the front, as in every other strategy.
    std::vector<std::size_t> passive, active;
    for (std::size_t i = 0; i < h.terms.size(); ++i) {
        if (h.terms[i].string.is_identity() || h.terms[i].coefficient == 0.0) {
            passive.push_back(i);
        } else {
            active.push_back(i);
        }
    }
    std::stable_sort(active.begin(), active.end(), [&h](std::size_t a, std::size_t b) {
        return magnitude_then_lex(h.terms[a], h.terms[b]);
    });

    QubitHamiltonian partial;
    partial.qubit_count = h.qubit_count;
    std::vector<std::size_t> placed;  // original indices, simulation order
    std::vector<PauliTerm> v_terms;

    for (std::size_t idx : active) {
        const PauliTerm& term = h.terms[idx];
        std::size_t best_pos = 0;
        double best_norm = 0.0;
        std::vector<PauliTerm> best_v;
        for (std::size_t pos = 0; pos <= partial.terms.size(); ++pos) {
            std::vector<PauliTerm> candidate = v_terms;
            const auto delta = term_insertion_delta(partial, term, pos, dt);
            candidate.insert(candidate.end(), delta.begin(), delta.end());
            candidate = combine(candidate);
            ErrorOperator v{dt, candidate, {}};
            const double norm = operator_norm(v, kind);
            if (pos == 0 || norm <= best_norm) {  // ties keep the latest slot
                best_pos = pos;
                best_norm = norm;
                best_v = std::move(candidate);
            }
        }
        partial.terms.insert(partial.terms.begin() + static_cast<std::ptrdiff_t>(best_pos), term);
        placed.insert(placed.begin() + static_cast<std::ptrdiff_t>(best_pos), idx);
        v_terms = std::move(best_v);
    }

    std::vector<std::size_t> perm = passive;
    perm.insert(perm.end(), placed.begin(), placed.end());
    return ordering_from_permutation(h, perm);
}

OrderingResult apply_strategy(const QubitHamiltonian& h, OrderingStrategy strategy, double dt,
                              NormKind kind) {
    switch (strategy) {
        case OrderingStrategy::magnitude:
            return order_magnitude(h);
        case OrderingStrategy::lexicographic:
            return order_lexicographic(h);
        case OrderingStrategy::deplete_groups:
        case OrderingStrategy::equalise_groups: {
            const Coloring coloring =
                greedy_color(build_graph(h), ColoringStrategy::independent_set);
            return strategy == OrderingStrategy::deplete_groups
                       ? order_deplete_groups(h, coloring)
                       : order_equalise_groups(h, coloring);
        }
        case OrderingStrategy::commutator:
            return order_commutator(h);
        case OrderingStrategy::reverse_commutator:
            return order_reverse_commutator(h);
        case OrderingStrategy::error_operator_greedy:
            return order_error_operator_greedy(h, dt, kind);
        case OrderingStrategy::as_given: {
            std::vector<std::size_t> identity(h.terms.size());
            for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = i;
            return ordering_from_permutation(h, identity);
        }
    }
    throw std::logic_error("invalid OrderingStrategy");
}

}  // namespace trotter
