#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trotter {

/// Single-qubit Pauli operator. Encoded as (x, z) symplectic bits:
/// I=(0,0), X=(1,0), Y=(1,1), Z=(0,1).
enum class PauliAxis : std::uint8_t { I = 0, X = 1, Y = 3, Z = 2 };

char axis_letter(PauliAxis a);

/// Tensor product of single-qubit Pauli operators over `width` qubits,
/// stored as X/Z bitmasks (qubit q = bit q of word q/64). Qubit 0 is the
/// least significant tensor factor.
class PauliString {
public:
    PauliString() = default;

    /// Identity string on `width` qubits.
    explicit PauliString(std::size_t width)
        : width_(width), x_(word_count(width), 0), z_(word_count(width), 0) {}

    static PauliString from_axes(std::span<const PauliAxis> axes);

    std::size_t width() const { return width_; }

    PauliAxis axis(std::size_t qubit) const;
    void set_axis(std::size_t qubit, PauliAxis a);

    bool is_identity() const;

    /// Number of non-identity positions.
    std::size_t weight() const;

    /// Number of Y positions (x and z bit both set).
    std::size_t y_count() const;

    std::span<const std::uint64_t> x_words() const { return x_; }
    std::span<const std::uint64_t> z_words() const { return z_; }

    /// Printed with highest qubit first, e.g. "Y3 Y2 X1 X0"; "I" when identity.
    std::string str() const;

    bool operator==(const PauliString&) const = default;

private:
    static std::size_t word_count(std::size_t width) { return (width + 63) / 64; }

    std::size_t width_ = 0;
    std::vector<std::uint64_t> x_;
    std::vector<std::uint64_t> z_;
};

struct PauliStringHash {
    std::size_t operator()(const PauliString& s) const noexcept;
};

/// Result of a Pauli string product: a·b = phase · string.
struct PauliProduct {
    std::complex<double> phase;  // one of 1, i, -1, -i
    PauliString string;
};

/// Weighted Pauli string. Hamiltonian coefficients are real; intermediate
/// algebra (commutators) produces complex values.
struct PauliTerm {
    std::complex<double> coefficient;
    PauliString string;
};

/// Exact product of two equal-width strings. Throws std::invalid_argument
/// on width mismatch.
PauliProduct multiply(const PauliString& a, const PauliString& b);

/// True iff the strings commute: the number of positions where both are
/// non-identity and differ is even.
bool commutes(const PauliString& a, const PauliString& b);

/// [a, b] = ab - ba. Empty when the strings commute; otherwise a single
/// term with coefficient 2 * c_a * c_b * phase(a.b).
std::optional<PauliTerm> commutator(const PauliTerm& a, const PauliTerm& b);

/// Merge like strings by coefficient summation. Output keeps first-seen
/// order and retains zero coefficients; no magnitude pruning.
std::vector<PauliTerm> combine(std::span<const PauliTerm> terms);

/// Strategy comparator over strings: per-qubit rank X < Y < Z < I compared
/// from qubit 0 upward; shorter strings behave as padded with I.
bool lexicographic_less(const PauliString& a, const PauliString& b);

}  // namespace trotter
