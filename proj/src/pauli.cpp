#include "trotter/pauli.hpp"

#include <bit>
#include <stdexcept>
#include <unordered_map>

namespace trotter {

namespace {

void check_same_width(const PauliString& a, const PauliString& b) {
    if (a.width() != b.width()) {
        throw std::invalid_argument("Pauli string width mismatch: " +
                                    std::to_string(a.width()) + " vs " +
                                    std::to_string(b.width()));
    }
}

constexpr std::complex<double> kPhaseTable[4] = {
    {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

}  // namespace

char axis_letter(PauliAxis a) {
    switch (a) {
        case PauliAxis::I: return 'I';
        case PauliAxis::X: return 'X';
        case PauliAxis::Y: return 'Y';
        case PauliAxis::Z: return 'Z';
    }
    throw std::logic_error("invalid PauliAxis");
}

PauliString PauliString::from_axes(std::span<const PauliAxis> axes) {
    PauliString s(axes.size());
    for (std::size_t q = 0; q < axes.size(); ++q) {
        s.set_axis(q, axes[q]);
    }
    return s;
}

PauliAxis PauliString::axis(std::size_t qubit) const {
    const std::size_t w = qubit / 64;
    const std::uint64_t bit = std::uint64_t{1} << (qubit % 64);
    const bool x = (x_[w] & bit) != 0;
    const bool z = (z_[w] & bit) != 0;
    return static_cast<PauliAxis>((x ? 1 : 0) | (z ? 2 : 0));
}

void PauliString::set_axis(std::size_t qubit, PauliAxis a) {
    if (qubit >= width_) {
        throw std::out_of_range("qubit index " + std::to_string(qubit) +
                                " out of range for width " + std::to_string(width_));
    }
    const std::size_t w = qubit / 64;
    const std::uint64_t bit = std::uint64_t{1} << (qubit % 64);
    const auto v = static_cast<std::uint8_t>(a);
    if (v & 1) x_[w] |= bit; else x_[w] &= ~bit;
    if (v & 2) z_[w] |= bit; else z_[w] &= ~bit;
}

bool PauliString::is_identity() const {
    for (std::size_t w = 0; w < x_.size(); ++w) {
        if (x_[w] != 0 || z_[w] != 0) return false;
    }
    return true;
}

std::size_t PauliString::weight() const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
        n += std::popcount(x_[w] | z_[w]);
    }
    return n;
}

std::size_t PauliString::y_count() const {
    std::size_t n = 0;
    for (std::size_t w = 0; w < x_.size(); ++w) {
        n += std::popcount(x_[w] & z_[w]);
    }
    return n;
}

std::string PauliString::str() const {
    if (is_identity()) return "I";
    std::string out;
    for (std::size_t q = width_; q-- > 0;) {
        const PauliAxis a = axis(q);
        if (a == PauliAxis::I) continue;
        if (!out.empty()) out += ' ';
        out += axis_letter(a);
        out += std::to_string(q);
    }
    return out;
}

std::size_t PauliStringHash::operator()(const PauliString& s) const noexcept {
    std::size_t seed = s.width();
    auto mix = [&seed](std::uint64_t v) {
        seed ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
    };
    for (std::uint64_t w : s.x_words()) mix(w);
    for (std::uint64_t w : s.z_words()) mix(w);
    return seed;
}

PauliProduct multiply(const PauliString& a, const PauliString& b) {
    check_same_width(a, b);
    PauliString prod(a.width());
    // Per-qubit phase exponent of i: x1*z1 + x2*z2 - x3*z3 + 2*z1*x2 (mod 4),
    // where (x3, z3) = (x1^x2, z1^z2).
    int exponent = 0;
    const auto ax = a.x_words(), az = a.z_words();
    const auto bx = b.x_words(), bz = b.z_words();
    std::vector<std::uint64_t> px(ax.size()), pz(ax.size());
    for (std::size_t w = 0; w < ax.size(); ++w) {
        const std::uint64_t x3 = ax[w] ^ bx[w];
        const std::uint64_t z3 = az[w] ^ bz[w];
        exponent += std::popcount(ax[w] & az[w]);
        exponent += std::popcount(bx[w] & bz[w]);
        exponent -= std::popcount(x3 & z3);
        exponent += 2 * std::popcount(az[w] & bx[w]);
        px[w] = x3;
        pz[w] = z3;
    }
    for (std::size_t q = 0; q < a.width(); ++q) {
        const std::size_t w = q / 64;
        const std::uint64_t bit = std::uint64_t{1} << (q % 64);
        prod.set_axis(q, static_cast<PauliAxis>(((px[w] & bit) ? 1 : 0) | ((pz[w] & bit) ? 2 : 0)));
    }
    return {kPhaseTable[((exponent % 4) + 4) % 4], std::move(prod)};
}

bool commutes(const PauliString& a, const PauliString& b) {
    check_same_width(a, b);
    const auto ax = a.x_words(), az = a.z_words();
    const auto bx = b.x_words(), bz = b.z_words();
    std::size_t anti = 0;
    for (std::size_t w = 0; w < ax.size(); ++w) {
        anti += std::popcount((ax[w] & bz[w]) ^ (az[w] & bx[w]));
    }
    return (anti % 2) == 0;
}

std::optional<PauliTerm> commutator(const PauliTerm& a, const PauliTerm& b) {
    if (commutes(a.string, b.string)) return std::nullopt;
    PauliProduct p = multiply(a.string, b.string);
    // ab = phase * p, ba = -phase * p, so [a, b] = 2 c_a c_b phase * p.
    return PauliTerm{2.0 * a.coefficient * b.coefficient * p.phase, std::move(p.string)};
}

std::vector<PauliTerm> combine(std::span<const PauliTerm> terms) {
    std::vector<PauliTerm> out;
    std::unordered_map<PauliString, std::size_t, PauliStringHash> index;
    out.reserve(terms.size());
    for (const PauliTerm& t : terms) {
        if (!terms.empty() && t.string.width() != terms.front().string.width()) {
            throw std::invalid_argument("combine: mixed Pauli string widths");
        }
        auto [it, inserted] = index.try_emplace(t.string, out.size());
        if (inserted) {
            out.push_back(t);
        } else {
            out[it->second].coefficient += t.coefficient;
        }
    }
    return out;
}

bool lexicographic_less(const PauliString& a, const PauliString& b) {
    // Identity ranks last so strings acting on low qubits sort first.
    static constexpr int kRank[4] = {3, 0, 2, 1};  // I, X, Z, Y by symplectic code
    const std::size_t width = std::max(a.width(), b.width());
    for (std::size_t q = 0; q < width; ++q) {
        const int ra = q < a.width() ? kRank[static_cast<std::uint8_t>(a.axis(q))] : 3;
        const int rb = q < b.width() ? kRank[static_cast<std::uint8_t>(b.axis(q))] : 3;
        if (ra != rb) return ra < rb;
    }
    return false;
}

}  // namespace trotter
