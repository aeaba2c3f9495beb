#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "trotter/hamiltonian.hpp"

namespace trotter {

namespace {

// Axes are listed for qubits 0..3 (qubit 0 first).
struct TermSpec {
    double coefficient;
    const char* axes;
};

PauliTerm make_term(const TermSpec& spec) {
    PauliString s(4);
    for (std::size_t q = 0; q < 4; ++q) {
        switch (spec.axes[q]) {
            case 'I': break;
            case 'X': s.set_axis(q, PauliAxis::X); break;
            case 'Y': s.set_axis(q, PauliAxis::Y); break;
            case 'Z': s.set_axis(q, PauliAxis::Z); break;
            default: throw std::logic_error("bad fixture axis");
        }
    }
    return {spec.coefficient, std::move(s)};
}

// Hydrogen molecule, STO-3G basis, Jordan-Wigner mapping, 0.7414 A bond length.
constexpr std::array<TermSpec, 15> kH2Full = {{
    {-0.81262, "IIII"},
    {0.17120, "ZIII"}, {0.17120, "IZII"}, {-0.22279, "IIZI"}, {-0.22279, "IIIZ"},
    {0.16862, "ZZII"}, {0.12054, "ZIZI"}, {0.16587, "ZIIZ"},
    {0.16587, "IZZI"}, {0.12054, "IZIZ"}, {0.17435, "IIZZ"},
    {-0.04532, "XXYY"}, {0.04532, "XYYX"}, {0.04532, "YXXY"}, {-0.04532, "YYXX"},
}};

// Active parts (single-Z and four-qubit XY strings) at five bond lengths.
// Layout per row: Z0, Z1, Z2, Z3, then the four XY strings.
struct ActiveSpec {
    const char* name;
    double z0, z2;   // z1 == z0, z3 == z2 at every geometry
    double xy;       // common magnitude; signs fixed by the string
};

constexpr std::array<ActiveSpec, 5> kActive = {{
    {"h2_active_0.3707", 0.24197, -0.48079, 0.04084},
    {"h2_active_0.7414", 0.17120, -0.22279, 0.04532},
    {"h2_active_1.1121", 0.12533, -0.10205, 0.05100},
    {"h2_active_1.4828", 0.09462, -0.03780, 0.05711},
    {"h2_active_10.000", 0.03964, 0.03964, 0.09021},
}};

std::vector<PauliTerm> active_terms(const ActiveSpec& a) {
    return {
        make_term({a.z0, "ZIII"}), make_term({a.z0, "IZII"}),
        make_term({a.z2, "IIZI"}), make_term({a.z2, "IIIZ"}),
        make_term({-a.xy, "XXYY"}), make_term({a.xy, "XYYX"}),
        make_term({a.xy, "YXXY"}), make_term({-a.xy, "YYXX"}),
    };
}

void sort_canonical(std::vector<PauliTerm>& terms) {
    std::stable_sort(terms.begin(), terms.end(), [](const PauliTerm& a, const PauliTerm& b) {
        const double ma = std::abs(a.coefficient), mb = std::abs(b.coefficient);
        if (ma != mb) return ma > mb;
        return lexicographic_less(a.string, b.string);
    });
}

// Optimal second-order single-step orderings (simulation order, first term
// first). The 2x2 coefficient symmetry keeps these optimal only up to swaps
// of equal-magnitude terms; these rows are the reference sequences.
const std::array<std::vector<TermSpec>, 5> kOptimalOrder = {{
    {{0.24197, "IZII"}, {0.04084, "YXXY"}, {0.24197, "ZIII"}, {-0.04084, "XXYY"},
     {-0.48079, "IIIZ"}, {-0.04084, "YYXX"}, {-0.48079, "IIZI"}, {0.04084, "XYYX"}},
    {{0.17120, "IZII"}, {0.04532, "YXXY"}, {0.17120, "ZIII"}, {-0.04532, "XXYY"},
     {-0.22279, "IIIZ"}, {-0.04532, "YYXX"}, {-0.22279, "IIZI"}, {0.04532, "XYYX"}},
    {{-0.10205, "IIZI"}, {0.05100, "YXXY"}, {-0.10205, "IIIZ"}, {0.05100, "XYYX"},
     {0.12533, "ZIII"}, {-0.05100, "XXYY"}, {0.12533, "IZII"}, {-0.05100, "YYXX"}},
    {{-0.03780, "IIZI"}, {0.05711, "YXXY"}, {-0.03780, "IIIZ"}, {0.05711, "XYYX"},
     {0.09462, "ZIII"}, {-0.05711, "XXYY"}, {0.09462, "IZII"}, {-0.05711, "YYXX"}},
    {{0.09021, "YXXY"}, {0.09021, "XYYX"}, {-0.09021, "YYXX"}, {-0.09021, "XXYY"},
     {0.03964, "ZIII"}, {0.03964, "IZII"}, {0.03964, "IIIZ"}, {0.03964, "IIZI"}},
}};

std::size_t active_index(std::string_view name) {
    for (std::size_t i = 0; i < kActive.size(); ++i) {
        if (name == kActive[i].name) return i;
    }
    throw std::invalid_argument("unknown fixture '" + std::string(name) + "'");
}

}  // namespace

const std::vector<std::string>& builtin_fixture_names() {
    static const std::vector<std::string> names = {
        "h2_sto3g_0.7414",  "h2_active_0.3707", "h2_active_0.7414",
        "h2_active_1.1121", "h2_active_1.4828", "h2_active_10.000",
    };
    return names;
}

QubitHamiltonian builtin_fixture(std::string_view name) {
    QubitHamiltonian h;
    h.qubit_count = 4;
    h.label = std::string(name);
    if (name == "h2_sto3g_0.7414") {
        for (const TermSpec& t : kH2Full) h.terms.push_back(make_term(t));
    } else {
        h.terms = active_terms(kActive[active_index(name)]);
    }
    sort_canonical(h.terms);
    return h;
}

std::vector<PauliTerm> reference_optimal_ordering(std::string_view name) {
    const std::size_t i = active_index(name);
    std::vector<PauliTerm> out;
    for (const TermSpec& t : kOptimalOrder[i]) out.push_back(make_term(t));
    return out;
}

}  // namespace trotter
