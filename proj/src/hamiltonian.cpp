#include "trotter/hamiltonian.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace trotter {

namespace {

struct RawTerm {
    double coefficient;
    std::vector<std::pair<std::size_t, PauliAxis>> factors;  // (qubit, axis)
    std::size_t line;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

double parse_coefficient(std::string_view token, std::size_t line) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError(line, "malformed coefficient '" + std::string(token) + "'");
    }
    if (!std::isfinite(value)) {
        throw ParseError(line, "non-finite coefficient '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

QubitHamiltonian parse_hamiltonian(std::string_view text, std::string label) {
    std::vector<RawTerm> raw;
    std::size_t declared_qubits = 0;
    bool has_header = false;
    std::size_t max_index_seen = 0;
    bool any_index_seen = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
        ++line_no;

        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        if (line.starts_with("qubits:")) {
            if (has_header || !raw.empty()) {
                throw ParseError(line_no, "qubits header must appear once, before any term");
            }
            std::string_view v = trim(line.substr(7));
            std::size_t n = 0;
            auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
            if (ec != std::errc{} || ptr != v.data() + v.size() || n == 0) {
                throw ParseError(line_no, "invalid qubit count '" + std::string(v) + "'");
            }
            declared_qubits = n;
            has_header = true;
            continue;
        }

        std::istringstream tokens{std::string(line)};
        std::string tok;
        tokens >> tok;
        RawTerm term{parse_coefficient(tok, line_no), {}, line_no};
        while (tokens >> tok) {
            if (tok.size() < 2) {
                throw ParseError(line_no, "malformed operator '" + tok + "'");
            }
            PauliAxis axis;
            switch (tok[0]) {
                case 'X': axis = PauliAxis::X; break;
                case 'Y': axis = PauliAxis::Y; break;
                case 'Z': axis = PauliAxis::Z; break;
                default:
                    throw ParseError(line_no, std::string("unknown axis letter '") + tok[0] + "'");
            }
            std::size_t index = 0;
            const char* first = tok.data() + 1;
            const char* last = tok.data() + tok.size();
            auto [ptr, ec] = std::from_chars(first, last, index);
            if (ec != std::errc{} || ptr != last) {
                throw ParseError(line_no, "invalid qubit index in '" + tok + "'");
            }
            for (const auto& [q, a] : term.factors) {
                if (q == index) {
                    throw ParseError(line_no, "duplicate qubit index " + std::to_string(index));
                }
            }
            if (has_header && index >= declared_qubits) {
                throw ParseError(line_no, "qubit index " + std::to_string(index) +
                                              " exceeds declared count " + std::to_string(declared_qubits));
            }
            term.factors.emplace_back(index, axis);
            max_index_seen = std::max(max_index_seen, index);
            any_index_seen = true;
        }
        raw.push_back(std::move(term));
    }

    QubitHamiltonian h;
    h.label = std::move(label);
    h.qubit_count = has_header ? declared_qubits : (any_index_seen ? max_index_seen + 1 : 1);

    std::vector<PauliTerm> terms;
    terms.reserve(raw.size());
    for (const RawTerm& rt : raw) {
        PauliString s(h.qubit_count);
        for (const auto& [q, a] : rt.factors) s.set_axis(q, a);
        terms.push_back({rt.coefficient, std::move(s)});
    }
    h.terms = combine(terms);
    return h;
}

QubitHamiltonian load_hamiltonian(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_hamiltonian(buf.str(), path.stem().string());
}

std::string serialize(const QubitHamiltonian& h) {
    std::string out = "qubits: " + std::to_string(h.qubit_count) + "\n";
    char num[64];
    for (const PauliTerm& t : h.terms) {
        std::snprintf(num, sizeof(num), "%.17g", t.coefficient.real());
        out += num;
        if (!t.string.is_identity()) {
            out += ' ';
            out += t.string.str();
        }
        out += '\n';
    }
    return out;
}

FactoredHamiltonian factor_totally_commuting(const QubitHamiltonian& h) {
    FactoredHamiltonian f;
    f.commuting_part.qubit_count = f.active_part.qubit_count = h.qubit_count;
    f.commuting_part.label = h.label;
    f.active_part.label = h.label;
    const std::size_t n = h.terms.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool central = true;
        for (std::size_t j = 0; j < n && central; ++j) {
            central = commutes(h.terms[i].string, h.terms[j].string);
        }
        (central ? f.commuting_part : f.active_part).terms.push_back(h.terms[i]);
    }
    return f;
}

double trotter_time(double reference_energy) {
    const double abs_e = std::abs(reference_energy);
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (abs_e < two_pi) return 1.0;
    return 1.0 / (two_pi * std::floor(abs_e / two_pi));
}

}  // namespace trotter
