#include "trotter/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <complex>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "trotter/graph.hpp"
#include "trotter/sim.hpp"

namespace trotter::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kCheckpointInterval = 1'000'000;
constexpr std::uint64_t kChunk = 1024;

std::string schema_header(std::string_view schema) {
    return "# trotter-order v" + std::string(kVersion) + " schema=" + std::string(schema) + "\n";
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hc = std::thread::hardware_concurrency();
    return static_cast<int>(std::clamp(hc, 1u, 8u));
}

/// Claim contiguous index chunks until the range is exhausted.
void parallel_index_range(std::uint64_t first, std::uint64_t last, int threads,
                          const std::function<void(std::uint64_t, std::uint64_t)>& work) {
    if (last <= first) return;
    const int n_threads = std::min<std::uint64_t>(resolve_threads(threads),
                                                  (last - first + kChunk - 1) / kChunk);
    if (n_threads <= 1) {
        work(first, last);
        return;
    }
    std::atomic<std::uint64_t> next{first};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::uint64_t begin = next.fetch_add(kChunk);
                if (begin >= last) return;
                work(begin, std::min(begin + kChunk, last));
            }
        });
    }
    for (auto& t : pool) t.join();
}

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - std::floor(pos);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

QubitHamiltonian drop_zero_terms(QubitHamiltonian h) {
    std::erase_if(h.terms, [](const PauliTerm& t) { return t.coefficient == 0.0; });
    return h;
}

QubitHamiltonian prepared_input(const std::string& input, const RunOptions& run) {
    QubitHamiltonian h = load_input(input);
    if (run.active_only) {
        h = factor_totally_commuting(h).active_part;
    }
    return h;
}

struct TimedSetup {
    double total_time;
    EigenPair ground;
};

TimedSetup setup_ground_and_time(const QubitHamiltonian& h, const RunOptions& run) {
    TimedSetup s;
    s.ground = ground_state(h);
    if (run.time) {
        s.total_time = *run.time;
    } else {
        s.total_time = trotter_time(run.reference_energy.value_or(s.ground.energy));
    }
    return s;
}

double phase_error(const EigenPair& ground, const Statevector& evolved, double t) {
    const std::complex<double> z = ground.state.dot(evolved);
    return std::abs(std::arg(z * std::exp(std::complex<double>(0.0, ground.energy * t)))) / t;
}

json analysis_record(const QubitHamiltonian& h, std::string_view strategy,
                     const TrotterErrorReport& report) {
    return json{{"label", h.label},
                {"qubits", h.qubit_count},
                {"term_count", h.terms.size()},
                {"strategy", std::string(strategy)},
                {"trotter_order", report.config.approximant_order},
                {"steps", report.config.trotter_number},
                {"time", report.config.total_time},
                {"measured_error", report.measured_error},
                {"estimated_energy", report.estimated_energy},
                {"exact_energy", report.exact_energy},
                {"overlap", report.overlap_magnitude},
                {"timestamp", timestamp_utc()}};
}

struct CheckpointState {
    std::uint64_t next_index = 0;
    bool resumed = false;
};

CheckpointState read_checkpoint(const std::string& path, std::uint64_t digest,
                                std::uint64_t total, const std::string& rows_path,
                                std::vector<double>& errors) {
    CheckpointState state;
    std::ifstream in(path);
    if (!in) return state;
    json cp = json::parse(in, nullptr, false);
    if (cp.is_discarded() || cp.value("schema", "") != "enumerate-checkpoint") {
        throw std::runtime_error("checkpoint file '" + path + "' is not an enumerate checkpoint");
    }
    if (cp.value("digest", "") != std::to_string(digest) ||
        cp.value("total", std::uint64_t{0}) != total) {
        throw std::runtime_error("checkpoint '" + path + "' does not match this run");
    }
    const auto next = cp.value("next_index", std::uint64_t{0});
    std::ifstream rows(rows_path);
    if (!rows) {
        throw std::runtime_error("checkpoint refers to missing rows file '" + rows_path + "'");
    }
    std::string line;
    std::uint64_t count = 0;
    while (count < next && std::getline(rows, line)) {
        if (line.empty() || line[0] == '#' || line.starts_with("perm_id")) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) continue;
        const std::uint64_t id = std::stoull(line.substr(0, comma));
        errors[id] = std::stod(line.substr(comma + 1));
        ++count;
    }
    if (count != next) {
        throw std::runtime_error("rows file '" + rows_path + "' is shorter than checkpoint");
    }
    state.next_index = next;
    state.resumed = true;
    return state;
}

void write_checkpoint(const std::string& path, std::uint64_t digest, std::uint64_t total,
                      std::uint64_t next_index, const std::string& rows_path) {
    json cp{{"app", "trotter-order"},
            {"schema", "enumerate-checkpoint"},
            {"digest", std::to_string(digest)},
            {"total", total},
            {"next_index", next_index},
            {"rows_path", rows_path}};
    std::ofstream out(path, std::ios::trunc);
    out << cp.dump(2) << "\n";
}

int map_exception(std::ostream& err) {
    try {
        throw;
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kRefused;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return kNoConvergence;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kInputError;
    }
}

}  // namespace

QubitHamiltonian load_input(const std::string& input) {
    constexpr std::string_view prefix = "fixture:";
    if (input.starts_with(prefix)) {
        return builtin_fixture(input.substr(prefix.size()));
    }
    return load_hamiltonian(input);
}

double resolve_time(const QubitHamiltonian& h, const RunOptions& run) {
    if (run.time) return *run.time;
    if (run.reference_energy) return trotter_time(*run.reference_energy);
    return trotter_time(ground_state(h).energy);
}

int cmd_order(const OrderCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const QubitHamiltonian h = prepared_input(cmd.input, cmd.run);
        const OrderingStrategy strategy = strategy_from_name(cmd.strategy);
        double dt = 1.0;
        if (strategy == OrderingStrategy::error_operator_greedy) {
            dt = resolve_time(h, cmd.run) / cmd.run.steps;
        }
        const OrderingResult result = apply_strategy(h, strategy, dt, cmd.run.norm);
        const std::string text = serialize(result.ordered);
        if (cmd.output_path.empty()) {
            out << text;
        } else {
            std::ofstream file(cmd.output_path, std::ios::trunc);
            if (!file) throw std::runtime_error("cannot write '" + cmd.output_path + "'");
            file << text;
            json sidecar{{"app", "trotter-order"},
                         {"version", kVersion},
                         {"schema", "order-sidecar"},
                         {"label", h.label},
                         {"strategy", cmd.strategy},
                         {"permutation", result.permutation}};
            std::ofstream side(cmd.output_path + ".perm.json", std::ios::trunc);
            side << sidecar.dump(2) << "\n";
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_enumerate(const EnumerateCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const QubitHamiltonian input = load_input(cmd.input);
        const QubitHamiltonian active =
            drop_zero_terms(factor_totally_commuting(input).active_part);
        const std::size_t n = active.terms.size();
        if (n > cmd.cap) {
            throw CapExceeded("enumeration refused: " + std::to_string(n) +
                              " active terms exceed cap " + std::to_string(cmd.cap));
        }
        const std::uint64_t total = factorial(n);
        const TimedSetup setup = setup_ground_and_time(active, cmd.run);
        const TrotterConfig config{setup.total_time, cmd.run.steps, cmd.run.trotter_order};

        const std::uint64_t digest =
            fnv1a(serialize(active) + "|" + std::to_string(config.approximant_order) + "|" +
                  std::to_string(config.trotter_number) + "|" + format_double(config.total_time));

        std::vector<double> errors(total, 0.0);
        CheckpointState checkpoint;
        if (!cmd.checkpoint_path.empty()) {
            if (cmd.rows_path.empty()) {
                throw std::runtime_error("--checkpoint requires --out <rows file>");
            }
            checkpoint =
                read_checkpoint(cmd.checkpoint_path, digest, total, cmd.rows_path, errors);
        }

        // Rows sink: file when requested, stdout only in csv mode.
        std::ofstream rows_file;
        std::ostream* rows = nullptr;
        if (!cmd.rows_path.empty()) {
            rows_file.open(cmd.rows_path, checkpoint.resumed ? std::ios::app : std::ios::trunc);
            if (!rows_file) throw std::runtime_error("cannot write '" + cmd.rows_path + "'");
            rows = &rows_file;
        } else if (cmd.run.format == "csv") {
            rows = &out;
        }
        if (rows != nullptr && !checkpoint.resumed) {
            *rows << schema_header("enumerate-rows") << "perm_id,error\n";
        }

        auto evaluate = [&](std::uint64_t begin, std::uint64_t end) {
            QubitHamiltonian local = active;
            for_each_permutation(n, begin, end,
                                 [&](std::uint64_t idx, std::span<const std::size_t> perm) {
                                     for (std::size_t k = 0; k < n; ++k) {
                                         local.terms[k] = active.terms[perm[k]];
                                     }
                                     const Statevector evolved =
                                         trotter_apply(setup.ground.state, local, config);
                                     errors[idx] = phase_error(setup.ground, evolved,
                                                               config.total_time);
                                     return true;
                                 });
        };

        for (std::uint64_t seg = checkpoint.next_index; seg < total; seg += kCheckpointInterval) {
            const std::uint64_t seg_end = std::min(seg + kCheckpointInterval, total);
            parallel_index_range(seg, seg_end, cmd.run.threads, evaluate);
            if (rows != nullptr) {
                for (std::uint64_t i = seg; i < seg_end; ++i) {
                    *rows << i << ',' << format_double(errors[i]) << '\n';
                }
                rows->flush();
            }
            if (!cmd.checkpoint_path.empty()) {
                write_checkpoint(cmd.checkpoint_path, digest, total, seg_end, cmd.rows_path);
            }
        }

        // Summary statistics over the full ordering space.
        std::vector<double> sorted = errors;
        std::sort(sorted.begin(), sorted.end());
        const auto argmin = static_cast<std::uint64_t>(
            std::min_element(errors.begin(), errors.end()) - errors.begin());
        const auto argmax = static_cast<std::uint64_t>(
            std::max_element(errors.begin(), errors.end()) - errors.begin());

        json fractions = json::array();
        for (double threshold : cmd.thresholds) {
            const auto under = std::upper_bound(sorted.begin(), sorted.end(), threshold) -
                               sorted.begin();
            fractions.push_back({{"threshold", threshold},
                                 {"fraction", static_cast<double>(under) /
                                                  static_cast<double>(total)}});
        }

        json cdf_points = json::array();
        const double lo = sorted.front(), hi = sorted.back();
        for (int b = 1; b <= cmd.bins; ++b) {
            const double edge = lo + (hi - lo) * static_cast<double>(b) / cmd.bins;
            const auto under =
                std::upper_bound(sorted.begin(), sorted.end(), edge) - sorted.begin();
            cdf_points.push_back(
                {edge, static_cast<double>(under) / static_cast<double>(total)});
        }

        json summary{{"app", "trotter-order"},
                     {"version", kVersion},
                     {"schema", "enumerate-summary"},
                     {"label", active.label},
                     {"qubits", active.qubit_count},
                     {"active_terms", n},
                     {"trotter_order", config.approximant_order},
                     {"steps", config.trotter_number},
                     {"time", config.total_time},
                     {"total_orderings", total},
                     {"min", sorted.front()},
                     {"max", sorted.back()},
                     {"argmin_perm_id", argmin},
                     {"argmin_permutation", permutation_at(n, argmin)},
                     {"argmax_perm_id", argmax},
                     {"argmax_permutation", permutation_at(n, argmax)},
                     {"quantiles",
                      {{"q01", quantile(sorted, 0.01)},
                       {"q05", quantile(sorted, 0.05)},
                       {"q25", quantile(sorted, 0.25)},
                       {"q50", quantile(sorted, 0.50)},
                       {"q75", quantile(sorted, 0.75)},
                       {"q95", quantile(sorted, 0.95)},
                       {"q99", quantile(sorted, 0.99)}}},
                     {"fractions_under", fractions},
                     {"cdf", {{"bins", cmd.bins}, {"points", cdf_points}}}};

        if (!cmd.summary_path.empty()) {
            std::ofstream file(cmd.summary_path, std::ios::trunc);
            if (!file) throw std::runtime_error("cannot write '" + cmd.summary_path + "'");
            file << summary.dump(2) << "\n";
        } else if (cmd.run.format == "json") {
            out << summary.dump(2) << "\n";
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_compare(const CompareCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const QubitHamiltonian h = prepared_input(cmd.input, cmd.run);
        const TimedSetup setup = setup_ground_and_time(h, cmd.run);
        const TrotterConfig config{setup.total_time, cmd.run.steps, cmd.run.trotter_order};
        const double dt = config.step_size();

        std::vector<std::string> strategies = cmd.strategies;
        if (strategies.empty()) {
            strategies = {"magnitude", "lexicographic", "deplete_groups", "equalise_groups"};
        }

        const double magnitude_error =
            measure_trotter_error(order_magnitude(h).ordered, config, &setup.ground)
                .measured_error;

        struct Row {
            std::string strategy;
            TrotterErrorReport report;
            std::optional<double> coeff_norm;
            std::optional<double> spectral_norm;
        };
        std::vector<Row> rows;
        for (const std::string& name : strategies) {
            const OrderingStrategy strategy = strategy_from_name(name);
            const OrderingResult result = apply_strategy(h, strategy, dt, cmd.run.norm);
            Row row;
            row.strategy = name;
            row.report = measure_trotter_error(result.ordered, config, &setup.ground);
            row.report.permutation = result.permutation;
            if (cmd.with_norms) {
                const ErrorOperator v = build_error_operator(result.ordered, dt);
                row.coeff_norm = operator_norm(v, NormKind::coeff_one_norm);
                if (cmd.run.norm == NormKind::spectral) {
                    row.spectral_norm = operator_norm(v, NormKind::spectral);
                }
            }
            rows.push_back(std::move(row));
        }

        std::vector<std::size_t> rank(rows.size());
        for (std::size_t i = 0; i < rank.size(); ++i) rank[i] = i;
        std::stable_sort(rank.begin(), rank.end(), [&rows](std::size_t a, std::size_t b) {
            return rows[a].report.measured_error < rows[b].report.measured_error;
        });

        json ranking = json::array();
        for (std::size_t r = 0; r < rank.size(); ++r) {
            const Row& row = rows[rank[r]];
            const bool tied =
                r > 0 && std::abs(row.report.measured_error -
                                  rows[rank[r - 1]].report.measured_error) < 1e-12;
            ranking.push_back({{"strategy", row.strategy},
                               {"measured_error", row.report.measured_error},
                               {"tied_with_previous", tied}});
        }

        if (cmd.run.format == "json") {
            json records = json::array();
            for (const Row& row : rows) {
                json rec = analysis_record(h, row.strategy, row.report);
                rec["delta_vs_magnitude"] = row.report.measured_error - magnitude_error;
                if (row.coeff_norm) rec["coeff_one_norm"] = *row.coeff_norm;
                if (row.spectral_norm) rec["spectral_norm"] = *row.spectral_norm;
                records.push_back(std::move(rec));
            }
            out << json{{"app", "trotter-order"},
                        {"version", kVersion},
                        {"schema", "compare-records"},
                        {"records", records},
                        {"ranking", ranking}}
                       .dump(2)
                << "\n";
        } else {
            out << schema_header("compare-records")
                << "label,qubits,term_count,strategy,trotter_order,steps,time,"
                   "measured_error,delta_vs_magnitude,coeff_one_norm,spectral_norm,rank,"
                   "tied_with_previous\n";
            for (std::size_t i = 0; i < rows.size(); ++i) {
                const Row& row = rows[i];
                const std::size_t r =
                    static_cast<std::size_t>(std::find(rank.begin(), rank.end(), i) -
                                             rank.begin());
                const bool tied =
                    r > 0 && std::abs(row.report.measured_error -
                                      rows[rank[r - 1]].report.measured_error) < 1e-12;
                out << h.label << ',' << h.qubit_count << ',' << h.terms.size() << ','
                    << row.strategy << ',' << config.approximant_order << ','
                    << config.trotter_number << ',' << format_double(config.total_time) << ','
                    << format_double(row.report.measured_error) << ','
                    << format_double(row.report.measured_error - magnitude_error) << ','
                    << (row.coeff_norm ? format_double(*row.coeff_norm) : "") << ','
                    << (row.spectral_norm ? format_double(*row.spectral_norm) : "") << ','
                    << r << ',' << (tied ? "true" : "false") << '\n';
            }
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_sample(const SampleCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (cmd.count < 1) throw std::runtime_error("--count must be at least 1");
        const QubitHamiltonian h = prepared_input(cmd.input, cmd.run);
        const std::size_t n = h.terms.size();
        const TimedSetup setup = setup_ground_and_time(h, cmd.run);
        const TrotterConfig config{setup.total_time, cmd.run.steps, cmd.run.trotter_order};
        const double dt = config.step_size();
        const bool spectral = cmd.run.norm == NormKind::spectral;

        // Draw every permutation up front so the stream is seed-deterministic,
        // then evaluate in parallel.
        std::vector<std::size_t> perms(cmd.count * n);
        RandomPermutations stream(n, cmd.run.seed);
        for (std::uint64_t s = 0; s < cmd.count; ++s) {
            const auto& p = stream.next();
            std::copy(p.begin(), p.end(), perms.begin() + static_cast<std::ptrdiff_t>(s * n));
        }

        std::vector<double> errors(cmd.count);
        std::vector<double> norms(cmd.count);
        parallel_index_range(0, cmd.count, cmd.run.threads,
                             [&](std::uint64_t begin, std::uint64_t end) {
                                 QubitHamiltonian local = h;
                                 for (std::uint64_t s = begin; s < end; ++s) {
                                     for (std::size_t k = 0; k < n; ++k) {
                                         local.terms[k] = h.terms[perms[s * n + k]];
                                     }
                                     const Statevector evolved =
                                         trotter_apply(setup.ground.state, local, config);
                                     errors[s] = phase_error(setup.ground, evolved,
                                                             config.total_time);
                                     const ErrorOperator v = build_error_operator(local, dt);
                                     norms[s] = operator_norm(
                                         v, spectral ? NormKind::spectral
                                                     : NormKind::coeff_one_norm);
                                 }
                             });

        std::ofstream rows_file;
        std::ostream* rows = nullptr;
        if (!cmd.rows_path.empty()) {
            rows_file.open(cmd.rows_path, std::ios::trunc);
            if (!rows_file) throw std::runtime_error("cannot write '" + cmd.rows_path + "'");
            rows = &rows_file;
        } else if (cmd.run.format == "csv") {
            rows = &out;
        }
        if (rows != nullptr) {
            *rows << schema_header("sample-rows")
                  << (spectral ? "sample_id,error,spectral_norm\n"
                               : "sample_id,error,coeff_one_norm\n");
            for (std::uint64_t s = 0; s < cmd.count; ++s) {
                *rows << s << ',' << format_double(errors[s]) << ',' << format_double(norms[s])
                      << '\n';
            }
        }

        // Joint (norm, error) histogram for correlation plots.
        const auto [emin_it, emax_it] = std::minmax_element(errors.begin(), errors.end());
        const auto [nmin_it, nmax_it] = std::minmax_element(norms.begin(), norms.end());
        const double emin = *emin_it, emax = *emax_it, nmin = *nmin_it, nmax = *nmax_it;
        const int bins = cmd.bins;
        std::map<std::pair<int, int>, std::uint64_t> cells;
        for (std::uint64_t s = 0; s < cmd.count; ++s) {
            auto bin_of = [bins](double v, double lo, double hi) {
                if (hi <= lo) return 0;
                const int b = static_cast<int>((v - lo) / (hi - lo) * bins);
                return std::clamp(b, 0, bins - 1);
            };
            ++cells[{bin_of(norms[s], nmin, nmax), bin_of(errors[s], emin, emax)}];
        }
        json cell_list = json::array();
        for (const auto& [key, count] : cells) {
            cell_list.push_back({key.first, key.second, count});
        }
        json summary{{"app", "trotter-order"},
                     {"version", kVersion},
                     {"schema", "sample-summary"},
                     {"label", h.label},
                     {"qubits", h.qubit_count},
                     {"term_count", n},
                     {"count", cmd.count},
                     {"seed", cmd.run.seed},
                     {"trotter_order", config.approximant_order},
                     {"steps", config.trotter_number},
                     {"time", config.total_time},
                     {"norm_kind", spectral ? "spectral" : "coeff_one_norm"},
                     {"error_range", {emin, emax}},
                     {"norm_range", {nmin, nmax}},
                     {"histogram", {{"bins", bins}, {"cells", cell_list}}}};
        if (!cmd.summary_path.empty()) {
            std::ofstream file(cmd.summary_path, std::ios::trunc);
            if (!file) throw std::runtime_error("cannot write '" + cmd.summary_path + "'");
            file << summary.dump(2) << "\n";
        } else if (cmd.run.format == "json") {
            out << summary.dump(2) << "\n";
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_color_stats(const ColorStatsCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        json records = json::array();
        std::ostringstream csv;
        csv << schema_header("color-stats")
            << "label,terms,qubits,set_count,ratio,mean_size,stddev_size\n";
        for (const std::string& input : cmd.inputs) {
            const QubitHamiltonian h = prepared_input(input, cmd.run);
            const Coloring coloring =
                greedy_color(build_graph(h), ColoringStrategy::independent_set);
            const ColoringStats stats = coloring_stats(coloring);
            csv << h.label << ',' << h.terms.size() << ',' << h.qubit_count << ','
                << stats.set_count << ',' << format_double(stats.sets_per_term_ratio) << ','
                << format_double(stats.mean_size) << ',' << format_double(stats.stddev_size)
                << '\n';
            records.push_back({{"label", h.label},
                               {"terms", h.terms.size()},
                               {"qubits", h.qubit_count},
                               {"set_count", stats.set_count},
                               {"ratio", stats.sets_per_term_ratio},
                               {"mean_size", stats.mean_size},
                               {"stddev_size", stats.stddev_size}});
        }
        if (cmd.run.format == "json") {
            out << json{{"app", "trotter-order"},
                        {"version", kVersion},
                        {"schema", "color-stats"},
                        {"records", records}}
                       .dump(2)
                << "\n";
        } else {
            out << csv.str();
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_error_op(const ErrorOpCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const QubitHamiltonian h = prepared_input(cmd.input, cmd.run);
        const double t = resolve_time(h, cmd.run);
        const double dt = t / cmd.run.steps;
        const OrderingStrategy strategy = strategy_from_name(cmd.strategy);
        const OrderingResult result = apply_strategy(h, strategy, dt, cmd.run.norm);
        const ErrorOperator v = build_error_operator(result.ordered, dt);

        json record{{"label", h.label},
                    {"order_strategy", cmd.strategy},
                    {"dt", dt},
                    {"coeff_one_norm", operator_norm(v, NormKind::coeff_one_norm)},
                    {"spectral_norm", nullptr},
                    {"term_count", v.terms.size()}};
        if (cmd.spectral || cmd.run.norm == NormKind::spectral) {
            record["spectral_norm"] = operator_norm(v, NormKind::spectral);
        }
        out << record.dump(2) << "\n";
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_simulate(const SimulateCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        const QubitHamiltonian h = prepared_input(cmd.input, cmd.run);
        const TimedSetup setup = setup_ground_and_time(h, cmd.run);
        const TrotterConfig config{setup.total_time, cmd.run.steps, cmd.run.trotter_order};
        const OrderingStrategy strategy = strategy_from_name(cmd.strategy);
        const OrderingResult result =
            apply_strategy(h, strategy, config.step_size(), cmd.run.norm);
        TrotterErrorReport report =
            measure_trotter_error(result.ordered, config, &setup.ground);
        report.permutation = result.permutation;
        if (report.overlap_magnitude < 0.999) {
            err << "warning: ground-state overlap " << report.overlap_magnitude
                << " is below 0.999; the phase estimate is noisy\n";
        }
        if (cmd.run.format == "json") {
            json rec = analysis_record(h, cmd.strategy, report);
            rec["permutation"] = report.permutation;
            out << rec.dump(2) << "\n";
        } else {
            out << schema_header("simulate-record")
                << "label,qubits,term_count,strategy,trotter_order,steps,time,"
                   "measured_error,estimated_energy,exact_energy,overlap\n";
            out << h.label << ',' << h.qubit_count << ',' << h.terms.size() << ','
                << cmd.strategy << ',' << config.approximant_order << ','
                << config.trotter_number << ',' << format_double(config.total_time) << ','
                << format_double(report.measured_error) << ','
                << format_double(report.estimated_energy) << ','
                << format_double(report.exact_energy) << ','
                << format_double(report.overlap_magnitude) << '\n';
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

int cmd_fixtures(const FixturesCommand& cmd, std::ostream& out, std::ostream& err) {
    try {
        if (!cmd.dump.empty()) {
            out << serialize(builtin_fixture(cmd.dump));
            return kOk;
        }
        if (cmd.run.format == "json") {
            json list = json::array();
            for (const std::string& name : builtin_fixture_names()) {
                const QubitHamiltonian h = builtin_fixture(name);
                list.push_back(
                    {{"name", name}, {"qubits", h.qubit_count}, {"terms", h.terms.size()}});
            }
            out << list.dump(2) << "\n";
        } else {
            out << schema_header("fixtures") << "name,qubits,terms\n";
            for (const std::string& name : builtin_fixture_names()) {
                const QubitHamiltonian h = builtin_fixture(name);
                out << name << ',' << h.qubit_count << ',' << h.terms.size() << '\n';
            }
        }
        return kOk;
    } catch (...) {
        return map_exception(err);
    }
}

namespace {

void add_run_options(CLI::App* sub, RunOptions& run, std::string* time_text) {
    sub->add_option("--format", run.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--seed", run.seed, "Random seed")->capture_default_str();
    sub->add_option("--time", *time_text,
                    "Total evolution time: 'auto' (evolution-time rule) or a value")
        ->capture_default_str();
    sub->add_option("--reference-energy", run.reference_energy,
                    "Reference energy for the auto evolution time");
    sub->add_option("--steps", run.steps, "Trotter number N_T")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sub->add_option("--trotter-order", run.trotter_order, "Trotter-Suzuki order")
        ->check(CLI::IsMember({1, 2}))
        ->capture_default_str();
    sub->add_option_function<std::string>(
           "--norm", [&run](const std::string& v) { run.norm = norm_from_name(v); },
           "Error-operator norm: coeff | spectral")
        ->check(CLI::IsMember({"coeff", "spectral"}));
    sub->add_option("--threads", run.threads, "Worker threads (0 = auto)")
        ->capture_default_str();
    sub->add_flag("--active-only", run.active_only,
                  "Factor out the totally commuting set and keep the active part");
}

void finish_time(RunOptions& run, const std::string& time_text) {
    if (time_text.empty() || time_text == "auto") {
        run.time.reset();
    } else {
        run.time = std::stod(time_text);
    }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Trotter-ordering analysis for qubit Hamiltonians"};
    app.set_version_flag("--version", "trotter-order v" + std::string(kVersion));
    app.require_subcommand(1);

    OrderCommand order_cmd;
    EnumerateCommand enum_cmd;
    CompareCommand compare_cmd;
    SampleCommand sample_cmd;
    ColorStatsCommand color_cmd;
    ErrorOpCommand errop_cmd;
    SimulateCommand sim_cmd;
    FixturesCommand fixtures_cmd;
    std::string times[8];

    auto* order_sub = app.add_subcommand("order", "Reorder a Hamiltonian with a strategy");
    order_sub->add_option("input", order_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    order_sub->add_option("--strategy", order_cmd.strategy, "Ordering strategy")
        ->capture_default_str();
    order_sub->add_option("-o,--out", order_cmd.output_path,
                          "Output file (writes <out>.perm.json sidecar)");
    add_run_options(order_sub, order_cmd.run, &times[0]);

    auto* enum_sub =
        app.add_subcommand("enumerate", "Exhaustively score every ordering of the active part");
    enum_sub->add_option("input", enum_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    enum_sub->add_option("--cap", enum_cmd.cap, "Maximum active term count")
        ->capture_default_str();
    enum_sub->add_option("--bins", enum_cmd.bins, "CDF bins")->capture_default_str();
    enum_sub->add_option("--threshold", enum_cmd.thresholds,
                         "Error thresholds for fraction reporting");
    enum_sub->add_option("--out", enum_cmd.rows_path, "Per-ordering CSV rows file");
    enum_sub->add_option("--summary", enum_cmd.summary_path, "Summary JSON file");
    enum_sub->add_option("--checkpoint", enum_cmd.checkpoint_path,
                         "Resumable progress file (requires --out)");
    add_run_options(enum_sub, enum_cmd.run, &times[1]);

    auto* compare_sub = app.add_subcommand("compare", "Measure strategies side by side");
    compare_sub->add_option("input", compare_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    compare_sub->add_option("--strategies", compare_cmd.strategies, "Strategy names")
        ->delimiter(',');
    compare_sub->add_flag("--with-norms", compare_cmd.with_norms,
                          "Also report error-operator norms");
    add_run_options(compare_sub, compare_cmd.run, &times[2]);

    auto* sample_sub = app.add_subcommand("sample", "Score random orderings");
    sample_sub->add_option("input", sample_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    sample_sub->add_option("--count", sample_cmd.count, "Number of samples")
        ->capture_default_str();
    sample_sub->add_option("--bins", sample_cmd.bins, "Histogram bins per axis")
        ->capture_default_str();
    sample_sub->add_option("--out", sample_cmd.rows_path, "Per-sample CSV rows file");
    sample_sub->add_option("--summary", sample_cmd.summary_path, "Histogram JSON file");
    add_run_options(sample_sub, sample_cmd.run, &times[3]);

    auto* color_sub = app.add_subcommand("color-stats", "Commuting-set statistics per input");
    color_sub->add_option("inputs", color_cmd.inputs, "Hamiltonian files or fixture:<name>")
        ->required();
    add_run_options(color_sub, color_cmd.run, &times[4]);

    auto* errop_sub = app.add_subcommand("error-op", "Build the Trotter error operator");
    errop_sub->add_option("input", errop_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    errop_sub->add_option("--strategy", errop_cmd.strategy, "Ordering strategy")
        ->capture_default_str();
    errop_sub->add_flag("--spectral", errop_cmd.spectral, "Also report the spectral norm");
    add_run_options(errop_sub, errop_cmd.run, &times[5]);

    auto* sim_sub = app.add_subcommand("simulate", "Measure the Trotter error of one ordering");
    sim_sub->add_option("input", sim_cmd.input, "Hamiltonian file or fixture:<name>")
        ->required();
    sim_sub->add_option("--strategy", sim_cmd.strategy, "Ordering strategy")
        ->capture_default_str();
    add_run_options(sim_sub, sim_cmd.run, &times[6]);

    auto* fixtures_sub = app.add_subcommand("fixtures", "List or dump built-in Hamiltonians");
    fixtures_sub->add_option("--dump", fixtures_cmd.dump, "Print one fixture as a file");
    add_run_options(fixtures_sub, fixtures_cmd.run, &times[7]);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (order_sub->parsed()) {
            finish_time(order_cmd.run, times[0]);
            return cmd_order(order_cmd, std::cout, std::cerr);
        }
        if (enum_sub->parsed()) {
            finish_time(enum_cmd.run, times[1]);
            return cmd_enumerate(enum_cmd, std::cout, std::cerr);
        }
        if (compare_sub->parsed()) {
            finish_time(compare_cmd.run, times[2]);
            return cmd_compare(compare_cmd, std::cout, std::cerr);
        }
        if (sample_sub->parsed()) {
            finish_time(sample_cmd.run, times[3]);
            return cmd_sample(sample_cmd, std::cout, std::cerr);
        }
        if (color_sub->parsed()) {
            finish_time(color_cmd.run, times[4]);
            return cmd_color_stats(color_cmd, std::cout, std::cerr);
        }
        if (errop_sub->parsed()) {
            finish_time(errop_cmd.run, times[5]);
            return cmd_error_op(errop_cmd, std::cout, std::cerr);
        }
        if (sim_sub->parsed()) {
            finish_time(sim_cmd.run, times[6]);
            return cmd_simulate(sim_cmd, std::cout, std::cerr);
        }
        if (fixtures_sub->parsed()) {
            finish_time(fixtures_cmd.run, times[7]);
            return cmd_fixtures(fixtures_cmd, std::cout, std::cerr);
        }
    } catch (...) {
        return map_exception(std::cerr);
    }
    return kInputError;
}

}  // namespace trotter::cli
