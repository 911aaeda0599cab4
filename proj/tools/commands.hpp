#pragma once

// Subcommands of the `weylsep` executable. Kept in a header so the test
// suite can drive the whole command line in-process.

#include "weylsep/weylsep.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <array>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifndef WEYLSEP_VERSION
#define WEYLSEP_VERSION "0.0.0"
#endif

namespace weylsep::cli {

using nlohmann::json;

enum ExitCode : int { kSuccess = 0, kNumericalFailure = 1, kUsageError = 2 };

// Shortest text that parses back to the same double, always with '.' as the
// decimal separator.
inline std::string format_double(double v) {
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), ptr);
}

// Grid coordinate from + i*step, trimmed to 12 significant digits so that
// 0.1 + 7*0.01 prints as 0.17.
inline double grid_point(double from, double step, long long i) {
    std::array<char, 64> buf{};
    const double raw = from + static_cast<double>(i) * step;
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), raw, std::chars_format::general, 12);
    double out = raw;
    std::from_chars(buf.data(), ptr, out);
    return out;
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct InputOptions {
    std::string input_path;
    std::string state;
};

struct Loaded {
    DensityMatrix rho;
    json descriptor;
};

inline Loaded load_input(const InputOptions& opts) {
    if (opts.input_path.empty() == opts.state.empty()) throw ParseError("give exactly one of --input FILE or --state SPEC");
    if (!opts.state.empty()) return {make_state(opts.state), json{{"state", opts.state}}};
    return {load_state(opts.input_path), json{{"file", opts.input_path}}};
}

inline json report_header(const std::string& command, const json& input, bool timestamp) {
    json j;
    j["tool"] = "weylsep";
    j["version"] = WEYLSEP_VERSION;
    j["command"] = command;
    j["input"] = input;
    if (timestamp) j["timestamp"] = utc_timestamp();
    return j;
}

inline json verdict_json(const Verdict& v) {
    return {{"criterion", to_string(v.criterion)},
            {"outcome", verdict_token(v)},
            {"statistic", v.statistic},
            {"threshold", v.threshold}};
}

inline json coefficient_list(const ComplexVector& coeffs, int d) {
    json out = json::array();
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
        const WeylIndex idx = WeylIndex::from_flat(d, static_cast<int>(k) + 1);
        out.push_back({{"n", idx.n()}, {"m", idx.m()}, {"re", coeffs(k).real()}, {"im", coeffs(k).imag()}});
    }
    return out;
}

inline json top_values(const std::vector<double>& values, std::size_t count) {
    json out = json::array();
    for (std::size_t i = 0; i < values.size() && i < count; ++i) out.push_back(values[i]);
    return out;
}

inline json dims_json(const std::vector<int>& dims) { return json(dims); }

// ---------------------------------------------------------------------------

inline int cmd_basis(int d, std::ostream& out) {
    const WeylBasis basis = weyl_basis(d);
    json arr = json::array();
    for (int flat = 0; flat < d * d; ++flat) {
        const WeylIndex idx = WeylIndex::from_flat(d, flat);
        json j = to_json(MatrixFile{{d}, basis[idx]});
        j["index"] = {idx.n(), idx.m()};
        arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
    return kSuccess;
}

inline int cmd_decompose(const InputOptions& in, bool timestamp, std::ostream& out) {
    const Loaded loaded = load_input(in);
    const DensityMatrix& rho = loaded.rho;
    json report = report_header("decompose", loaded.descriptor, timestamp);
    report["dims"] = dims_json(rho.dims());
    if (rho.dims().size() == 1) {
        const WeylBasis basis = weyl_basis(rho.dim());
        const BlochVector v = decompose(rho, basis);
        report["bloch"] = {{"coefficients", coefficient_list(v.coeffs(), v.d())},
                           {"length", bloch_length(v)},
                           {"max_length", max_bloch_length(v.d())},
                           {"purity_from_length", purity_from_length(v)},
                           {"symmetry_violation", v.symmetry_violation()}};
        report["reconstruction_residual"] = max_abs(reconstruct(v, basis) - rho.matrix());
    } else if (rho.dims().size() == 2) {
        const BipartiteDecomposition dec = decompose_bipartite(rho);
        const std::vector<double> sv = singular_values(dec.M);
        double kf = 0.0;
        for (double s : sv) kf += s;
        report["alpha"] = {{"coefficients", coefficient_list(dec.alpha, dec.dA)}, {"length", dec.alpha.norm()}};
        report["beta"] = {{"coefficients", coefficient_list(dec.beta, dec.dB)}, {"length", dec.beta.norm()}};
        report["correlation_matrix"] = {{"rows", dec.M.rows()}, {"cols", dec.M.cols()}, {"entries", matrix_entries_json(dec.M)}};
        report["kyfan"] = kf;
        report["threshold"] = separability_threshold(dec.dA, dec.dB);
        report["singular_values"] = top_values(sv, sv.size());
        report["symmetry_violation"] = dec.correlation_symmetry_violation();
        report["reconstruction_residual"] = max_abs(reconstruct_bipartite(dec) - rho.matrix());
    } else {
        throw DimensionError("decompose: only one or two subsystems are supported");
    }
    out << report.dump(2) << '\n';
    return kSuccess;
}

inline int cmd_check_sep(const InputOptions& in, bool timestamp, std::ostream& out) {
    const Loaded loaded = load_input(in);
    const DensityMatrix& rho = loaded.rho;
    if (!rho.is_bipartite()) throw DimensionError("check-sep: input must have exactly two subsystems");
    const BipartiteDecomposition dec = decompose_bipartite(rho);
    const Verdict weyl = kyfan_verdict(dec);
    const Verdict ppt = ppt_criterion(rho);
    const std::vector<double> sv = singular_values(dec.M);

    json report = report_header("check-sep", loaded.descriptor, timestamp);
    report["dims"] = dims_json(rho.dims());
    json ppt_json = verdict_json(ppt);
    ppt_json["partial_transpose_positive"] = ppt.statistic >= -tol::psd;
    ppt_json["ppt_status"] = ppt.statistic >= -tol::psd ? "PASS" : "FAIL";
    ppt_json["conclusive"] = rho.dims()[0] * rho.dims()[1] <= 6;
    report["criteria"] = json::array({verdict_json(weyl), ppt_json});
    report["decomposition"] = {{"alpha_length", dec.alpha.norm()},
                               {"beta_length", dec.beta.norm()},
                               {"kyfan", weyl.statistic},
                               {"top_singular_values", top_values(sv, 5)}};
    out << report.dump(2) << '\n';
    return kSuccess;
}

inline int cmd_check_tele(const InputOptions& in, SearchBudget budget, std::uint64_t seed, bool timestamp, std::ostream& out) {
    const Loaded loaded = load_input(in);
    const DensityMatrix& rho = loaded.rho;
    if (!rho.is_bipartite() || rho.dims()[0] != rho.dims()[1]) {
        throw DimensionError("check-tele: input must be a d x d bipartite state");
    }
    const int d = rho.dims()[0];
    const FefEstimate est = fef_search(rho, budget, seed);
    const Verdict verdict = teleportation_verdict(est, d);

    json report = report_header("check-tele", loaded.descriptor, timestamp);
    report["dims"] = dims_json(rho.dims());
    report["seed"] = seed;
    report["budget"] = {{"starts", budget.starts}, {"sweeps", budget.sweeps}};
    report["criteria"] = json::array({verdict_json(verdict)});
    report["search"] = {{"best_mean_value", verdict.statistic},
                        {"fef_lower_bound", est.value},
                        {"optimal_fidelity", optimal_fidelity(est.value, d)},
                        {"classical_fidelity", 2.0 / (d + 1.0)},
                        {"best_u", to_json(MatrixFile{{d}, est.best_u})["entries"]},
                        {"evaluations", est.evaluations},
                        {"converged", est.converged}};
    out << report.dump(2) << '\n';
    return kSuccess;
}

struct ScanOptions {
    std::string family;
    int d = 3;
    std::vector<double> direction{1.0, 1.0, 1.0};
    double from = 0.0;
    double to = 1.0;
    double step = 0.01;
    bool ppt = false;
    std::string output;
};

inline int cmd_scan(const ScanOptions& opts, std::ostream& out) {
    if (!(opts.step > 0.0) || !(opts.to >= opts.from)) {
        throw DomainError("scan: empty range (need step > 0 and to >= from)");
    }
    if (opts.family != "isotropic" && opts.family != "bell-diagonal") {
        throw DomainError("scan: family must be 'isotropic' or 'bell-diagonal'");
    }
    if (opts.family == "bell-diagonal" && opts.direction.size() != 3) throw DomainError("scan: --direction needs three values");
    const long long count = static_cast<long long>(std::floor((opts.to - opts.from) / opts.step + 1e-9)) + 1;

    std::ostringstream csv;
    csv << "param,kyfan,threshold,verdict" << (opts.ppt ? ",ppt_min_eig" : "") << '\n';
    for (long long i = 0; i < count; ++i) {
        const double s = grid_point(opts.from, opts.step, i);
        const DensityMatrix rho = opts.family == "isotropic"
                                      ? isotropic(opts.d, s)
                                      : bell_diagonal(s * opts.direction[0], s * opts.direction[1], s * opts.direction[2]);
        const Verdict v = weyl_separability_criterion(rho);
        csv << format_double(s) << ',' << format_double(v.statistic) << ',' << format_double(v.threshold) << ','
            << verdict_token(v);
        if (opts.ppt) csv << ',' << format_double(ppt_criterion(rho).statistic);
        csv << '\n';
    }
    if (opts.output.empty() || opts.output == "-") {
        out << csv.str();
    } else {
        std::ofstream file(opts.output, std::ios::binary);
        if (!file) throw ParseError("cannot write '" + opts.output + "'");
        file << csv.str();
    }
    return kSuccess;
}

// ---------------------------------------------------------------------------

inline const char* state_grammar_help() {
    return "State descriptors (--state): family:key=value,... with vector values comma-joined.\n"
           "  isotropic:d=3,p=0.3         bell-diagonal:t=0.2,0.2,0.2   max-entangled:d=4\n"
           "  ppt-3x3                     example4:p=0.8\n"
           "  random-mixed:dA=2,dB=3,rank=2,seed=1   random-mixed:d=4,rank=4,seed=1\n"
           "  random-product-pure:dA=2,dB=3,seed=1   random-separable:dA=3,dB=3,k=4,seed=1\n"
           "Exit codes: 0 success, 1 numerical failure, 2 usage or input error.";
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weyl-basis entanglement and teleportation-usefulness checks", "weylsep"};
    app.footer(state_grammar_help());
    app.require_subcommand(1);
    app.set_version_flag("--version", WEYLSEP_VERSION);

    bool no_timestamp = false;
    int basis_d = 0;
    InputOptions input;
    SearchBudget budget;
    std::uint64_t seed = 0;
    ScanOptions scan;

    auto* basis = app.add_subcommand("basis", "Print the Weyl operator basis as JSON matrices");
    basis->add_option("--d", basis_d, "Dimension (>= 2)")->required();

    auto add_input = [&](CLI::App* sub) {
        auto* file = sub->add_option("--input,-i", input.input_path, "Matrix file (weylsep-matrix-v1 JSON)");
        auto* state = sub->add_option("--state,-s", input.state, "State descriptor, see footer");
        file->excludes(state);
        sub->add_flag("--no-timestamp", no_timestamp, "Omit the timestamp field from the report");
    };

    auto* decompose_cmd = app.add_subcommand("decompose", "Weyl Bloch decomposition of a state");
    add_input(decompose_cmd);

    auto* sep = app.add_subcommand("check-sep", "Ky Fan norm separability criterion plus PPT oracle");
    add_input(sep);

    auto* tele = app.add_subcommand("check-tele", "Search for a detection operator certifying teleportation usefulness");
    add_input(tele);
    tele->add_option("--seed", seed, "Seed for the Haar-random search starts")->required();
    tele->add_option("--starts", budget.starts, "Number of search starts")->check(CLI::PositiveNumber);
    tele->add_option("--sweeps", budget.sweeps, "Refinement sweeps per start")->check(CLI::NonNegativeNumber);

    auto* scan_cmd = app.add_subcommand("scan", "Sweep a state family and write the criterion as CSV");
    scan_cmd->add_option("--family", scan.family, "isotropic | bell-diagonal")->required();
    scan_cmd->add_option("--d", scan.d, "Local dimension (isotropic)");
    scan_cmd->add_option("--direction", scan.direction, "Ray t = s * direction (bell-diagonal)")->delimiter(',')->expected(3);
    scan_cmd->add_option("--from", scan.from, "First parameter value");
    scan_cmd->add_option("--to", scan.to, "Last parameter value");
    scan_cmd->add_option("--step", scan.step, "Grid step");
    scan_cmd->add_flag("--ppt", scan.ppt, "Append the partial-transpose minimum eigenvalue column");
    scan_cmd->add_option("--out,-o", scan.output, "Output CSV path (stdout if omitted)");
    scan_cmd->add_flag("--no-timestamp", no_timestamp, "Accepted for symmetry; CSV output carries no timestamp");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForVersion& e) {
        out << WEYLSEP_VERSION << '\n';
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        if (*basis) return cmd_basis(basis_d, out);
        if (*decompose_cmd) return cmd_decompose(input, !no_timestamp, out);
        if (*sep) return cmd_check_sep(input, !no_timestamp, out);
        if (*tele) return cmd_check_tele(input, budget, seed, !no_timestamp, out);
        if (*scan_cmd) return cmd_scan(scan, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kNumericalFailure;
    }
    return kUsageError;
}

} // namespace weylsep::cli
