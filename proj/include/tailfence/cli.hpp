#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error,
// 3 estimator precondition violated, 4 internal consistency failure.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "distributions.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "fences.hpp"
#include "io.hpp"
#include "monte_carlo.hpp"

namespace tailfence::cli {

enum ExitCode : int { Ok = 0, Usage = 1, Data = 2, Precondition = 3, Internal = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// "a,b,c" or "start:stop:step" (inclusive of stop up to rounding).
inline std::vector<double> parse_grid(const std::string& text)
{
    auto num = [&](const std::string& s) {
        const auto v = io::parse_number(s);
        if (!v || !std::isfinite(*v))
            throw UsageError("bad number '" + s + "' in grid '" + text + "'");
        return *v;
    };
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ':');)
            parts.push_back(part);
        if (parts.size() != 3)
            throw UsageError("range grid must be start:stop:step, got '" + text + "'");
        const double start = num(parts[0]), stop = num(parts[1]), step = num(parts[2]);
        if (!(step > 0.0) || stop < start)
            throw UsageError("range grid needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t k = 0; k < count; ++k)
            grid.push_back(std::round((start + static_cast<double>(k) * step) * 1e12) / 1e12);
    } else {
        std::stringstream ss(text);
        for (std::string part; std::getline(ss, part, ',');)
            grid.push_back(num(part));
    }
    if (grid.empty())
        throw UsageError("empty grid");
    return grid;
}

template <class T>
std::vector<T> parse_list(const std::string& text)
{
    std::vector<T> out;
    std::stringstream ss(text);
    for (std::string part; std::getline(ss, part, ',');) {
        const auto v = io::parse_number(part);
        if (!v || !std::isfinite(*v))
            throw UsageError("bad list element '" + part + "'");
        if constexpr (std::is_integral_v<T>) {
            if (*v < 0 || *v != std::floor(*v))
                throw UsageError("expected a non-negative integer, got '" + part + "'");
        }
        out.push_back(static_cast<T>(*v));
    }
    if (out.empty())
        throw UsageError("empty list");
    return out;
}

struct DistFlags {
    std::string name;
    std::optional<double> xi;
    std::optional<double> alpha;
    std::optional<double> lambda;
};

inline DistributionSpec resolve_distribution(const DistFlags& f)
{
    const auto fam = parse_family(f.name);
    if (!fam)
        throw UsageError("unknown distribution '" + f.name + "'");
    std::optional<double> shape1;
    switch (*fam) {
    case Family::ParetoPos:
        if (f.xi && f.alpha)
            throw UsageError("pareto takes --xi or --alpha (xi = 1/alpha), not both");
        if (f.alpha) {
            if (!(*f.alpha > 0.0))
                throw UsageError("--alpha must be > 0");
            shape1 = 1.0 / *f.alpha;
        } else {
            shape1 = f.xi;
        }
        break;
    case Family::ParetoNeg:
        if (f.alpha)
            throw UsageError("pareto-neg takes --xi, not --alpha");
        shape1 = f.xi;
        break;
    default:
        if (f.xi)
            throw UsageError(f.name + " takes no --xi");
        shape1 = f.alpha;
    }
    if (f.lambda && *fam != Family::ExpFrechet)
        throw UsageError(f.name + " takes no --lambda");
    return DistributionSpec::make(*fam, shape1, f.lambda);
}

class Output {
public:
    Output(const std::string& path, std::ostream& stdout_stream)
    {
        if (path == "-") {
            os_ = &stdout_stream;
        } else {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_)
                throw DataError(path + ": cannot open for writing");
            os_ = file_.get();
        }
    }
    std::ostream& stream() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

inline void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << '\n'; }

/// Runs one command line; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Asymmetric p-fences, outside-value probabilities and tail-index estimation",
                 "tailfence"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all");

    std::string format = "csv";
    std::string out_path = "-";
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out_path, "Output file, '-' for standard output");
    };

    std::string input;
    std::optional<std::string> column;
    auto add_input = [&](CLI::App* sub) {
        sub->add_option("--input", input, "One-column text file, or CSV with --column")->required();
        sub->add_option("--column", column, "CSV column holding the observations");
    };

    // theory
    DistFlags dist_flags;
    std::string grid_text = "0.01:0.50:0.01";
    auto* theory = app.add_subcommand("theory", "Theoretical fences and outside probabilities");
    theory->add_option("--dist", dist_flags.name, "Distribution family")->required();
    theory->add_option("--xi", dist_flags.xi, "Pareto shape xi");
    theory->add_option("--alpha", dist_flags.alpha, "Shape alpha");
    theory->add_option("--lambda", dist_flags.lambda, "Exponentiated Frechet lambda");
    theory->add_option("--p-grid", grid_text, "Comma list or start:stop:step");
    add_output(theory);

    // fences
    double p = 0.25;
    auto* fences_cmd = app.add_subcommand("fences", "Empirical fences and outside values");
    add_input(fences_cmd);
    fences_cmd->add_option("--p", p, "Fence level in (0, 0.5]");
    add_output(fences_cmd);

    // estimate
    std::string model = "auto";
    auto* estimate = app.add_subcommand("estimate", "Tail-index estimation");
    add_input(estimate);
    estimate->add_option("--model", model, "pareto, frechet, both or auto")
        ->check(CLI::IsMember({"pareto", "frechet", "both", "auto"}));
    estimate->add_option("--p", p, "Fence level in (0, 0.5)");
    add_output(estimate);

    // classify
    auto* classify = app.add_subcommand("classify", "Rank catalog families by p_{A,R,0.25}");
    add_input(classify);
    add_output(classify);

    // simulate
    std::string family = "both";
    std::string alphas = "0.5,1,2";
    std::string ns = "30,100,1000,10000";
    std::size_t reps = 1000;
    std::optional<std::string> preset;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    auto* simulate = app.add_subcommand("simulate", "Estimator simulation study");
    simulate->add_option("--family", family, "pareto, frechet or both")
        ->check(CLI::IsMember({"pareto", "frechet", "both"}));
    simulate->add_option("--alpha", alphas, "Comma list of alpha values");
    simulate->add_option("--n", ns, "Comma list of sample sizes");
    auto* reps_opt = simulate->add_option("--reps", reps, "Replications per cell");
    simulate->add_option("--preset", preset, "desk (10^3 reps) or full (10^4 reps)")
        ->check(CLI::IsMember({"desk", "full"}))
        ->excludes(reps_opt);
    simulate->add_option("--p", p, "Fence level in (0, 0.5)");
    simulate->add_option("--seed", seed, "Random seed");
    simulate->add_option("--threads", threads, "Worker threads, 0 = all cores");
    add_output(simulate);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "tailfence: usage error: " << e.what() << '\n';
        return Usage;
    }

    try {
        if (theory->parsed()) {
            const auto dist = resolve_distribution(dist_flags);
            const auto grid = parse_grid(grid_text);
            const auto curve = outside_curve(dist, grid);
            Output o(out_path, out);
            if (format == "json")
                emit_json(o.stream(), io::theory_json(dist, curve));
            else
                io::write_theory_csv(o.stream(), curve);
        } else if (fences_cmd->parsed()) {
            detail::require_fence_level(p, "--p");
            const auto s = io::read_sample(input, column);
            const auto rep = empirical_fences(s, p);
            Output o(out_path, out);
            if (format == "json")
                emit_json(o.stream(), io::fences_json(rep));
            else
                io::write_fences_csv(o.stream(), rep);
        } else if (estimate->parsed()) {
            detail::require_estimator_level(p);
            const auto s = io::read_sample(input, column);
            std::vector<EstimationReport> reps_out;
            if (model == "pareto" || model == "both")
                reps_out.push_back(estimate_pareto_alpha(s, p));
            if (model == "frechet" || model == "both")
                reps_out.push_back(estimate_frechet_alpha(s, p));
            if (model == "auto")
                reps_out.push_back(estimate_alpha(select_model(s), s, p));
            Output o(out_path, out);
            if (format == "json")
                emit_json(o.stream(), io::estimates_json(reps_out));
            else
                io::write_estimates_csv(o.stream(), reps_out);
        } else if (classify->parsed()) {
            const auto s = io::read_sample(input, column);
            const auto rep = classify_tail(s);
            if (rep.coarse)
                err << "tailfence: warning: n < 20, plug-in frequency is coarse\n";
            Output o(out_path, out);
            if (format == "json")
                emit_json(o.stream(), io::classification_json(rep));
            else
                io::write_classification_csv(o.stream(), rep);
        } else if (simulate->parsed()) {
            if (preset)
                reps = *preset == "full" ? 10000 : 1000;
            std::vector<StudyConfig> configs;
            for (TailModel f : {TailModel::Pareto, TailModel::Frechet}) {
                if (family != "both" && family != model_name(f))
                    continue;
                configs.push_back({f, parse_list<double>(alphas), parse_list<std::size_t>(ns),
                                   reps, p, seed});
            }
            const auto report = run_study(configs, threads);
            Output o(out_path, out);
            if (format == "json")
                emit_json(o.stream(), io::study_json(report));
            else
                io::write_study_csv(o.stream(), report);
        }
    } catch (const UsageError& e) {
        err << "tailfence: usage error: " << e.what() << '\n';
        return Usage;
    } catch (const InvalidSpec& e) {
        err << "tailfence: usage error: " << e.what() << '\n';
        return Usage;
    } catch (const DomainError& e) {
        err << "tailfence: usage error: " << e.what() << '\n';
        return Usage;
    } catch (const DataError& e) {
        err << "tailfence: data error: " << e.what() << '\n';
        return Data;
    } catch (const PreconditionViolation& e) {
        err << "tailfence: precondition violated: " << e.what() << '\n';
        return Precondition;
    } catch (const std::exception& e) {
        err << "tailfence: internal error: " << e.what() << '\n';
        return Internal;
    }
    return Ok;
}

} // namespace tailfence::cli
