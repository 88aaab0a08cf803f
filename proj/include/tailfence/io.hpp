#pragma once

// Sample ingestion (one-column text, or CSV with a named column) and the
// CSV/JSON encodings of the module reports. CSV numbers carry 17 significant
// digits so that re-parsing reproduces every double exactly.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "empirical.hpp"
#include "errors.hpp"
#include "estimators.hpp"
#include "fences.hpp"
#include "monte_carlo.hpp"
#include "sample.hpp"

namespace tailfence::io {

// ---------------------------------------------------------------------------
// Numbers

inline std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::optional<double> parse_number(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    if (s.empty())
        return std::nullopt;
    if (s == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf")
        return std::numeric_limits<double>::infinity();
    if (s == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

// ---------------------------------------------------------------------------
// CSV

inline std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\n\r") == std::string_view::npos)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline void write_csv_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i)
            os << ',';
        os << csv_field(fields[i]);
    }
    os << '\n';
}

/// Splits one logical CSV record; quoted fields may contain separators,
/// doubled quotes and line breaks (pulled from `is` as needed).
inline std::vector<std::string> split_csv_record(std::string line, std::istream& is)
{
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0;; ++i) {
        if (i == line.size()) {
            if (quoted) {
                std::string next;
                if (!std::getline(is, next))
                    throw DataError("unterminated quoted CSV field");
                cur += '\n';
                line = std::move(next);
                i = static_cast<std::size_t>(-1);
                continue;
            }
            break;
        }
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    fields.push_back(std::move(cur));
    return fields;
}

inline std::vector<std::vector<std::string>> read_csv(std::istream& is)
{
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line == "\r")
            continue;
        rows.push_back(split_csv_record(line, is));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Sample ingestion

/// One value per line; '#' starts a comment; blank lines ignored.
inline std::vector<double> parse_column_text(std::istream& is, const std::string& source)
{
    std::vector<double> values;
    std::string line;
    for (std::size_t lineno = 1; std::getline(is, line); ++lineno) {
        std::string_view v(line);
        if (const auto hash = v.find('#'); hash != std::string_view::npos)
            v = v.substr(0, hash);
        if (v.find_first_not_of(" \t\r") == std::string_view::npos)
            continue;
        const auto x = parse_number(v);
        if (!x || !std::isfinite(*x))
            throw DataError(source + ":" + std::to_string(lineno) + ": cannot parse '" +
                            std::string(v) + "' as a finite number");
        values.push_back(*x);
    }
    return values;
}

/// CSV with a header row; takes the column named `column`.
inline std::vector<double> parse_csv_column(std::istream& is, const std::string& column,
                                            const std::string& source)
{
    std::string line;
    std::size_t lineno = 0;
    std::optional<std::size_t> col;
    std::vector<double> values;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty() || line == "\r" || line.front() == '#')
            continue;
        const auto fields = split_csv_record(line, is);
        if (!col) {
            for (std::size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == column)
                    col = i;
            if (!col)
                throw DataError(source + ":" + std::to_string(lineno) + ": no column named '" +
                                column + "'");
            continue;
        }
        if (*col >= fields.size())
            throw DataError(source + ":" + std::to_string(lineno) + ": missing column '" +
                            column + "'");
        const auto x = parse_number(fields[*col]);
        if (!x || !std::isfinite(*x))
            throw DataError(source + ":" + std::to_string(lineno) + ": cannot parse '" +
                            fields[*col] + "' as a finite number");
        values.push_back(*x);
    }
    return values;
}

inline Sample read_sample(const std::string& path, const std::optional<std::string>& column = {})
{
    std::ifstream in(path);
    if (!in)
        throw DataError(path + ": cannot open file");
    auto values = column ? parse_csv_column(in, *column, path) : parse_column_text(in, path);
    if (values.empty())
        throw DataError(path + ": no observations");
    return Sample(std::move(values));
}

// ---------------------------------------------------------------------------
// Theory curves

inline const std::vector<std::string> theory_columns = {"p",    "left_fence", "right_fence",
                                                        "p_al", "p_ar",       "method"};

inline void write_theory_csv(std::ostream& os, const std::vector<CurvePoint>& curve)
{
    write_csv_row(os, theory_columns);
    for (const auto& c : curve)
        write_csv_row(os, {format_number(c.fences.p), format_number(c.fences.left),
                           format_number(c.fences.right), format_number(c.probabilities.left),
                           format_number(c.probabilities.right),
                           std::string(method_name(c.probabilities.method))});
}

inline nlohmann::json theory_json(const DistributionSpec& dist, const std::vector<CurvePoint>& curve)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : curve)
        rows.push_back({{"p", c.fences.p},
                        {"left_fence", c.fences.left},
                        {"right_fence", c.fences.right},
                        {"p_al", c.probabilities.left.value()},
                        {"p_ar", c.probabilities.right.value()},
                        {"method", method_name(c.probabilities.method)}});
    return {{"distribution", dist.describe()}, {"rows", rows}};
}

// ---------------------------------------------------------------------------
// Empirical fences

inline std::string join_indices(const std::vector<std::size_t>& idx)
{
    std::string s;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i)
            s += ' ';
        s += std::to_string(idx[i]);
    }
    return s;
}

inline void write_fences_csv(std::ostream& os, const EmpiricalFenceReport& r)
{
    write_csv_row(os, {"p", "n", "left_fence", "right_fence", "p_hat_left", "p_hat_right",
                       "degenerate", "outside_left_idx", "outside_right_idx"});
    write_csv_row(os, {format_number(r.p), std::to_string(r.n), format_number(r.left_fence),
                       format_number(r.right_fence), format_number(r.p_hat_left),
                       format_number(r.p_hat_right), r.degenerate ? "true" : "false",
                       join_indices(r.outside_left_idx), join_indices(r.outside_right_idx)});
}

inline nlohmann::json fences_json(const EmpiricalFenceReport& r)
{
    return {{"p", r.p},
            {"n", r.n},
            {"left_fence", r.left_fence},
            {"right_fence", r.right_fence},
            {"p_hat_left", r.p_hat_left.value()},
            {"p_hat_right", r.p_hat_right.value()},
            {"degenerate", r.degenerate},
            {"outside_left_idx", r.outside_left_idx},
            {"outside_right_idx", r.outside_right_idx}};
}

// ---------------------------------------------------------------------------
// Estimation

inline void write_estimates_csv(std::ostream& os, const std::vector<EstimationReport>& reps)
{
    write_csv_row(os, {"model", "p", "alpha_hat", "r_fence_used", "p_hat_used", "n"});
    for (const auto& r : reps)
        write_csv_row(os, {std::string(model_name(r.model)), format_number(r.p),
                           format_number(r.alpha_hat), format_number(r.r_fence_used),
                           format_number(r.p_hat_used), std::to_string(r.n)});
}

inline nlohmann::json estimates_json(const std::vector<EstimationReport>& reps)
{
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : reps)
        rows.push_back({{"model", model_name(r.model)},
                        {"p", r.p},
                        {"alpha_hat", r.alpha_hat},
                        {"r_fence_used", r.r_fence_used},
                        {"p_hat_used", r.p_hat_used},
                        {"n", r.n}});
    return {{"estimates", rows}};
}

// ---------------------------------------------------------------------------
// Classification

inline void write_classification_csv(std::ostream& os, const ClassificationReport& r)
{
    write_csv_row(os, {"rank", "family", "alpha", "reference_p_ar", "distance", "p_hat_right_025",
                       "p_hat_left_025"});
    for (std::size_t i = 0; i < r.ranking.size(); ++i) {
        const auto& e = r.ranking[i];
        write_csv_row(os, {std::to_string(i + 1), e.label, format_number(e.alpha),
                           format_number(e.reference), format_number(e.distance),
                           format_number(r.p_hat_right_025), format_number(r.p_hat_left_025)});
    }
}

inline nlohmann::json classification_json(const ClassificationReport& r)
{
    nlohmann::json ranking = nlohmann::json::array();
    for (const auto& e : r.ranking) {
        nlohmann::json j = {{"family", e.label},
                            {"reference_p_ar", e.reference},
                            {"distance", e.distance}};
        j["alpha"] = std::isnan(e.alpha) ? nlohmann::json(nullptr) : nlohmann::json(e.alpha);
        ranking.push_back(std::move(j));
    }
    return {{"p_hat_right_025", r.p_hat_right_025},
            {"p_hat_left_025", r.p_hat_left_025},
            {"coarse", r.coarse},
            {"ranking", ranking}};
}

// ---------------------------------------------------------------------------
// Simulation study

inline const std::vector<std::string> study_columns = {
    "family", "alpha", "n", "mean_par", "sd_par", "mean_fr", "sd_fr", "better", "valid_reps"};

inline std::string better_name(const std::optional<TailModel>& b)
{
    return b ? std::string(model_name(*b)) : std::string("none");
}

inline void write_study_csv(std::ostream& os, const StudyReport& r)
{
    write_csv_row(os, study_columns);
    for (const auto& row : r.rows)
        write_csv_row(os, {std::string(model_name(row.family)), format_number(row.alpha),
                           std::to_string(row.n), format_number(row.mean_par),
                           format_number(row.sd_par), format_number(row.mean_fr),
                           format_number(row.sd_fr), better_name(row.better),
                           std::to_string(row.valid_reps)});
}

inline nlohmann::json study_json(const StudyReport& r)
{
    auto num = [](double v) { return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v); };
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"family", model_name(row.family)},
                        {"alpha", row.alpha},
                        {"n", row.n},
                        {"mean_par", num(row.mean_par)},
                        {"sd_par", num(row.sd_par)},
                        {"mean_fr", num(row.mean_fr)},
                        {"sd_fr", num(row.sd_fr)},
                        {"better", better_name(row.better)},
                        {"valid_reps", row.valid_reps},
                        {"reps", row.reps}});
    return {{"rows", rows}};
}

/// Inverse of write_study_csv (the `reps` field is not part of the CSV and is left 0).
inline StudyReport read_study_csv(std::istream& is)
{
    const auto rows = read_csv(is);
    if (rows.empty() || rows.front() != study_columns)
        throw DataError("study CSV: unexpected header");
    auto num = [](const std::string& s) {
        const auto v = parse_number(s);
        if (!v)
            throw DataError("study CSV: bad number '" + s + "'");
        return *v;
    };
    auto model = [](const std::string& s) -> std::optional<TailModel> {
        if (s == "pareto")
            return TailModel::Pareto;
        if (s == "frechet")
            return TailModel::Frechet;
        if (s == "none")
            return std::nullopt;
        throw DataError("study CSV: bad model '" + s + "'");
    };
    StudyReport out;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& f = rows[i];
        if (f.size() != study_columns.size())
            throw DataError("study CSV: row " + std::to_string(i) + " has wrong field count");
        const auto fam = model(f[0]);
        if (!fam)
            throw DataError("study CSV: missing family");
        out.rows.push_back({*fam, num(f[1]), static_cast<std::size_t>(std::stoull(f[2])),
                            num(f[3]), num(f[4]), num(f[5]), num(f[6]), model(f[7]),
                            static_cast<std::size_t>(std::stoull(f[8])), 0});
    }
    return out;
}

} // namespace tailfence::io
