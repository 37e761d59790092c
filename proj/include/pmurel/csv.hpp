// Plain CSV writing and the readers for the files the CLI consumes.
// Numbers are written with 17 significant digits so they round-trip.

#pragma once

#include "pmurel/errors.hpp"
#include "pmurel/exposure.hpp"
#include "pmurel/fitting.hpp"
#include "pmurel/fuzzy.hpp"
#include "pmurel/monte_carlo.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace pmurel {

inline std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
    [[nodiscard]] std::size_t row_count() const noexcept { return rows_.size(); }

    void add_row(std::vector<std::string> cells)
    {
        if (cells.size() != header_.size())
            throw std::logic_error("CSV row width does not match the header");
        rows_.push_back(std::move(cells));
    }

    void add_row(const std::vector<double>& values)
    {
        std::vector<std::string> cells;
        cells.reserve(values.size());
        for (double v : values)
            cells.push_back(format_double(v));
        add_row(std::move(cells));
    }

    [[nodiscard]] std::string str() const
    {
        std::string out;
        append_line(out, header_);
        for (const auto& r : rows_)
            append_line(out, r);
        return out;
    }

    void write(const std::filesystem::path& path) const
    {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os)
            throw IoError("cannot open '" + path.string() + "' for writing");
        os << str();
        if (!os)
            throw IoError("failed writing '" + path.string() + "'");
    }

private:
    static void append_line(std::string& out, const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    }

    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline CsvTable band_csv(const FuzzyIndex& band)
{
    CsvTable t({"alpha", "lo", "hi"});
    for (const auto& c : band.cuts)
        t.add_row(std::vector<double>{c.alpha, c.lo, c.hi});
    return t;
}

inline CsvTable exposure_csv(const ExposureTable& table)
{
    CsvTable t({"interval", "X_i", "T_i"});
    for (std::size_t i = 0; i < table.size(); ++i)
        t.add_row({std::to_string(i + 1), format_double(table.X[i]), format_double(table.T[i])});
    return t;
}

inline CsvTable summary_csv(const SimulationSummary& s)
{
    CsvTable t({"availability", "mean_failures", "se_availability", "se_failures", "n_replications"});
    t.add_row({format_double(s.availability), format_double(s.mean_failures),
               format_double(s.se_availability), format_double(s.se_failures),
               std::to_string(s.n_replications)});
    return t;
}

inline CsvTable fit_csv(const std::vector<FitResult>& fits)
{
    CsvTable t({"G", "lambda1", "lambda2", "sse"});
    for (const auto& f : fits)
        t.add_row(std::vector<double>{f.G, f.lambda1, f.lambda2, f.sse});
    return t;
}

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

inline double parse_number(const std::string& s, const std::string& where)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": '" + s + "' is not a number");
    }
    if (used != s.size())
        throw std::invalid_argument(where + ": '" + s + "' is not a number");
    return v;
}

} // namespace detail

/// Parses the text of an exposure CSV (header `interval,X_i,T_i`).
inline ExposureTable parse_exposure_csv(const std::string& text, const std::string& source = "exposure.csv")
{
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line))
        throw std::invalid_argument(source + ": empty file");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "interval,X_i,T_i")
        throw std::invalid_argument(source + ": expected header 'interval,X_i,T_i', got '" + line + "'");
    ExposureTable table;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto cells = detail::split_csv_line(line);
        const std::string where = source + ":" + std::to_string(lineno);
        if (cells.size() != 3)
            throw std::invalid_argument(where + ": expected 3 columns");
        table.X.push_back(detail::parse_number(cells[1], where));
        table.T.push_back(detail::parse_number(cells[2], where));
    }
    table.validate();
    return table;
}

inline std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

inline ExposureTable read_exposure_csv(const std::filesystem::path& path)
{
    return parse_exposure_csv(read_text_file(path), path.string());
}

} // namespace pmurel
