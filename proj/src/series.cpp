#include "macorr/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace macorr {

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

// Extract field `column` from `line`, splitting on `delim`. Returns false if
// the line has too few columns.
bool extract_field(const std::string& line, char delim, int column, std::string_view& out) {
    std::size_t start = 0;
    for (int c = 0; c < column; ++c) {
        std::size_t pos = line.find(delim, start);
        if (pos == std::string::npos) return false;
        start = pos + 1;
    }
    std::size_t end = line.find(delim, start);
    if (end == std::string::npos) end = line.size();
    out = std::string_view(line).substr(start, end - start);
    return true;
}

}  // namespace

Series parse_series(std::istream& in, const IngestSpec& spec, const std::string& name) {
    if (spec.column_index < 0) throw std::invalid_argument("load_series: column_index must be >= 0");
    if (spec.skip_header < 0) throw std::invalid_argument("load_series: skip_header must be >= 0");

    Series s;
    std::string line;
    long line_no = 0;
    int to_skip = spec.skip_header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') continue;
        if (to_skip > 0) {
            --to_skip;
            continue;
        }
        std::string_view field;
        if (!extract_field(line, spec.delimiter, spec.column_index, field)) {
            fail("load_series: " + name + ": line " + std::to_string(line_no) + ": fewer than " +
                 std::to_string(spec.column_index + 1) + " columns");
        }
        // trim surrounding spaces so " 1.0" parses
        while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
        while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
            fail("load_series: " + name + ": line " + std::to_string(line_no) +
                 ": non-numeric value '" + std::string(field) + "' in column " +
                 std::to_string(spec.column_index));
        }
        s.values.push_back(v);
    }
    if (s.values.empty()) fail("load_series: " + name + ": no data rows");
    return s;
}

Series load_series(const std::string& path, const IngestSpec& spec) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_series: cannot open '" + path + "'");
    return parse_series(in, spec, path);
}

Series mean_subtract_integrate(const Series& s) {
    if (s.empty()) throw std::invalid_argument("mean_subtract_integrate: empty series");
    const std::size_t n = s.values.size();

    // Kahan-compensated mean and running sum: genome-scale columns run to
    // millions of samples and the end-at-zero contract is checked to 1e-9.
    double sum = 0.0, c = 0.0;
    for (double v : s.values) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    const double mean = sum / static_cast<double>(n);

    Series out;
    out.axis_unit = s.axis_unit;
    out.origin_index = s.origin_index;
    out.values.resize(n);
    double acc = 0.0, comp = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double y = (s.values[k] - mean) - comp;
        double t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        out.values[k] = acc;
    }
    return out;
}

Series log_returns(const Series& prices, long horizon) {
    const long n = static_cast<long>(prices.values.size());
    if (horizon < 1) throw std::invalid_argument("log_returns: horizon must be positive");
    if (horizon >= n)
        throw std::invalid_argument("log_returns: horizon " + std::to_string(horizon) +
                                    " too large for series of length " + std::to_string(n));
    for (long i = 0; i < n; ++i) {
        if (!(prices.values[i] > 0.0))
            throw std::invalid_argument("log_returns: non-positive price at index " +
                                        std::to_string(prices.origin_index + i));
    }
    Series out;
    out.axis_unit = prices.axis_unit;
    out.origin_index = prices.origin_index;
    out.values.resize(static_cast<std::size_t>(n - horizon));
    for (long k = 0; k + horizon < n; ++k)
        out.values[static_cast<std::size_t>(k)] =
            std::log(prices.values[static_cast<std::size_t>(k + horizon)]) -
            std::log(prices.values[static_cast<std::size_t>(k)]);
    return out;
}

Series rolling_volatility(const Series& returns, int window) {
    const long n = static_cast<long>(returns.values.size());
    const long T = window;
    if (T < 2) throw std::invalid_argument("rolling_volatility: window must be >= 2");
    if (T > n)
        throw std::invalid_argument("rolling_volatility: window " + std::to_string(T) +
                                    " exceeds series length " + std::to_string(n));

    Series out;
    out.axis_unit = returns.axis_unit;
    out.origin_index = returns.origin_index + T - 1;  // anchored at the window's final return
    out.values.resize(static_cast<std::size_t>(n - T + 1));
    for (long k = 0; k + T <= n; ++k) {
        double mean = 0.0;
        for (long j = 0; j < T; ++j) mean += returns.values[static_cast<std::size_t>(k + j)];
        mean /= static_cast<double>(T);
        double ss = 0.0;
        for (long j = 0; j < T; ++j) {
            double d = returns.values[static_cast<std::size_t>(k + j)] - mean;
            ss += d * d;
        }
        out.values[static_cast<std::size_t>(k)] = std::sqrt(ss / static_cast<double>(T - 1));
    }
    return out;
}

}  // namespace macorr
