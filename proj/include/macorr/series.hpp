#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace macorr {

/// Uniformly sampled real-valued sequence.
///
/// `origin_index` is the absolute position of values[0] on the sampling
/// axis. Transforms that shrink or shift the valid range (moving averages,
/// rolling volatility) adjust it, so series derived from one parent stay
/// comparable position-by-position.
struct Series {
    std::vector<double> values;
    std::string axis_unit = "samples";
    long origin_index = 0;

    std::size_t size() const { return values.size(); }
    bool empty() const { return values.empty(); }
    long first_index() const { return origin_index; }
    long last_index() const { return origin_index + static_cast<long>(values.size()) - 1; }

    /// Sample at absolute axis position `idx` (caller keeps idx in range).
    double at_index(long idx) const { return values[static_cast<std::size_t>(idx - origin_index)]; }
};

/// Column selection for delimited-text ingestion.
struct IngestSpec {
    int column_index = 0;
    char delimiter = '\t';
    int skip_header = 0;
};

/// Load one numeric column from a delimited text file.
///
/// Blank lines and lines starting with '#' are skipped, so files produced
/// by the CLI (comment headers) round-trip. Non-numeric or non-finite cells
/// are reported with their 1-based file line number.
Series load_series(const std::string& path, const IngestSpec& spec = {});

/// Same as load_series but from an already-open stream; `name` labels errors.
Series parse_series(std::istream& in, const IngestSpec& spec, const std::string& name = "<stream>");

/// Subtract the mean, then cumulative-sum. The last output sample is zero up
/// to rounding; the profile is the usual integrated-signal preprocessing for
/// column data whose increments carry the structure.
Series mean_subtract_integrate(const Series& s);

/// r(t) = ln p(t + horizon) - ln p(t). Prices must be strictly positive and
/// horizon < length. Output keeps the origin of the first price entering
/// each return.
Series log_returns(const Series& prices, long horizon);

/// Trailing sample standard deviation (divisor T-1) over windows of T
/// consecutive returns. Output sample k covers returns [k, k+T-1] and is
/// anchored at the window's final return: origin_index shifts by T-1.
Series rolling_volatility(const Series& returns, int window);

}  // namespace macorr
