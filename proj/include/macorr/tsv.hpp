#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "macorr/hurst.hpp"
#include "macorr/leverage.hpp"
#include "macorr/series.hpp"
#include "macorr/xcorr.hpp"

namespace macorr {

/// Shortest decimal representation that round-trips a double (17
/// significant digits).
std::string format_g17(double v);

/// '#'-prefixed comment lines, one per entry.
void write_comments(std::ostream& out, std::span<const std::string> comments);

/// Columns: n, tau, tau_hat, value, count. Absent cells are skipped.
void write_xcorr_tsv(std::ostream& out, const XcorrResult& r,
                     std::span<const std::string> comments = {});

/// Inverse of write_xcorr_tsv (comments ignored). Rows regroup into the
/// (window, lag) grid; windows keep theta = 0 placeholders since theta does
/// not appear in the table.
XcorrResult read_xcorr_tsv(std::istream& in);

/// Columns: n, value; the fit summary rides along as comment lines.
void write_scaling_tsv(std::ostream& out, std::span<const std::pair<int, double>> curve,
                       const ScalingFit& fit, std::span<const std::string> comments = {});

/// Columns: tau, L, numerator, count.
void write_leverage_tsv(std::ostream& out, const LeverageCurve& curve,
                        std::span<const std::string> comments = {});

/// One column per series (tab-separated, row-aligned).
void write_columns_tsv(std::ostream& out, std::span<const Series> columns,
                       std::span<const std::string> comments = {});

}  // namespace macorr
