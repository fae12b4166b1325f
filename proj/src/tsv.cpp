#include "macorr/tsv.hpp"

#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace macorr {

std::string format_g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_comments(std::ostream& out, std::span<const std::string> comments) {
    for (const auto& line : comments) out << "# " << line << "\n";
}

void write_xcorr_tsv(std::ostream& out, const XcorrResult& r,
                     std::span<const std::string> comments) {
    write_comments(out, comments);
    out << "n\ttau\ttau_hat\tvalue\tcount\n";
    for (std::size_t iw = 0; iw < r.windows.size(); ++iw) {
        for (std::size_t il = 0; il < r.lags.size(); ++il) {
            const XcorrCell& cell = r.cell(iw, il);
            if (!cell.valid) continue;
            out << r.windows[iw].n << '\t' << r.lags[il] << '\t' << format_g17(r.tau_hat(iw, il))
                << '\t' << format_g17(cell.value) << '\t' << cell.count << '\n';
        }
    }
}

XcorrResult read_xcorr_tsv(std::istream& in) {
    struct Row {
        int n;
        long tau;
        double value;
        long count;
    };
    std::vector<Row> rows;
    std::string line;
    bool header_seen = false;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        Row row{};
        double tau_hat_ignored;
        if (!(ls >> row.n >> row.tau >> tau_hat_ignored >> row.value >> row.count))
            throw std::runtime_error("read_xcorr_tsv: malformed row at line " +
                                     std::to_string(line_no));
        rows.push_back(row);
    }
    if (rows.empty()) throw std::runtime_error("read_xcorr_tsv: no data rows");

    std::set<int> ns;
    std::set<long> taus;
    for (const Row& row : rows) {
        ns.insert(row.n);
        taus.insert(row.tau);
    }
    XcorrResult r;
    for (int n : ns) r.windows.push_back({n, 0.0});
    r.lags.assign(taus.begin(), taus.end());
    r.cells.resize(r.windows.size() * r.lags.size());
    std::map<int, std::size_t> wi;
    std::map<long, std::size_t> li;
    for (std::size_t i = 0; i < r.windows.size(); ++i) wi[r.windows[i].n] = i;
    for (std::size_t i = 0; i < r.lags.size(); ++i) li[r.lags[i]] = i;
    for (const Row& row : rows) {
        XcorrCell& cell = r.cell(wi[row.n], li[row.tau]);
        cell.value = row.value;
        cell.count = row.count;
        cell.valid = true;
    }
    return r;
}

void write_scaling_tsv(std::ostream& out, std::span<const std::pair<int, double>> curve,
                       const ScalingFit& fit, std::span<const std::string> comments) {
    write_comments(out, comments);
    out << "# fit: exponent=" << format_g17(fit.exponent) << " slope=" << format_g17(fit.slope)
        << " intercept=" << format_g17(fit.intercept) << " r_squared=" << format_g17(fit.r_squared)
        << " n_range=[" << fit.n_min << "," << fit.n_max << "]\n";
    out << "n\tvalue\n";
    for (const auto& [n, v] : curve) out << n << '\t' << format_g17(v) << '\n';
}

void write_leverage_tsv(std::ostream& out, const LeverageCurve& curve,
                        std::span<const std::string> comments) {
    write_comments(out, comments);
    out << "# denominator=" << format_g17(curve.denominator) << " horizon=" << curve.horizon
        << " vol_window=" << curve.vol_window << " n=" << curve.window.n
        << " theta=" << format_g17(curve.window.theta) << "\n";
    out << "tau\tL\tnumerator\tcount\n";
    for (std::size_t i = 0; i < curve.lags.size(); ++i)
        out << curve.lags[i] << '\t' << format_g17(curve.values[i]) << '\t'
            << format_g17(curve.numerator[i]) << '\t' << curve.counts[i] << '\n';
}

void write_columns_tsv(std::ostream& out, std::span<const Series> columns,
                       std::span<const std::string> comments) {
    write_comments(out, comments);
    std::size_t rows = 0;
    for (const Series& s : columns) rows = std::max(rows, s.values.size());
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << '\t';
            if (i < columns[c].values.size()) out << format_g17(columns[c].values[i]);
        }
        out << '\n';
    }
}

}  // namespace macorr
