// macorr: lag- and scale-dependent cross-correlation of long-range
// correlated series via moving-average detrending. Every subcommand emits a
// plot-ready TSV whose comment header echoes the full configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "macorr/analytic.hpp"
#include "macorr/fbm.hpp"
#include "macorr/hurst.hpp"
#include "macorr/leverage.hpp"
#include "macorr/series.hpp"
#include "macorr/tsv.hpp"
#include "macorr/xcorr.hpp"

namespace {

constexpr const char* kVersion = "macorr 0.1.0";

struct Range {
    long first = 0, last = 0, step = 1;
};

std::vector<std::string> split_colons(const std::string& text) {
    std::vector<std::string> parts;
    std::string piece;
    std::istringstream in(text);
    while (std::getline(in, piece, ':')) parts.push_back(piece);
    return parts;
}

long parse_long(const std::string& piece, const std::string& flag) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(piece, &used);
    } catch (const std::exception&) {
        used = std::string::npos;
    }
    if (used != piece.size())
        throw CLI::ValidationError(flag, "bad integer '" + piece + "'");
    return v;
}

Range parse_range(const std::string& text, const std::string& flag) {
    const auto parts = split_colons(text);
    if (parts.size() != 2 && parts.size() != 3)
        throw CLI::ValidationError(flag, "expected first:last[:step], got '" + text + "'");
    Range r;
    r.first = parse_long(parts[0], flag);
    r.last = parse_long(parts[1], flag);
    if (parts.size() == 3) r.step = parse_long(parts[2], flag);
    return r;
}

char parse_delimiter(const std::string& text) {
    if (text == "\\t" || text == "tab") return '\t';
    if (text == "comma") return ',';
    if (text == "space") return ' ';
    if (text.size() == 1) return text[0];
    throw CLI::ValidationError("--delimiter", "use a single character, 'tab', 'comma' or 'space'");
}

std::string delimiter_name(char d) {
    if (d == '\t') return "tab";
    if (d == ',') return "comma";
    if (d == ' ') return "space";
    return std::string(1, d);
}

// Shared ingestion flags.
struct IngestFlags {
    std::string delimiter = "tab";
    int skip_header = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--delimiter", delimiter, "field delimiter (single char, tab, comma, space)");
        cmd->add_option("--skip-header", skip_header, "data rows to skip")->check(CLI::NonNegativeNumber);
    }
    macorr::IngestSpec spec(int column) const {
        return {column, parse_delimiter(delimiter), skip_header};
    }
};

// Window-list flags: exactly one of --window / --windows / --windows-geom.
struct WindowFlags {
    int single = 0;
    std::string arith, geom;
    double theta = 0.0;

    void attach(CLI::App* cmd, bool list_allowed = true) {
        auto* w = cmd->add_option("--window,-n", single, "single window length n");
        if (list_allowed) {
            auto* a = cmd->add_option("--windows", arith, "arithmetic window list first:last:step");
            auto* g = cmd->add_option("--windows-geom", geom, "geometric window list first:last:ratio");
            w->excludes(a)->excludes(g);
            a->excludes(g);
        }
        cmd->add_option("--theta", theta, "window anchor in [0,1]: 0 trailing, 0.5 centered")
            ->check(CLI::Range(0.0, 1.0));
    }

    std::vector<macorr::WindowSpec> windows(std::optional<int> default_last = std::nullopt) const {
        if (single > 0) return {{single, theta}};
        if (!arith.empty()) {
            Range r = parse_range(arith, "--windows");
            return macorr::arithmetic_windows(static_cast<int>(r.first), static_cast<int>(r.last),
                                              static_cast<int>(r.step), theta);
        }
        if (!geom.empty()) {
            const auto parts = split_colons(geom);
            if (parts.size() != 2 && parts.size() != 3)
                throw CLI::ValidationError("--windows-geom", "expected first:last[:ratio]");
            const int first = static_cast<int>(parse_long(parts[0], "--windows-geom"));
            const int last = static_cast<int>(parse_long(parts[1], "--windows-geom"));
            double ratio = 1.3;
            if (parts.size() == 3) {
                std::size_t used = 0;
                try {
                    ratio = std::stod(parts[2], &used);
                } catch (const std::exception&) {
                    used = std::string::npos;
                }
                if (used != parts[2].size())
                    throw CLI::ValidationError("--windows-geom", "bad ratio '" + parts[2] + "'");
            }
            return macorr::geometric_windows(first, last, ratio, theta);
        }
        if (default_last)
            return macorr::geometric_windows(16, std::max(17, *default_last), 1.3, theta);
        throw CLI::ValidationError("--window", "one of --window/--windows/--windows-geom is required");
    }

    std::string echo() const {
        std::ostringstream out;
        if (single > 0) out << "--window " << single;
        else if (!arith.empty()) out << "--windows " << arith;
        else if (!geom.empty()) out << "--windows-geom " << geom;
        else out << "--windows-geom <default>";
        out << " --theta " << macorr::format_g17(theta);
        return out.str();
    }
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::runtime_error("cli: cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

std::vector<std::string> base_comments(const std::string& echo) {
    return {std::string("command: macorr ") + echo, std::string("version: ") + kVersion};
}

// ---------------------------------------------------------------- xcorr

struct XcorrCmd {
    std::string x_path, y_path, lags, out;
    int x_column = 0, y_column = 0;
    long min_count = 100;
    bool use_fft = false;
    IngestFlags ingest;
    WindowFlags window;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("xcorr",
                                       "cross-correlation C_xy(tau; n) of two series");
        cmd->add_option("--x", x_path, "first input file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--y", y_path, "second input file")->required()->check(CLI::ExistingFile);
        cmd->add_option("--x-column", x_column)->check(CLI::NonNegativeNumber);
        cmd->add_option("--y-column", y_column)->check(CLI::NonNegativeNumber);
        ingest.attach(cmd);
        window.attach(cmd);
        cmd->add_option("--lags", lags, "lag grid first:last[:step]")->required();
        cmd->add_option("--min-count", min_count, "count floor below which a cell is dropped");
        cmd->add_flag("--fft", use_fft, "FFT path (single window, dense symmetric lags)");
        cmd->add_option("--out", out, "output TSV (default stdout)");
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        const macorr::Series x = macorr::load_series(x_path, ingest.spec(x_column));
        const macorr::Series y = macorr::load_series(y_path, ingest.spec(y_column));
        const auto windows = window.windows();
        const Range lr = parse_range(lags, "--lags");
        macorr::XcorrOptions opt;
        opt.min_count = min_count;

        macorr::XcorrResult result;
        if (use_fft) {
            if (windows.size() != 1)
                throw std::invalid_argument("cli: --fft requires a single --window");
            if (lr.step != 1 || lr.first != -lr.last)
                throw std::invalid_argument("cli: --fft requires --lags -L:L:1");
            result = macorr::cross_correlation_fft(x, y, windows[0], lr.last, opt);
        } else {
            result = macorr::cross_correlation(x, y, windows,
                                               macorr::lag_range(lr.first, lr.last, lr.step), opt);
        }

        std::ostringstream echo;
        echo << "xcorr --x " << x_path << " --y " << y_path << " --x-column " << x_column
             << " --y-column " << y_column << " --delimiter " << delimiter_name(parse_delimiter(ingest.delimiter))
             << " --skip-header " << ingest.skip_header << " " << window.echo() << " --lags " << lags
             << " --min-count " << min_count << (use_fft ? " --fft" : "");
        Output sink(out);
        macorr::write_xcorr_tsv(sink.stream(), result, base_comments(echo.str()));
    }
};

// ---------------------------------------------------------------- hurst

struct HurstCmd {
    std::string input, out;
    int column = 0;
    long min_count = 100;
    IngestFlags ingest;
    WindowFlags window;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("hurst", "Hurst exponent from C_xx(0) ~ n^2H scaling");
        cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
        cmd->add_option("--column", column)->check(CLI::NonNegativeNumber);
        ingest.attach(cmd);
        window.attach(cmd);
        cmd->add_option("--min-count", min_count);
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        const macorr::Series x = macorr::load_series(input, ingest.spec(column));
        const auto windows = window.windows(static_cast<int>(x.size() / 50));
        macorr::XcorrOptions opt;
        opt.min_count = min_count;
        const auto curve = macorr::auto_scaling_curve(x, windows, opt);
        const macorr::ScalingFit fit = macorr::fit_scaling(curve);

        std::ostringstream echo;
        echo << "hurst --input " << input << " --column " << column << " --skip-header "
             << ingest.skip_header << " " << window.echo() << " --min-count " << min_count;
        Output sink(out);
        macorr::write_scaling_tsv(sink.stream(), curve, fit, base_comments(echo.str()));
    }
};

// ---------------------------------------------------------------- analytic

struct AnalyticCmd {
    double h1 = 0.5, h2 = 0.5, theta = 0.0, n = 1.0;
    double tau_hat_max = 0.95;
    int steps = 20;
    bool oracle = false;
    std::string out;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "analytic", "closed-form asymptotic cross-correlation on a tau_hat grid");
        cmd->add_option("--h1", h1)->required()->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--h2", h2)->required()->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--theta", theta)->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--n", n, "window scale factor n (value carries n^(H1+H2))");
        cmd->add_option("--tau-hat-max", tau_hat_max)->check(CLI::Range(0.0, 0.999999));
        cmd->add_option("--steps", steps, "grid points from 0 to tau-hat-max")
            ->check(CLI::PositiveNumber);
        cmd->add_flag("--oracle", oracle, "evaluate by adaptive quadrature instead of closed form");
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        macorr::analytic::AnalyticParams params{h1, h2, theta};
        macorr::analytic::validate_params(params);
        const double s = params.s();
        const double d = params.coefficient();

        std::ostringstream echo;
        echo << "analytic --h1 " << macorr::format_g17(h1) << " --h2 " << macorr::format_g17(h2)
             << " --theta " << macorr::format_g17(theta) << " --n " << macorr::format_g17(n)
             << " --tau-hat-max " << macorr::format_g17(tau_hat_max) << " --steps " << steps
             << (oracle ? " --oracle" : "");
        Output sink(out);
        auto& os = sink.stream();
        auto comments = base_comments(echo.str());
        comments.push_back("coefficient: " + macorr::format_g17(d));
        macorr::write_comments(os, comments);
        os << "tau_hat\ttheta\tH1\tH2\tcase_id\tvalue\n";
        for (int i = 0; i <= steps; ++i) {
            const double tau_hat = tau_hat_max * i / steps;
            const int case_id = macorr::analytic::select_case(tau_hat, theta);
            const double value =
                oracle ? std::pow(n, s) * d * macorr::analytic::bracket_quadrature(tau_hat, theta, s)
                       : macorr::analytic::case_value(case_id, tau_hat, theta, h1, h2, n);
            os << macorr::format_g17(tau_hat) << '\t' << macorr::format_g17(theta) << '\t'
               << macorr::format_g17(h1) << '\t' << macorr::format_g17(h2) << '\t' << case_id
               << '\t' << macorr::format_g17(value) << '\n';
        }
    }
};

// ---------------------------------------------------------------- fbm-gen

struct FbmGenCmd {
    double h1 = 0.5, h2 = 0.5;
    long length = 0;
    std::uint64_t seed = 0;
    std::string out;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("fbm-gen",
                                       "coupled fBm pair from one shared noise realization");
        cmd->add_option("--h1", h1)->required()->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--h2", h2)->required()->check(CLI::Range(0.0, 1.0));
        cmd->add_option("--length", length)->required()->check(CLI::PositiveNumber);
        cmd->add_option("--seed", seed)->required();
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        const macorr::fbm::PairSpec spec{h1, h2, length, seed};
        auto [x, y] = macorr::fbm::generate_pair(spec);
        const double scale = macorr::fbm::calibrate_scale(spec);

        std::ostringstream echo;
        echo << "fbm-gen --h1 " << macorr::format_g17(h1) << " --h2 " << macorr::format_g17(h2)
             << " --length " << length << " --seed " << seed;
        auto comments = base_comments(echo.str());
        comments.push_back("method: " + spec.method);
        comments.push_back("calibration-scale: " + macorr::format_g17(scale));
        comments.push_back("columns: B_H1 B_H2");
        Output sink(out);
        const macorr::Series cols[2] = {x, y};
        macorr::write_columns_tsv(sink.stream(), cols, comments);
    }
};

// ---------------------------------------------------------------- leverage

struct LeverageCmd {
    std::string input, lags, out;
    int column = 0;
    long horizon = 1;
    int vol_window = 2;
    long min_count = 100;
    IngestFlags ingest;
    WindowFlags window;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("leverage",
                                       "leverage function L(tau) from a price series");
        cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
        cmd->add_option("--column", column)->check(CLI::NonNegativeNumber);
        ingest.attach(cmd);
        cmd->add_option("--horizon", horizon, "return horizon t' in samples")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--vol-window", vol_window, "volatility window T in samples")
            ->required()
            ->check(CLI::Range(2, 1 << 30));
        window.attach(cmd, /*list_allowed=*/false);
        cmd->add_option("--lags", lags, "lag grid first:last[:step]")->required();
        cmd->add_option("--min-count", min_count);
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        if (window.single <= 0) throw std::invalid_argument("cli: leverage requires --window");
        const macorr::Series prices = macorr::load_series(input, ingest.spec(column));
        const Range lr = parse_range(lags, "--lags");
        macorr::XcorrOptions opt;
        opt.min_count = min_count;
        const macorr::LeverageCurve curve =
            macorr::leverage_curve(prices, horizon, vol_window, {window.single, window.theta},
                                   macorr::lag_range(lr.first, lr.last, lr.step), opt);

        std::ostringstream echo;
        echo << "leverage --input " << input << " --column " << column << " --horizon " << horizon
             << " --vol-window " << vol_window << " " << window.echo() << " --lags " << lags
             << " --min-count " << min_count;
        Output sink(out);
        macorr::write_leverage_tsv(sink.stream(), curve, base_comments(echo.str()));
    }
};

// ---------------------------------------------------------------- collapse

struct CollapseCmd {
    std::string input, out;
    double h1 = 0.0, h2 = 0.0;
    bool scale_lags = false;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand("collapse",
                                       "rescale an xcorr table by n^-(H1+H2)");
        cmd->add_option("--input", input, "xcorr TSV produced by this tool")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--h1", h1)->required();
        cmd->add_option("--h2", h2)->required();
        cmd->add_flag("--scale-lags", scale_lags, "mark the lag axis as tau_hat = tau/n");
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        std::ifstream in(input);
        if (!in) throw std::runtime_error("cli: cannot open '" + input + "'");
        macorr::XcorrResult r = macorr::read_xcorr_tsv(in);
        r = macorr::collapse_transform(std::move(r), h1, h2, scale_lags);

        std::ostringstream echo;
        echo << "collapse --input " << input << " --h1 " << macorr::format_g17(h1) << " --h2 "
             << macorr::format_g17(h2) << (scale_lags ? " --scale-lags" : "");
        auto comments = base_comments(echo.str());
        if (r.lags_scaled) comments.push_back("lags-scaled: read the lag axis as tau_hat = tau/n");
        Output sink(out);
        macorr::write_xcorr_tsv(sink.stream(), r, comments);
    }
};

// ---------------------------------------------------------------- genomic-prep

struct GenomicPrepCmd {
    std::string input, out;
    int column = 0;
    IngestFlags ingest;

    void attach(CLI::App& app) {
        auto* cmd = app.add_subcommand(
            "genomic-prep", "mean-subtract and integrate a structural-parameter column");
        cmd->add_option("--input", input)->required()->check(CLI::ExistingFile);
        cmd->add_option("--column", column)->check(CLI::NonNegativeNumber);
        ingest.attach(cmd);
        cmd->add_option("--out", out);
        cmd->callback([this] { execute(); });
    }

    void execute() const {
        const macorr::Series col = macorr::load_series(input, ingest.spec(column));
        const macorr::Series prep = macorr::mean_subtract_integrate(col);

        std::ostringstream echo;
        echo << "genomic-prep --input " << input << " --column " << column << " --skip-header "
             << ingest.skip_header;
        auto comments = base_comments(echo.str());
        comments.push_back("rows: " + std::to_string(prep.values.size()));
        Output sink(out);
        const macorr::Series cols[1] = {prep};
        macorr::write_columns_tsv(sink.stream(), cols, comments);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lag- and scale-dependent cross-correlation of long-range correlated series"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    XcorrCmd xcorr;
    HurstCmd hurst;
    AnalyticCmd analytic;
    FbmGenCmd fbm_gen;
    LeverageCmd leverage;
    CollapseCmd collapse;
    GenomicPrepCmd genomic_prep;
    xcorr.attach(app);
    hurst.attach(app);
    analytic.attach(app);
    fbm_gen.attach(app);
    leverage.attach(app);
    collapse.attach(app);
    genomic_prep.attach(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // user error
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
