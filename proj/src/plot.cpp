#include "netrewire/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "netrewire/csv.hpp"
#include "netrewire/experiment.hpp"

namespace netrewire {

namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 170, kTop = 40, kBottom = 50;

const char* const kColors[] = {"#000000", "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Series {
    std::string name;
    std::vector<std::pair<double, double>> points;
    bool dashed = false;
};

std::string fmt(double x, int prec = 2) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", prec, x);
    return buf;
}

std::string tick_label(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else if (c == '&') out += "&amp;";
        else if (c == '-' && !out.empty() && out.back() == '-') out += " -"; // no "--" inside comments
        else out += c;
    }
    return out;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string file_digest(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(ss.str())));
    return buf;
}

struct Axis {
    double lo = 0, hi = 1;
    bool log = false;

    double map(double x) const {
        if (log) x = std::log10(x);
        return hi > lo ? (x - lo) / (hi - lo) : 0.5;
    }
};

Axis make_axis(const std::vector<Series>& series, bool use_x, bool log) {
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto& s : series)
        for (auto [x, y] : s.points) {
            double v = use_x ? x : y;
            if (log) {
                if (!(v > 0)) continue;
                v = std::log10(v);
            }
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    if (!std::isfinite(lo)) lo = 0, hi = 1;
    if (hi - lo < 1e-12) {
        double pad = std::max(std::abs(lo) * 0.1, log ? 0.5 : 1e-3);
        lo -= pad;
        hi += pad;
    } else if (!log) {
        double pad = (hi - lo) * 0.05;
        lo -= pad;
        hi += pad;
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

std::vector<double> ticks(const Axis& a) {
    std::vector<double> out;
    if (a.log) {
        for (int e = static_cast<int>(std::floor(a.lo)); e <= static_cast<int>(std::ceil(a.hi)); ++e)
            if (e >= a.lo - 1e-9 && e <= a.hi + 1e-9) out.push_back(std::pow(10.0, e));
        if (out.size() < 2) out = {std::pow(10.0, a.lo), std::pow(10.0, a.hi)};
        return out;
    }
    const double span = a.hi - a.lo;
    const double raw = span / 5;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) {
            step = m * mag;
            break;
        }
    for (double t = std::ceil(a.lo / step) * step; t <= a.hi + 1e-12; t += step) out.push_back(std::abs(t) < 1e-12 ? 0.0 : t);
    return out;
}

std::string render(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                   const std::vector<Series>& series, bool logx, bool logy, const std::vector<std::string>& provenance) {
    const Axis ax = make_axis(series, true, logx), ay = make_axis(series, false, logy);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + ax.map(x) * pw; };
    auto py = [&](double y) { return kTop + (1.0 - ay.map(y)) * ph; };

    std::ostringstream o;
    o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    o << "<!--\n";
    for (auto& line : provenance) o << "  " << escape(line) << '\n';
    o << "-->\n";
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
      << "</text>\n";
    o << "<rect x=\"" << fmt(kLeft) << "\" y=\"" << fmt(kTop) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph)
      << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (double t : ticks(ax)) {
        const double x = px(t);
        o << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(kTop + ph) << "\" x2=\"" << fmt(x) << "\" y2=\""
          << fmt(kTop + ph + 5) << "\" stroke=\"#444\"/>";
        o << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(kTop + ph + 18) << "\" text-anchor=\"middle\">" << tick_label(t)
          << "</text>\n";
    }
    for (double t : ticks(ay)) {
        const double y = py(t);
        o << "<line x1=\"" << fmt(kLeft - 5) << "\" y1=\"" << fmt(y) << "\" x2=\"" << fmt(kLeft) << "\" y2=\"" << fmt(y)
          << "\" stroke=\"#444\"/>";
        o << "<text x=\"" << fmt(kLeft - 8) << "\" y=\"" << fmt(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
          << "</text>\n";
    }
    o << "<text x=\"" << fmt(kLeft + pw / 2) << "\" y=\"" << fmt(kHeight - 10) << "\" text-anchor=\"middle\">"
      << escape(xlabel) << "</text>\n";
    o << "<text transform=\"translate(16," << fmt(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
      << escape(ylabel) << "</text>\n";

    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        const char* color = kColors[i % std::size(kColors)];
        std::string pts;
        for (auto [x, y] : s.points) {
            if ((logx && !(x > 0)) || (logy && !(y > 0)) || !std::isfinite(x) || !std::isfinite(y)) continue;
            if (!pts.empty()) pts += ' ';
            pts += fmt(px(x)) + "," + fmt(py(y));
            o << "<circle cx=\"" << fmt(px(x)) << "\" cy=\"" << fmt(py(y)) << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
        }
        if (!pts.empty())
            o << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
              << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>\n";
        const double ly = kTop + 14 + 18.0 * static_cast<double>(i);
        o << "<line x1=\"" << fmt(kWidth - kRight + 12) << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
          << fmt(kWidth - kRight + 36) << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"" << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << "/>";
        o << "<text x=\"" << fmt(kWidth - kRight + 42) << "\" y=\"" << fmt(ly) << "\">" << escape(s.name)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

double parse(const std::string& s) {
    try {
        return std::stod(s);
    } catch (...) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

// Strategy labels in first-seen order.
std::vector<std::string> labels_in(const CsvTable& t, std::size_t col) {
    std::vector<std::string> out;
    for (auto& r : t.rows)
        if (col < r.size() && std::find(out.begin(), out.end(), r[col]) == out.end()) out.push_back(r[col]);
    return out;
}

double closest_rf(const CsvTable& t, std::size_t rf_col, double want) {
    double best = std::numeric_limits<double>::quiet_NaN();
    for (auto& r : t.rows) {
        if (rf_col >= r.size()) continue;
        const double v = parse(r[rf_col]);
        if (!(v > 0)) continue;
        if (std::isnan(best) || std::abs(v - want) < std::abs(best - want)) best = v;
    }
    return best;
}

class Emitter {
public:
    Emitter(std::filesystem::path in, std::filesystem::path out) : in_(std::move(in)), out_(std::move(out)) {}

    PlotOutcome outcome;

    // Loads `file` and checks that it carries every column in `need`.
    std::optional<CsvTable> table(const std::string& file, const std::vector<std::string>& need,
                                  const std::string& plot) {
        const auto path = in_ / file;
        if (!std::filesystem::exists(path)) {
            outcome.warnings.push_back(plot + ": skipped, " + file + " not found");
            return std::nullopt;
        }
        auto t = read_csv(path);
        for (auto& c : need)
            if (!t.column(c)) {
                outcome.warnings.push_back(plot + ": skipped, column '" + c + "' missing from " + file);
                return std::nullopt;
            }
        return t;
    }

    void write(const std::string& name, const std::string& source, const std::string& title, const std::string& xl,
               const std::string& yl, const std::vector<Series>& series, bool logx, bool logy) {
        if (series.empty()) {
            outcome.warnings.push_back(name + ": skipped, no data");
            return;
        }
        std::vector<std::string> prov{"generator: netrewire " + std::string(kVersion),
                                      "source: " + source + " fnv1a64=" + file_digest(in_ / source),
                                      "figure: " + title};
        std::filesystem::create_directories(out_);
        const auto path = out_ / name;
        write_file_atomic(path, render(title, xl, yl, series, logx, logy, prov));
        outcome.written.push_back(path);
    }

private:
    std::filesystem::path in_, out_;
};

void measure_vs_rf(Emitter& em, const std::string& measure, const std::string& label) {
    const std::string plot = "rf_" + measure + ".svg";
    auto t = em.table("summary.csv", {"strategy", "r_f", measure + "_mean"}, plot);
    if (!t) return;
    const auto cs = *t->column("strategy"), cr = *t->column("r_f"), cm = *t->column(measure + "_mean");
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (auto& r : t->rows) {
        lo = std::min(lo, parse(r[cr]));
        hi = std::max(hi, parse(r[cr]));
    }
    std::vector<Series> series;
    for (auto& lab : labels_in(*t, cs)) {
        Series s{lab, {}, lab == "original"};
        for (auto& r : t->rows)
            if (r[cs] == lab) s.points.emplace_back(parse(r[cr]), parse(r[cm]));
        // The original network is one value; draw it across the r_f range.
        if (lab == "original" && s.points.size() == 1 && hi > lo) s.points = {{lo, s.points[0].second}, {hi, s.points[0].second}};
        series.push_back(std::move(s));
    }
    em.write(plot, "summary.csv", label + " vs rewired fraction", "r_f", label, series, false, false);
}

// Per-degree curves (utilization or degree distribution) on log-log axes.
void per_degree(Emitter& em, const std::string& file, const std::string& ycol, const std::string& plot,
                const std::string& title, const std::string& ylabel, double focus_rf) {
    auto t = em.table(file, {"strategy", "r_f", "k", ycol}, plot);
    if (!t) return;
    const auto cs = *t->column("strategy"), cr = *t->column("r_f"), ck = *t->column("k"), cy = *t->column(ycol);
    const double rf = closest_rf(*t, cr, focus_rf);
    std::vector<Series> series;
    for (auto& lab : labels_in(*t, cs)) {
        Series s{lab == "original" ? lab : lab + " r_f=" + tick_label(rf), {}, lab == "original"};
        for (auto& r : t->rows)
            if (r[cs] == lab && (lab == "original" || parse(r[cr]) == rf)) s.points.emplace_back(parse(r[ck]), parse(r[cy]));
        if (!s.points.empty()) series.push_back(std::move(s));
    }
    em.write(plot, file, title, "k", ylabel, series, true, true);
}

void load_vs_lambda(Emitter& em, double focus_rf) {
    const std::string base = "load_vs_lambda";
    auto t = em.table("traffic_summary.csv", {"strategy", "r_f", "beta", "lambda", "L_analytic_mean"}, base);
    if (!t) return;
    const auto cs = *t->column("strategy"), cr = *t->column("r_f"), cb = *t->column("beta"), cl = *t->column("lambda"),
               cy = *t->column("L_analytic_mean");
    const double rf = closest_rf(*t, cr, focus_rf);
    std::vector<std::string> betas;
    for (auto& r : t->rows)
        if (std::find(betas.begin(), betas.end(), r[cb]) == betas.end()) betas.push_back(r[cb]);
    for (auto& b : betas) {
        std::vector<Series> series;
        for (auto& lab : labels_in(*t, cs)) {
            Series s{lab == "original" ? lab : lab + " r_f=" + tick_label(rf), {}, lab == "original"};
            for (auto& r : t->rows)
                if (r[cs] == lab && r[cb] == b && (lab == "original" || parse(r[cr]) == rf))
                    s.points.emplace_back(parse(r[cl]), parse(r[cy]));
            if (!s.points.empty()) series.push_back(std::move(s));
        }
        em.write(base + "_beta" + b + ".svg", "traffic_summary.csv", "Load L(T) vs lambda, beta=" + b, "lambda", "L(T)",
                 series, false, false);
    }
}

} // namespace

PlotOutcome emit_plots(const std::filesystem::path& results_dir, const std::filesystem::path& out_dir, double focus_rf) {
    Emitter em(results_dir, out_dir);
    measure_vs_rf(em, "g_max", "g(max)");
    measure_vs_rf(em, "lambda_c", "lambda_c");
    measure_vs_rf(em, "rc", "RC");
    measure_vs_rf(em, "cp", "CP");
    per_degree(em, "utilization.csv", "U_k_mean", "utilization.svg", "Utilization U_k vs degree", "U_k", focus_rf);
    per_degree(em, "degree_distribution.csv", "p_k", "degree_distribution.svg", "Degree distribution", "p(k)",
               focus_rf);
    load_vs_lambda(em, focus_rf);
    return std::move(em.outcome);
}

} // namespace netrewire
