#include "app.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "heatcontent/errors.hpp"
#include "heatcontent/geometry.hpp"
#include "heatcontent/heat_content_1d.hpp"
#include "heatcontent/spectral_heat.hpp"
#include "heatcontent/stable_kernel.hpp"
#include "json.hpp"

namespace heat::app {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double v) {
    if (std::isnan(v)) return "";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

nlohmann::ordered_json json_num(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return nullptr;
    return v > 0 ? "inf" : "-inf";
}

// Shorthand such as "ball:2:1", or the path of a key=value domain file.
Domain resolve_domain(const std::string& spec) {
    std::error_code ec;
    if (!std::filesystem::is_regular_file(spec, ec)) return parse_domain_spec(spec);
    std::ifstream in(spec);
    std::stringstream text;
    text << in.rdbuf();
    return parse_domain_config(text.str());
}

// "1e-3", "1e-4,1e-3" or "log:lo:hi:n".
std::vector<double> parse_grid(const std::string& spec) {
    std::vector<double> out;
    auto to_d = [](std::string_view s) {
        double v = 0.0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (res.ec != std::errc() || res.ptr != s.data() + s.size())
            fail(ErrorKind::InvalidConfig, "not a number in grid: '" + std::string(s) + "'");
        return v;
    };
    std::vector<std::string_view> parts;
    std::string_view rest = spec;
    const char sep = spec.rfind("log:", 0) == 0 ? ':' : ',';
    while (true) {
        const auto c = rest.find(sep);
        parts.push_back(rest.substr(0, c));
        if (c == std::string_view::npos) break;
        rest.remove_prefix(c + 1);
    }
    if (sep == ':') {
        if (parts.size() != 4) fail(ErrorKind::InvalidConfig, "log grid is log:lo:hi:n");
        const double lo = to_d(parts[1]), hi = to_d(parts[2]);
        const int n = static_cast<int>(to_d(parts[3]));
        if (!(lo > 0.0 && hi > lo && n >= 2)) fail(ErrorKind::InvalidConfig, "log grid needs 0 < lo < hi and n >= 2");
        for (int i = 0; i < n; ++i) out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
    } else {
        for (auto p : parts) out.push_back(to_d(p));
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(out[i] > 0.0)) fail(ErrorKind::InvalidConfig, "t grid must be strictly positive");
        if (i > 0 && !(out[i] > out[i - 1])) fail(ErrorKind::InvalidConfig, "t grid must be sorted increasing");
    }
    return out;
}

std::string list(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
    return s;
}

struct Common {
    std::string format = "csv";
    std::uint64_t seed = 20240917;
    std::string out;
    int threads = 0;
    std::uint64_t samples = 0;
};

struct Table {
    Provenance prov;
    std::vector<RunRecord> rows;

    RunRecord& add(double alpha, std::string domain, double t, std::string quantity, std::string method,
                   double value, double err) {
        RunRecord r;
        r.alpha = alpha;
        r.domain = std::move(domain);
        r.t = t;
        r.quantity = std::move(quantity);
        r.method = std::move(method);
        r.value = value;
        r.err = err;
        rows.push_back(r);
        return rows.back();
    }
    bool all_pass() const {
        for (const auto& r : rows)
            if (r.pass && !*r.pass) return false;
        return true;
    }
};

McBudget budget_of(const Common& c, std::uint64_t default_samples) {
    McBudget b;
    b.samples = c.samples ? c.samples : default_samples;
    b.seed = c.seed;
    b.threads = resolve_threads(c.threads);
    return b;
}

double rel_gap(double v, double ref) { return std::abs(v - ref) / std::abs(ref); }

// -- density ----------------------------------------------------------------

struct DensityArgs {
    std::vector<double> alpha{1.0};
    int d = 1;
    double t = 1.0;
    std::vector<double> r{0.0};
    bool normcheck = false;
    bool tail = false;
};

void cmd_density(const DensityArgs& a, Table& tab) {
    tab.prov.emplace_back("alpha", list(a.alpha));
    tab.prov.emplace_back("d", std::to_string(a.d));
    tab.prov.emplace_back("t", num(a.t));
    tab.prov.emplace_back("r", list(a.r));
    tab.prov.emplace_back("normcheck", a.normcheck ? "1" : "0");
    tab.prov.emplace_back("tail", a.tail ? "1" : "0");
    const std::string dom = "R^" + std::to_string(a.d);
    for (double av : a.alpha) {
        const AlphaParam alpha(av);
        for (double r : a.r) {
            const auto k = kernel_eval(alpha, a.d, a.t, r);
            auto& row = tab.add(av, dom, a.t, "kernel", std::string(to_string(k.method)), k.value, k.err_estimate);
            if (alpha.is_cauchy() && a.d == 1) row.reference = a.t / (std::numbers::pi * (a.t * a.t + r * r));
            if (alpha.is_gaussian())
                row.reference = std::pow(4.0 * std::numbers::pi * a.t, -0.5 * a.d) * std::exp(-r * r / (4.0 * a.t));
        }
        if (a.normcheck) {
            const auto m = kernel_mass(alpha, a.d, a.t);
            auto& row = tab.add(av, dom, a.t, "mass", "radial_quadrature", m.value, m.error);
            row.reference = 1.0;
            row.pass = std::abs(m.value - 1.0) <= 1e-5;
        }
        if (a.tail && !alpha.is_gaussian()) {
            for (double r : a.r) {
                if (!(r > 0.0)) continue;
                const auto c = kernel_tail_limit_check(alpha, a.d, r);
                for (std::size_t i = 0; i < c.t.size(); ++i) {
                    auto& row = tab.add(av, dom, c.t[i], "tail_ratio:r=" + num(r), "kernel_over_t", c.ratio[i],
                                        c.rel_error[i]);
                    row.reference = c.limit;
                }
                auto& row = tab.add(av, dom, kNaN, "tail_monotone:r=" + num(r), "relative_error_trend",
                                    c.rel_error.empty() ? kNaN : c.rel_error.back(), 0.0);
                row.reference = c.limit;
                row.pass = c.monotone;
            }
        }
    }
}

// -- heat1d -----------------------------------------------------------------

struct Heat1dArgs {
    std::vector<double> alpha{1.0};
    double len = 1.0;
    std::string t;
    bool fit = false;
    bool remainder = false;
};

double fit_tolerance(const AlphaParam& alpha, const std::string& label) {
    if (alpha.is_gaussian()) return 0.005;
    if (alpha.value() > 1.0 || alpha.is_cauchy()) return 0.01;
    if (label.find("ln") != std::string::npos) return 0.03;
    return 0.02;
}

void cmd_heat1d(const Heat1dArgs& a, Table& tab) {
    tab.prov.emplace_back("alpha", list(a.alpha));
    tab.prov.emplace_back("len", num(a.len));
    tab.prov.emplace_back("t", a.t);
    tab.prov.emplace_back("fit", a.fit ? "1" : "0");
    tab.prov.emplace_back("remainder", a.remainder ? "1" : "0");
    const Interval I(0.0, a.len);
    const auto dom = Domain::interval(0.0, a.len).id();
    const auto ts = a.t.empty() ? std::vector<double>{} : parse_grid(a.t);
    for (double av : a.alpha) {
        const AlphaParam alpha(av);
        for (double t : ts) {
            const auto e = heat_content_interval_exact(alpha, I, t);
            auto& row = tab.add(av, dom, t, "H", std::string(to_string(e.method)), e.value, e.error);
            if (alpha.is_cauchy()) {
                row.reference = cauchy_heat_content_interval(a.len, t);
                row.pass = rel_gap(e.value, row.reference) <= 1e-8;
            }
        }
        if (a.fit) {
            const auto rep = fit_expansion_1d(alpha, I);
            const auto ex = expansion_terms(alpha, I);
            for (std::size_t j = 0; j < rep.coefficients.size(); ++j) {
                auto& row = tab.add(av, dom, kNaN, "coef:" + rep.basis[j], "fit_" + num(rep.t_lo) + "_" + num(rep.t_hi),
                                    rep.coefficients[j], rep.ci[j]);
                for (const auto& term : ex.terms) {
                    // Expansion labels spell the exponent differently; compare the basis values instead.
                    BasisFunction b{term.kind == ExpansionTerm::Kind::Power ? BasisFunction::Kind::Power
                                                                            : BasisFunction::Kind::PowerLog,
                                    term.exponent};
                    if (b.label() != rep.basis[j]) continue;
                    row.reference = term.coefficient;
                    row.pass = rel_gap(rep.coefficients[j], term.coefficient) <= fit_tolerance(alpha, rep.basis[j]);
                }
            }
        }
        if (a.remainder && !alpha.is_cauchy()) {
            std::vector<double> grid;
            if (av > 1.0)
                grid = parse_grid("log:1e-4:1e-2:9");
            else
                grid = {0.01, 0.02, 0.05, 0.1};
            const auto rc = remainder_check(alpha, I, grid);
            auto& row = tab.add(av, dom, kNaN, "remainder_slope", "loglog_fit", rc.slope, 0.0);
            row.reference = rc.claimed_order;
            row.pass = rc.pass;
        }
    }
}

// -- heatnd -----------------------------------------------------------------

struct HeatndArgs {
    std::vector<double> alpha{1.5};
    std::string domain = "ball:2:1";
    std::string t = "1e-4,1e-3";
    std::string method = "quad";
    std::string fit;
    std::string fit_grid = "log:1e-5:1e-2:13";
    double tol = 0.1;
};

std::optional<AsymptoticLaw> parse_law(const std::string& s) {
    if (s.empty()) return std::nullopt;
    if (s == "tpow") return AsymptoticLaw::TPowInvAlpha;
    if (s == "tlog") return AsymptoticLaw::TLog;
    if (s == "linear") return AsymptoticLaw::LinearT;
    fail(ErrorKind::InvalidConfig, "unknown law '" + s + "' (tpow, tlog, linear)");
}

void cmd_heatnd(const HeatndArgs& a, const Common& c, Table& tab) {
    const auto budget = budget_of(c, 1u << 20);
    tab.prov.emplace_back("alpha", list(a.alpha));
    tab.prov.emplace_back("domain", a.domain);
    tab.prov.emplace_back("t", a.t);
    tab.prov.emplace_back("method", a.method);
    tab.prov.emplace_back("fit", a.fit);
    tab.prov.emplace_back("fit_grid", a.fit_grid);
    tab.prov.emplace_back("tol", num(a.tol));
    tab.prov.emplace_back("samples", std::to_string(budget.samples));
    const Domain omega = resolve_domain(a.domain);
    const bool quad = a.method == "quad" || a.method == "both";
    const bool mc = a.method == "mc" || a.method == "both";
    if (!quad && !mc) fail(ErrorKind::InvalidConfig, "method must be quad, mc or both");
    const auto law = parse_law(a.fit);
    for (double av : a.alpha) {
        const AlphaParam alpha(av);
        for (double t : parse_grid(a.t)) {
            std::optional<HeatContentEstimate> q, m;
            if (quad) {
                q = heat_content_nd(alpha, omega, t, EstimateMethod::SubordinationQuadrature, budget);
                tab.rows.push_back(make_record(alpha, omega, *q));
            }
            if (mc) {
                m = heat_content_nd(alpha, omega, t, EstimateMethod::DirectMC, budget);
                tab.rows.push_back(make_record(alpha, omega, *m));
            }
            if (q && m) {
                const double z = (m->value - q->value) / std::hypot(m->error, q->error);
                auto& row = tab.add(av, omega.id(), t, "route_z", "mc_minus_quad", z, 0.0);
                row.reference = 0.0;
                row.pass = std::abs(z) <= 3.0;
            }
            if (av > 1.0 && omega.surface()) {
                const auto& e = q ? *q : *m;
                auto& row = tab.add(av, omega.id(), t, "H_bound", "perimeter_bound", e.value, e.error);
                row.reference = superc_bound(alpha, omega, t);
                row.pass = e.value <= row.reference + 3.0 * e.error;
            }
        }
        if (law) {
            const auto grid = parse_grid(a.fit_grid);
            const auto rep = asymptote_fit(alpha, omega, grid, *law, quad ? EstimateMethod::SubordinationQuadrature
                                                                          : EstimateMethod::DirectMC, budget);
            for (std::size_t j = 0; j < rep.coefficients.size(); ++j) {
                auto& row = tab.add(av, omega.id(), kNaN, "coef:" + rep.basis[j], "fit_" + rep.law,
                                    rep.coefficients[j], rep.ci[j]);
                if (j == 0) {
                    row.reference = rep.predicted_coefficient;
                    row.pass = rep.relative_gap <= a.tol;
                }
            }
        }
    }
}

// -- spectral ---------------------------------------------------------------

struct SpectralArgs {
    std::vector<double> alpha{1.5};
    std::string domain = "ball:2:1";
    std::string t = "1e-3";
    int n_steps = 16;
    int levels = 4;
};

void cmd_spectral(const SpectralArgs& a, const Common& c, Table& tab) {
    const auto budget = budget_of(c, 1u << 18);
    tab.prov.emplace_back("alpha", list(a.alpha));
    tab.prov.emplace_back("domain", a.domain);
    tab.prov.emplace_back("t", a.t);
    tab.prov.emplace_back("n_steps", std::to_string(a.n_steps));
    tab.prov.emplace_back("levels", std::to_string(a.levels));
    tab.prov.emplace_back("samples", std::to_string(budget.samples));
    const Domain omega = resolve_domain(a.domain);
    const KilledPathConfig cfg{a.n_steps, a.levels};
    for (double av : a.alpha) {
        const AlphaParam alpha(av);
        for (double t : parse_grid(a.t)) {
            const auto rep = sandwich_check(alpha, omega, t, cfg, budget);
            const auto& est = rep.estimate;
            for (std::size_t l = 0; l < est.levels.size(); ++l) {
                auto& row = tab.add(av, omega.id(), t, "Q", "killed_path_mc", est.levels[l].q, est.levels[l].q_err);
                row.seed = budget.seed;
                row.n_steps = est.levels[l].n_steps;
                row.level = static_cast<int>(l);
            }
            auto& qe = tab.add(av, omega.id(), t, "Q_extrapolated", "richardson_rate_0.5", est.q_extrapolated,
                               est.extrapolated_err);
            qe.seed = budget.seed;
            qe.n_steps = est.levels.back().n_steps;
            tab.add(av, omega.id(), t, "deficit_lower", "heat_content", rep.bounds.lower, rep.bounds.lower_err);
            tab.add(av, omega.id(), t, "deficit_upper", "coarea_moment_bound", rep.bounds.upper,
                    rep.bounds.upper_err);
            auto& s = tab.add(av, omega.id(), t, "sandwich", "lower<=deficit<=upper", est.deficit_extrapolated,
                              est.extrapolated_err);
            s.seed = budget.seed;
            s.pass = rep.pass();
            if (alpha.is_gaussian() && omega.surface()) {
                auto& g = tab.add(av, omega.id(), t, "deficit_vs_leading", "2/sqrt(pi)*surface*sqrt(t)",
                                  est.deficit_extrapolated, est.extrapolated_err);
                g.reference = 2.0 / std::sqrt(std::numbers::pi) * *omega.surface() * std::sqrt(t);
                g.pass = rel_gap(est.deficit_extrapolated, g.reference) <= 0.15;
            }
        }
    }
}

// -- perimeter --------------------------------------------------------------

struct PerimeterArgs {
    std::vector<double> alpha{0.5};
    std::string domain = "ball:2:1";
    std::string method = "auto";
};

void cmd_perimeter(const PerimeterArgs& a, const Common& c, Table& tab) {
    const auto budget = budget_of(c, 1u << 20);
    tab.prov.emplace_back("alpha", list(a.alpha));
    tab.prov.emplace_back("domain", a.domain);
    tab.prov.emplace_back("method", a.method);
    tab.prov.emplace_back("samples", std::to_string(budget.samples));
    const Domain omega = resolve_domain(a.domain);
    PerimeterMethod method = PerimeterMethod::MonteCarlo;
    if (a.method == "quad" || (a.method == "auto" && omega.kind() != DomainKind::Smooth &&
                               (omega.kind() != DomainKind::Box || omega.dim() <= 3)))
        method = PerimeterMethod::Quadrature;
    else if (a.method != "mc" && a.method != "auto")
        fail(ErrorKind::InvalidConfig, "method must be quad, mc or auto");
    for (double av : a.alpha) {
        const auto p = fractional_perimeter(omega, av, method, budget);
        auto& row = tab.add(av, omega.id(), kNaN, "perimeter",
                            method == PerimeterMethod::Quadrature ? "quadrature" : "line_mc", p.value, p.error);
        if (method == PerimeterMethod::MonteCarlo) row.seed = budget.seed;
        row.reference = p.upper_bound;
        row.pass = std::isfinite(p.value) && p.value <= p.upper_bound + 3.0 * p.error;
    }
}

}  // namespace

std::string format_csv(const Provenance& prov, const std::vector<RunRecord>& rows) {
    std::ostringstream s;
    for (const auto& [k, v] : prov) s << "# " << k << '=' << v << '\n';
    for (std::size_t i = 0; i < std::size(kColumns); ++i) s << (i ? "," : "") << kColumns[i];
    s << '\n';
    for (const auto& r : rows) {
        s << num(r.alpha) << ',' << csv_field(r.domain) << ',' << num(r.t) << ',' << csv_field(r.quantity) << ','
          << csv_field(r.method) << ',' << num(r.value) << ',' << num(r.err) << ',' << num(r.reference) << ','
          << (r.pass ? (*r.pass ? "PASS" : "FAIL") : "") << ',' << (r.seed ? std::to_string(r.seed) : "") << ','
          << (r.n_steps ? std::to_string(r.n_steps) : "") << ',' << (r.level >= 0 ? std::to_string(r.level) : "")
          << '\n';
    }
    return s.str();
}

std::string format_json(const Provenance& prov, const std::vector<RunRecord>& rows) {
    std::ostringstream s;
    nlohmann::ordered_json p;
    for (const auto& [k, v] : prov) p[k] = v;
    s << nlohmann::ordered_json{{"provenance", p}}.dump() << '\n';
    for (const auto& r : rows) {
        nlohmann::ordered_json j;
        j["alpha"] = json_num(r.alpha);
        j["domain"] = r.domain;
        j["t"] = json_num(r.t);
        j["quantity"] = r.quantity;
        j["method"] = r.method;
        j["value"] = json_num(r.value);
        j["err"] = json_num(r.err);
        j["reference"] = json_num(r.reference);
        j["pass"] = r.pass ? nlohmann::ordered_json(*r.pass) : nlohmann::ordered_json(nullptr);
        j["seed"] = r.seed ? nlohmann::ordered_json(r.seed) : nlohmann::ordered_json(nullptr);
        j["n_steps"] = r.n_steps ? nlohmann::ordered_json(r.n_steps) : nlohmann::ordered_json(nullptr);
        j["level"] = r.level >= 0 ? nlohmann::ordered_json(r.level) : nlohmann::ordered_json(nullptr);
        s << j.dump() << '\n';
    }
    return s.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App cli{"Heat content of alpha-stable processes: kernels, interval and d-dimensional heat content, "
                 "spectral heat content and fractional perimeters."};
    cli.set_config("--config", "", "INI/TOML file with option values (flags override it)");
    cli.require_subcommand(1);
    cli.fallthrough();

    Common common;
    cli.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cli.add_option("--seed", common.seed, "Master seed for Monte Carlo streams");
    cli.add_option("--out", common.out, "Write the table here instead of standard output");
    cli.add_option("--threads", common.threads, "Worker threads (default: HEATCONTENT_THREADS or all cores)");
    cli.add_option("--samples", common.samples, "Monte Carlo sample budget");

    DensityArgs da;
    auto* density = cli.add_subcommand("density", "Transition density values and checks");
    density->add_option("--alpha", da.alpha, "Stability index list")->delimiter(',');
    density->add_option("--d", da.d, "Dimension")->check(CLI::Range(1, 8));
    density->add_option("--t", da.t, "Time");
    density->add_option("--r", da.r, "Radius list")->delimiter(',');
    density->add_flag("--normcheck", da.normcheck, "Check total mass by radial quadrature");
    density->add_flag("--tail", da.tail, "Check p_t(r)/t against its small-time limit");

    Heat1dArgs ha;
    auto* heat1d = cli.add_subcommand("heat1d", "Heat content of an interval");
    heat1d->add_option("--alpha", ha.alpha, "Stability index list")->delimiter(',');
    heat1d->add_option("--len", ha.len, "Interval length");
    heat1d->add_option("--t", ha.t, "Times: list or log:lo:hi:n");
    heat1d->add_flag("--fit", ha.fit, "Fit the small-time expansion against exact values");
    heat1d->add_flag("--remainder", ha.remainder, "Check the log-log slope of the remainder");

    HeatndArgs na;
    auto* heatnd = cli.add_subcommand("heatnd", "Heat content of a domain in R^d");
    heatnd->add_option("--alpha", na.alpha, "Stability index list")->delimiter(',');
    heatnd->add_option("--domain", na.domain, "Domain shorthand (ball:2:1, box:2:1,2, ...) or a key=value domain file");
    heatnd->add_option("--t", na.t, "Times: list or log:lo:hi:n");
    heatnd->add_option("--method", na.method, "quad, mc or both");
    heatnd->add_option("--fit", na.fit, "Small-time law to fit: tpow, tlog or linear");
    heatnd->add_option("--fit-grid", na.fit_grid, "Grid for --fit");
    heatnd->add_option("--tol", na.tol, "Relative tolerance for the fitted leading coefficient");

    SpectralArgs sa;
    auto* spectral = cli.add_subcommand("spectral", "Spectral heat content and its two-sided bounds");
    spectral->add_option("--alpha", sa.alpha, "Stability index list")->delimiter(',');
    spectral->add_option("--domain", sa.domain, "Domain shorthand or domain file");
    spectral->add_option("--t", sa.t, "Times: list or log:lo:hi:n");
    spectral->add_option("--n-steps", sa.n_steps, "Coarsest monitoring grid")->check(CLI::PositiveNumber);
    spectral->add_option("--levels", sa.levels, "Refinement levels")->check(CLI::Range(1, 12));

    PerimeterArgs pa;
    auto* perimeter = cli.add_subcommand("perimeter", "Fractional perimeter of a domain");
    perimeter->add_option("--alpha", pa.alpha, "Index list in (0,1)")->delimiter(',');
    perimeter->add_option("--domain", pa.domain, "Domain shorthand or domain file");
    perimeter->add_option("--method", pa.method, "quad, mc or auto");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e, out, err);
    }

    Table tab;
    try {
        std::string name = cli.get_subcommands().front()->get_name();
        tab.prov.emplace_back("command", name);
        tab.prov.emplace_back("format", common.format);
        tab.prov.emplace_back("seed", std::to_string(common.seed));
        if (density->parsed()) cmd_density(da, tab);
        if (heat1d->parsed()) cmd_heat1d(ha, tab);
        if (heatnd->parsed()) cmd_heatnd(na, common, tab);
        if (spectral->parsed()) cmd_spectral(sa, common, tab);
        if (perimeter->parsed()) cmd_perimeter(pa, common, tab);
    } catch (const Error& e) {
        err << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return 2;
    }

    const std::string text = common.format == "json" ? format_json(tab.prov, tab.rows) : format_csv(tab.prov, tab.rows);
    if (common.out.empty()) {
        out << text;
    } else {
        std::ofstream f(common.out, std::ios::binary);
        if (!f) {
            err << "error: cannot write " << common.out << '\n';
            return 2;
        }
        f << text;
    }
    return tab.all_pass() ? 0 : 1;
}

Result run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"heatcontent"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, e;
    Result r;
    r.exit_code = run(static_cast<int>(argv.size()), argv.data(), o, e);
    r.out = o.str();
    r.err = e.str();
    return r;
}

}  // namespace heat::app
