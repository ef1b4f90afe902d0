// rowpade: batch front end for row-sequence rational approximation
// experiments. Subcommands wrap the library pipeline and emit reproducible
// JSON (authoritative) and CSV (plotting) outputs; every output embeds the
// full run configuration and precision. Exit codes: 0 success, 1 usage,
// 2 computation failure.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rowpade/io.hpp"
#include "rowpade/row_analysis.hpp"
#include "rowpade/system_poles.hpp"
#include "rowpade/testbed.hpp"

namespace {

using namespace rowpade;

struct CommonOptions {
    std::string input;
    std::string example_id;
    unsigned precision_bits = 512;
    unsigned jobs = 1;
    std::string out;
    std::string csv;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool need_source = true) {
    auto* in = cmd->add_option("--input", opt.input, "system description JSON file");
    auto* ex = cmd->add_option("--example", opt.example_id, "builtin example id (E1..E6)");
    in->excludes(ex);
    if (need_source) {
        // exactly one source; validated after parse for a clean usage error
    }
    cmd->add_option("--precision-bits", opt.precision_bits, "significand bits (default 512)")
        ->check(CLI::Range(64u, 65536u));
    cmd->add_option("--jobs", opt.jobs, "worker threads for sweeps (default 1)")
        ->check(CLI::Range(1u, 256u));
    cmd->add_option("--out", opt.out, "JSON output path (default stdout)");
    cmd->add_option("--csv", opt.csv, "CSV output path (optional)");
}

SystemModel load_system(const CommonOptions& opt, const PrecisionContext& ctx) {
    if (!opt.example_id.empty()) {
        auto all = examples();
        return example_by_id(all, opt.example_id).system;
    }
    if (opt.input.empty())
        throw CLI::ValidationError("exactly one of --input or --example is required");
    std::ifstream in(opt.input);
    if (!in) throw std::runtime_error("cannot open " + opt.input);
    json doc = json::parse(in);
    return system_from_json(doc, ctx);
}

struct Range {
    std::size_t lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
    Range r;
    auto pos = s.find("..");
    if (pos == std::string::npos) {
        r.lo = r.hi = std::stoul(s);
        return r;
    }
    r.lo = std::stoul(s.substr(0, pos));
    r.hi = std::stoul(s.substr(pos + 2));
    if (r.lo > r.hi) throw CLI::ValidationError("range must be lo..hi with lo <= hi");
    return r;
}

json config_json(const std::string& command, const CommonOptions& opt, const json& extra) {
    json c;
    c["command"] = command;
    if (!opt.input.empty()) c["input"] = opt.input;
    if (!opt.example_id.empty()) c["example"] = opt.example_id;
    c["precision_bits"] = opt.precision_bits;
    c["jobs"] = opt.jobs;
    for (auto it = extra.begin(); it != extra.end(); ++it) c[it.key()] = it.value();
    return c;
}

void emit(const CommonOptions& opt, const json& doc, const std::string& csv_body = "") {
    std::string text = doc.dump(2);
    text.push_back('\n');
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + opt.out);
        f << text;
    }
    if (!opt.csv.empty()) {
        std::ofstream f(opt.csv, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + opt.csv);
        f << csv_body;
    }
}

constexpr const char* kRecordCsvHeader = "n,deg_q,lambda_n,m_n,tau_n,null_dimension,q_coefficients_re_im...";

int cmd_approx(const CommonOptions& opt, std::size_t n) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    SystemModel sys = load_system(opt, ctx);
    std::vector<CoefficientSeries> fs;
    for (const auto& c : sys.components) fs.push_back(taylor_coefficients(c, ctx));
    ApproximantRecord rec = hermite_pade(fs, sys.m, n, ctx);
    DefectDiagnostics d = defect_diagnostics(rec, sys.total_m(), sys.total_m(), ctx);

    json out;
    out["config"] = config_json("approx", opt, json{{"n", n}});
    out["record"] = record_to_json(rec, ctx);
    std::ostringstream csv;
    csv << kRecordCsvHeader << '\n' << record_to_csv_row(rec, d, ctx) << '\n';
    emit(opt, out, csv.str());
    return 0;
}

int cmd_sweep(const CommonOptions& opt, const Range& nr, bool l1) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    SystemModel sys = load_system(opt, ctx);
    SweepOptions so;
    so.jobs = opt.jobs;
    so.l1_normalize = l1;
    so.reference_from_last = true;
    SweepResult sw = sweep(sys, nr.lo, nr.hi, so, ctx);

    json out;
    out["config"] = config_json("sweep", opt,
                                json{{"n", {nr.lo, nr.hi}}, {"l1_normalize", l1}});
    out["q_reference"] = polynomial_to_json(sw.q_reference, ctx);
    out["records"] = json::array();
    std::ostringstream csv;
    csv << kRecordCsvHeader << ",norm_vs_reference\n";
    unsigned total = sys.total_m();
    const DefectDiagnostics* prev = nullptr;
    std::vector<DefectDiagnostics> diags;
    diags.reserve(sw.records.size());
    for (std::size_t i = 0; i < sw.records.size(); ++i) {
        const auto& rec = sw.records[i];
        diags.push_back(defect_diagnostics(rec, total, total, ctx, prev));
        prev = &diags.back();
        json rj = record_to_json(rec, ctx);
        if (i < sw.reference_norms.size())
            rj["norm_vs_reference"] = real_to_string(sw.reference_norms[i], ctx);
        out["records"].push_back(std::move(rj));
        csv << record_to_csv_row(rec, diags.back(), ctx);
        if (i < sw.reference_norms.size()) csv << ',' << real_to_string(sw.reference_norms[i], ctx);
        csv << '\n';
    }
    emit(opt, out, csv.str());
    return 0;
}

int cmd_system_poles(const CommonOptions& opt) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    SystemModel sys = load_system(opt, ctx);
    SystemPoleSet set = enumerate_system_poles(sys, ctx);
    auto indep = algebraically_independent(sys, ctx);
    auto stars = star_radii(sys, set, ctx);

    json out;
    out["config"] = config_json("system-poles", opt, {});
    out["system_poles"] = pole_set_to_json(set, ctx);
    out["independent"] = indep.independent;
    if (!indep.independent) {
        out["dependence_witness"] = json::array();
        for (const auto& c : indep.witness) out["dependence_witness"].push_back(complex_to_json(c, ctx));
    }
    out["star_radii"] = json::array();
    for (const auto& s : stars)
        out["star_radii"].push_back(json{{"disk_radius", real_to_string(s.disk_radius, ctx)},
                                         {"star_radius", real_to_string(s.star_radius, ctx)}});
    std::ostringstream csv;
    csv << "pole_re,pole_im,order,capacity\n";
    for (const auto& p : set.poles)
        csv << real_to_string(p.location.re, ctx) << ',' << real_to_string(p.location.im, ctx) << ','
            << p.order << ',' << real_to_string(p.capacity(), ctx) << '\n';
    emit(opt, out, csv.str());
    return 0;
}

int cmd_rates(const CommonOptions& opt, const Range& nr, const Range& window,
              const std::string& circle, std::size_t samples, std::size_t component,
              const std::string& xi_str, unsigned s_bar) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    SystemModel sys = load_system(opt, ctx);
    SweepOptions so;
    so.jobs = opt.jobs;
    so.reference_from_last = true;
    SweepResult sw = sweep(sys, nr.lo, nr.hi, so, ctx);

    json out;
    out["config"] = config_json(
        "rates", opt,
        json{{"n", {nr.lo, nr.hi}}, {"window", {window.lo, window.hi}}, {"samples", samples},
             {"component", component}, {"circle", circle}, {"xi", xi_str}, {"s_bar", s_bar}});
    out["denominator_rate"] =
        rate_to_json(fit_geometric_rate(sw.reference_norms, sw.n_min, window.lo, window.hi, ctx), ctx);
    out["clusters"] = clusters_to_json(cluster_zeros(sw, (std::min<std::size_t>)(20, sw.records.size()), ctx), ctx);
    if (!circle.empty()) {
        Real radius(circle);
        out["circle_rate"] = rate_to_json(
            convergence_on_circle(sw, sys, component, radius, samples, window.lo, window.hi, ctx), ctx);
    }
    if (!xi_str.empty()) {
        Complex xi = complex_from_json(json::parse(xi_str));
        auto dr = derivative_rates(sw, xi, s_bar, window.lo, window.hi, ctx);
        out["derivative_rates"] = json::array();
        for (const auto& est : dr.per_order) out["derivative_rates"].push_back(rate_to_json(est, ctx));
        out["derivative_rate_max_fitted"] = real_to_string(dr.max_fitted, ctx);
        out["derivative_rate_max_limsup"] = real_to_string(dr.max_limsup, ctx);
    }
    std::ostringstream csv;
    csv << "n,norm_vs_reference\n";
    for (std::size_t i = 0; i < sw.reference_norms.size(); ++i)
        csv << (sw.n_min + i) << ',' << real_to_string(sw.reference_norms[i], ctx) << '\n';
    emit(opt, out, csv.str());
    return 0;
}

int cmd_diagnose(const CommonOptions& opt, const Range& nr, unsigned m, unsigned m_star,
                 std::size_t component, std::size_t window) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    SystemModel sys = load_system(opt, ctx);
    if (component >= sys.components.size()) throw std::runtime_error("bad --component index");
    auto f = taylor_coefficients(model_normalized(sys.components[component], ctx), ctx);
    std::vector<ApproximantRecord> recs;
    for (std::size_t n = nr.lo; n <= nr.hi; ++n) recs.push_back(incomplete_pade(f, m, m_star, n, ctx));
    InverseDiagnosis diag = inverse_diagnosis(recs, m, m_star, window, ctx);

    json out;
    out["config"] = config_json("diagnose", opt,
                                json{{"n", {nr.lo, nr.hi}}, {"m", m}, {"m_star", m_star},
                                     {"component", component}, {"window", window}});
    out["diagnosis"] = diagnosis_to_json(diag, ctx);
    std::ostringstream csv;
    csv << kRecordCsvHeader << '\n';
    for (std::size_t i = 0; i < recs.size(); ++i)
        csv << record_to_csv_row(recs[i], diag.per_n[i], ctx) << '\n';
    emit(opt, out, csv.str());
    return 0;
}

int cmd_examples(const CommonOptions& opt) {
    PrecisionContext ctx(opt.precision_bits);
    ctx.activate();
    json out;
    out["config"] = config_json("examples", opt, {});
    out["examples"] = json::array();
    for (const auto& ex : examples()) {
        json ej;
        ej["id"] = ex.id;
        ej["system"] = system_to_json(ex.system, ctx);
        ej["notes"] = ex.truth.notes;
        out["examples"].push_back(std::move(ej));
    }
    emit(opt, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"row sequences of simultaneous rational approximants: solvers, "
                 "system-pole enumeration, and convergence-rate analysis"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string n_str = "2..40", window_str, circle_str, xi_str;
    std::size_t n_single = 10, samples = 256, component = 0, window_size = 20;
    unsigned m_opt = 1, m_star_opt = 1, s_bar = 0;
    bool l1 = false;

    auto* approx = app.add_subcommand("approx", "single record at one n");
    add_common(approx, opt);
    approx->add_option("--n", n_single, "order of contact")->required();

    auto* sw = app.add_subcommand("sweep", "records over a range of n");
    add_common(sw, opt);
    sw->add_option("--n", n_str, "range lo..hi")->required();
    sw->add_flag("--l1", l1, "report l1-normalized records");

    auto* sp = app.add_subcommand("system-poles", "enumerate system poles, radii, theta");
    add_common(sp, opt);

    auto* rates = app.add_subcommand("rates", "geometric-rate estimates over a sweep");
    add_common(rates, opt);
    rates->add_option("--n", n_str, "sweep range lo..hi")->required();
    rates->add_option("--window", window_str, "fit window lo..hi (default: trailing half)");
    rates->add_option("--circle", circle_str, "also fit the sup error on this circle radius");
    rates->add_option("--samples", samples, "circle sample count (default 256)");
    rates->add_option("--component", component, "component index for the circle fit");
    rates->add_option("--xi", xi_str, "derivative rates at this point, JSON complex");
    rates->add_option("--s-bar", s_bar, "max derivative order for --xi");

    auto* diag = app.add_subcommand("diagnose", "inverse-theory diagnostics for one component");
    add_common(diag, opt);
    diag->add_option("--n", n_str, "range lo..hi")->required();
    diag->add_option("--m", m_opt, "denominator degree bound")->required();
    diag->add_option("--m-star", m_star_opt, "defect condition count")->required();
    diag->add_option("--component", component, "component index (default 0)");
    diag->add_option("--window", window_size, "trailing window length (default 20)");

    auto* exs = app.add_subcommand("examples", "dump the builtin example catalog");
    add_common(exs, opt, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help text, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (approx->parsed()) return cmd_approx(opt, n_single);
        if (sw->parsed()) return cmd_sweep(opt, parse_range(n_str), l1);
        if (sp->parsed()) return cmd_system_poles(opt);
        if (rates->parsed()) {
            Range nr = parse_range(n_str);
            Range win = window_str.empty() ? Range{(nr.lo + nr.hi) / 2, nr.hi} : parse_range(window_str);
            return cmd_rates(opt, nr, win, circle_str, samples, component, xi_str, s_bar);
        }
        if (diag->parsed())
            return cmd_diagnose(opt, parse_range(n_str), m_opt, m_star_opt, component, window_size);
        if (exs->parsed()) return cmd_examples(opt);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
