// cdcurv: kernel inspection, curvature grid scans, similarity diagnostics,
// and one-command reproduction of the worked-example gallery.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdcurv/curvature.hpp"
#include "cdcurv/diagnostics.hpp"
#include "cdcurv/kernels.hpp"
#include "cdcurv/parallel.hpp"
#include "cdcurv/random_metric.hpp"
#include "cdcurv/shifts.hpp"

using nlohmann::json;

namespace {

json load_json_arg(const std::string& arg, const char* what) {
    std::string text = arg;
    if (!arg.empty() && arg.front() != '{' && arg.front() != '[') {
        std::ifstream in(arg);
        if (!in) throw cdcurv::ConfigError(std::string(what) + ": cannot open file " + arg);
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw cdcurv::ConfigError(std::string(what) + ": " + e.what());
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

void write_text(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw cdcurv::ConfigError("cannot open output file " + out);
    f << text;
}

void write_json(const json& j, const std::string& out) { write_text(j.dump(2) + "\n", out); }

struct CommonOpts {
    std::string kernel;
    std::string kernel2;
    std::string grid;
    int n = 30;
    double step = 1e-4;
    int order = 2;
    std::string out;
    std::string format = "json";
    std::uint64_t seed = 1;
};

json run_config(const std::string& command, const CommonOpts& o) {
    json c;
    c["command"] = command;
    if (!o.kernel.empty()) c["kernel"] = load_json_arg(o.kernel, "--kernel");
    if (!o.kernel2.empty()) c["kernel2"] = load_json_arg(o.kernel2, "--kernel2");
    if (!o.grid.empty()) c["grid"] = load_json_arg(o.grid, "--grid");
    c["n"] = o.n;
    c["step"] = o.step;
    c["order"] = o.order;
    c["format"] = o.format;
    c["seed"] = o.seed;
    return c;
}

void cmd_kernel(const CommonOpts& o) {
    const auto K = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel, "--kernel"));
    json j;
    j["config"] = run_config("kernel", o);
    j["descriptor"] = K.descriptor();
    json a = json::array();
    for (int i = 0; i < 10; ++i) {
        try {
            a.push_back(K.coeff(i));
        } catch (const cdcurv::ConfigError&) {
            break;  // tabulated rule shorter than 10
        }
    }
    j["a"] = a;
    json rho = json::array();
    for (int s = 0; s < static_cast<int>(a.size()); ++s) {
        std::vector<int> e(static_cast<size_t>(K.dim()), 0);
        e[0] = s;
        rho.push_back(K.weight(cdcurv::MultiIndex(e)));
    }
    j["rho_e1"] = rho;
    if (K.inverse_is_polynomial()) {
        j["b"] = cdcurv::inverse_coeffs(K.inverse_degree()).b;
    }
    write_json(j, o.out);
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
}

void cmd_curvature(const CommonOpts& o) {
    const auto K = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel, "--kernel"));
    const auto grid = cdcurv::GridSpec::from_json(load_json_arg(o.grid, "--grid"));
    if (grid.dim() != K.dim())
        throw cdcurv::ConfigError("grid and kernel dimensions disagree");
    const cdcurv::MetricField h = cdcurv::MetricField::kernel_line(K);
    cdcurv::WirtingerStencil st;
    st.step = o.step;
    st.order = o.order;

    const auto& pts = grid.points();
    std::vector<cdcurv::CurvatureTensor> tensors(pts.size());
    cdcurv::parallel_for(pts.size(), [&](size_t i) { tensors[i] = curvature(h, pts[i], st); });

    const int m = K.dim();
    if (o.format == "csv") {
        std::ostringstream csv;
        for (int c = 0; c < m; ++c) csv << (c ? "," : "") << "w" << c + 1 << "_re,w" << c + 1 << "_im";
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                csv << ",K[" << i + 1 << "][" << j + 1 << "][1][1]_re"
                    << ",K[" << i + 1 << "][" << j + 1 << "][1][1]_im";
        csv << "\n";
        for (size_t p = 0; p < pts.size(); ++p) {
            for (int c = 0; c < m; ++c)
                csv << (c ? "," : "") << fmt17(pts[p][c].real()) << "," << fmt17(pts[p][c].imag());
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    const cdcurv::Complex v = tensors[p].block(i, j)(0, 0);
                    csv << "," << fmt17(v.real()) << "," << fmt17(v.imag());
                }
            csv << "\n";
        }
        write_text(csv.str(), o.out);
    } else {
        json j;
        j["config"] = run_config("curvature", o);
        json points = json::array();
        for (size_t p = 0; p < pts.size(); ++p) {
            json pj;
            json w = json::array();
            for (int c = 0; c < m; ++c) w.push_back({pts[p][c].real(), pts[p][c].imag()});
            pj["w"] = w;
            json blocks = json::array();
            for (int i = 0; i < m; ++i) {
                json row = json::array();
                for (int jj = 0; jj < m; ++jj) {
                    const auto& B = tensors[p].block(i, jj);
                    json bj = json::array();
                    for (Eigen::Index r = 0; r < B.rows(); ++r) {
                        json rj = json::array();
                        for (Eigen::Index c = 0; c < B.cols(); ++c)
                            rj.push_back({B(r, c).real(), B(r, c).imag()});
                        bj.push_back(rj);
                    }
                    row.push_back(bj);
                }
                blocks.push_back(row);
            }
            pj["K"] = blocks;
            points.push_back(pj);
        }
        j["points"] = points;
        write_json(j, o.out);
    }
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
}

void cmd_similarity(const CommonOpts& o, int L, double low, double high) {
    const auto K1 = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel, "--kernel"));
    const auto K2 = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel2, "--kernel2"));
    const auto verdict = cdcurv::shift_similarity(K1, K2, L, low, high);
    json j;
    j["config"] = run_config("similarity", o);
    j["verdict"] = verdict.to_json();
    write_json(j, o.out);
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
}

void cmd_scan(const CommonOpts& o, int axis, const std::vector<double>& radii) {
    const auto K1 = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel, "--kernel"));
    const auto K2 = cdcurv::DiagonalKernel::from_json(load_json_arg(o.kernel2, "--kernel2"));
    const auto scan = cdcurv::curvature_ratio_scan(cdcurv::MetricField::kernel_line(K1),
                                                   cdcurv::MetricField::kernel_line(K2),
                                                   axis, radii);
    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "r,ratio\n";
        for (size_t i = 0; i < scan.radii.size(); ++i)
            csv << fmt17(scan.radii[i]) << "," << fmt17(scan.values[i]) << "\n";
        write_text(csv.str(), o.out);
    } else {
        json j;
        j["config"] = run_config("scan", o);
        j["axis"] = scan.axis;
        j["radii"] = scan.radii;
        j["values"] = scan.values;
        write_json(j, o.out);
    }
    if (!o.out.empty()) std::cout << "wrote " << o.out << "\n";
}

struct Check {
    std::string name;
    double computed;
    double expected;
    double tol;
    bool pass() const { return std::abs(computed - expected) <= tol; }
};

int report_checks(const std::string& id, const std::vector<Check>& checks,
                  const CommonOpts& o) {
    bool all = true;
    json items = json::array();
    for (const auto& c : checks) {
        const bool p = c.pass();
        all = all && p;
        std::cout << id << ": " << c.name << ": computed=" << c.computed
                  << " expected=" << c.expected << " tol=" << c.tol << " "
                  << (p ? "PASS" : "FAIL") << "\n";
        items.push_back({{"name", c.name},
                         {"computed", c.computed},
                         {"expected", c.expected},
                         {"tol", c.tol},
                         {"pass", p}});
    }
    std::cout << id << ": " << (all ? "PASS" : "FAIL") << "\n";
    if (!o.out.empty()) {
        json j;
        j["config"] = run_config("reproduce", o);
        j["example"] = id;
        j["checks"] = items;
        j["pass"] = all;
        write_json(j, o.out);
    }
    return all ? 0 : 1;
}

double logplus_ratio_closed(double r) {
    const double L = 1.0 - std::log(1.0 - r * r);
    return 1.0 + 1.0 / L - (r * r / (1.0 - r * r + r * r)) / (L * L);
}

int cmd_reproduce(const std::string& id, const CommonOpts& o) {
    using namespace cdcurv;
    std::vector<Check> checks;
    if (id == "log-kernel") {
        const auto scan = curvature_ratio_scan(MetricField::kernel_line(DiagonalKernel::log_plus(2)),
                                               MetricField::kernel_line(DiagonalKernel::power(2, 1.0)),
                                               0, {0.9, 0.99, 0.999});
        for (size_t i = 0; i < scan.radii.size(); ++i) {
            const double expect = logplus_ratio_closed(scan.radii[i]);
            checks.push_back({"ratio(r=" + std::to_string(scan.radii[i]) + ")",
                              scan.values[i], expect, 1e-6 * std::abs(expect)});
        }
        checks.push_back({"|ratio-1| at r=0.999", std::abs(scan.values[2] - 1.0), 0.0, 0.13});
    } else if (id == "fb2") {
        const FbReport rep = reproduce_fb_example(40);
        double det_worst = 0.0, trace_worst = 0.0;
        for (size_t i = 0; i < rep.radii.size(); ++i) {
            det_worst = std::max(det_worst, std::abs(rep.det_scaled[i] - 2.0));
            trace_worst = std::max(trace_worst, std::abs(rep.trace_scaled[i] + 4.0));
        }
        checks.push_back({"det h_T (1-r^2)^4 deviation from 2", det_worst, 0.0, 1e-6});
        checks.push_back({"trace K_T (1-r^2)^2 deviation from -4", trace_worst, 0.0, 1e-4});
        checks.push_back({"trace gap to diagonal tuple", rep.max_trace_diff, 0.0, 1e-6});
        std::cout << "fb2: note: " << rep.caveat << "\n";
    } else if (id == "noncontraction") {
        const std::vector<std::vector<Complex>> rows(4, {Complex(1.0, 0.0)});
        const auto exp = noncontraction_experiment(rows, 40);
        checks.push_back({"largest singular value", exp.largest_singular_value,
                          std::sqrt(5.0), 1e-8});
        checks.push_back({"curvature-difference residual", exp.curvature_residual, 0.0, 1e-4});
        checks.push_back({"hypothesis holds", exp.hypothesis_ok ? 1.0 : 0.0, 1.0, 0.0});
    } else if (id == "hs-identity") {
        const DiagonalKernel K = DiagonalKernel::power(2, 1.0);
        const ShiftTuple S = ShiftTuple::build(K, 30);
        std::vector<SectionEval> frame = {
            [&S](const Point& p) { return joint_eigenvector(S, p); }};
        WirtingerStencil st;
        st.step = 1e-3;
        st.order = 4;
        const auto at0 = projection_hs_identity(frame, origin(2), st);
        const auto at3 = projection_hs_identity(frame, Point({{0.3, 0.0}, {0.0, 0.0}}), st);
        checks.push_back({"hs at 0", at0.hs, 2.0, 1e-6});
        checks.push_back({"hs + trace at w=(0.3,0)", at3.hs + at3.trace, 0.0,
                          1e-3 * std::abs(at3.trace)});
    } else if (id == "tensor-lemma") {
        const MetricField h1 = random_polynomial_metric(2, 2, 1, o.seed);
        const MetricField h2 = random_polynomial_metric(2, 2, 1, o.seed + 1000);
        WirtingerStencil st;
        st.step = 1e-3;
        st.order = 2;
        const Point w({{0.15, 0.1}, {-0.2, 0.05}});
        checks.push_back({"additivity residual",
                          tensor_additivity_residual(h1, h2, w, 2, st), 0.0, 1e-4});
    } else if (id == "det-lemma") {
        WirtingerStencil st;
        st.step = 1e-3;
        st.order = 4;
        const MetricField h = random_polynomial_metric(3, 2, 1, o.seed);
        const Point w({{0.2, -0.1}, {0.1, 0.15}});
        checks.push_back({"det lemma relative residual", det_lemma_residual(h, w, st), 0.0, 1e-6});
    } else if (id == "hypercontraction") {
        double worst = 0.0;
        for (int m = 1; m <= 2; ++m)
            for (int k = 1; k <= 3; ++k) {
                const ShiftTuple S = ShiftTuple::build(DiagonalKernel::power(m, k), 25);
                for (int l = 0; l <= k; ++l)
                    worst = std::min(worst, hypercontraction_defect(S, l).min_eigenvalue);
            }
        checks.push_back({"min eigenvalue over all levels", std::min(worst, 0.0), 0.0, 1e-10});
    } else {
        throw ConfigError("unknown reproduce id: " + id);
    }
    return report_checks(id, checks, o);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"curvature and similarity diagnostics for diagonal kernels on the ball"};
    app.require_subcommand(1);

    CommonOpts o;
    int L = 500, axis = 0;
    double low = 1e-2, high = 1e2;
    std::vector<double> radii;
    std::string example_id;

    auto add_common = [&](CLI::App* c, bool needs_kernel) {
        if (needs_kernel) c->add_option("--kernel", o.kernel, "kernel descriptor (inline JSON or file)")->required();
        c->add_option("--n", o.n, "truncation degree");
        c->add_option("--step", o.step, "stencil step");
        c->add_option("--order", o.order, "stencil order (2 or 4)");
        c->add_option("--out", o.out, "output path (default stdout)");
        c->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        c->add_option("--seed", o.seed, "seed for randomized checks");
    };

    auto* ck = app.add_subcommand("kernel", "inspect a kernel descriptor");
    add_common(ck, true);

    auto* cc = app.add_subcommand("curvature", "line-bundle curvature over a grid");
    add_common(cc, true);
    cc->add_option("--grid", o.grid, "grid spec (inline JSON or file)")->required();

    auto* cs = app.add_subcommand("similarity", "weighted-shift similarity verdict");
    add_common(cs, true);
    cs->add_option("--kernel2", o.kernel2, "second kernel descriptor")->required();
    cs->add_option("--l", L, "ray length");
    cs->add_option("--low", low, "lower exit bound");
    cs->add_option("--high", high, "upper exit bound");

    auto* csc = app.add_subcommand("scan", "curvature-ratio scan along an axis");
    add_common(csc, true);
    csc->add_option("--kernel2", o.kernel2, "second kernel descriptor")->required();
    csc->add_option("--axis", axis, "scan axis (0-based)");
    csc->add_option("--radii", radii, "radii in [0,1)")->required();

    auto* cr = app.add_subcommand("reproduce", "run a worked example");
    cr->add_option("id", example_id,
                   "log-kernel|fb2|noncontraction|hs-identity|tensor-lemma|det-lemma|hypercontraction")
        ->required();
    add_common(cr, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 5;
    }

    try {
        if (ck->parsed()) cmd_kernel(o);
        else if (cc->parsed()) cmd_curvature(o);
        else if (cs->parsed()) cmd_similarity(o, L, low, high);
        else if (csc->parsed()) cmd_scan(o, axis, radii);
        else if (cr->parsed()) return cmd_reproduce(example_id, o);
    } catch (const cdcurv::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
