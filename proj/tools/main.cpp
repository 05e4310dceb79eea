#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smalelab/serialize.hpp"

using namespace smalelab;

namespace {

struct GlobalOptions {
    double tol = 1e-9;
    uint64_t seed = 0;
    int samples = 0;
    std::string format = "json";
    std::string out;
};

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void emit(const GlobalOptions& opts, const json& doc, const std::string& csv) {
    std::string text;
    if (opts.format == "csv") {
        if (csv.empty())
            throw CLI::ValidationError("--format", "csv is not available for this subcommand");
        text = csv;
    } else {
        text = doc.dump(2);
        text += '\n';
    }
    if (opts.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream file(opts.out);
        if (!file)
            throw CLI::ValidationError("--out", "cannot open " + opts.out);
        file << text;
    }
}

json parse_document(const std::string& arg, const char* what) {
    std::string text = arg;
    if (arg == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        text = buffer.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& err) {
        throw CLI::ValidationError(what, err.what());
    }
}

std::string trace_csv(const ContinuationTrace& trace) {
    std::string out = "t,u_re,u_im,zeta_re,zeta_im,residual\n";
    for (const TraceSample& s : trace.samples) {
        out += fmt17(s.t) + "," + fmt17(s.u.real()) + "," + fmt17(s.u.imag()) + "," +
               fmt17(s.zeta.real()) + "," + fmt17(s.zeta.imag()) + "," + fmt17(s.residual) + "\n";
    }
    return out;
}

std::string rho_csv(const RhoReport& report) {
    std::string out = "zeta_re,zeta_im,rho,derivative_residual,essential,second_re,second_im\n";
    for (const CriticalPointRecord& r : report.records) {
        out += fmt17(r.zeta.real()) + "," + fmt17(r.zeta.imag()) + "," + fmt17(r.rho) + "," +
               fmt17(r.derivative_residual) + "," + (r.essential ? "1" : "0") + "," +
               fmt17(r.second_derivative.real()) + "," + fmt17(r.second_derivative.imag()) + "\n";
    }
    return out;
}

std::string roots_csv(const RootFindReport& report) {
    std::string out = "root_re,root_im,residual\n";
    for (size_t i = 0; i < report.roots.size(); ++i) {
        out += fmt17(report.roots[i].real()) + "," + fmt17(report.roots[i].imag()) + "," +
               fmt17(report.residuals[i]) + "\n";
    }
    return out;
}

std::string atlas_csv(const SurfaceAtlas& atlas) {
    std::string out = "branch_re,branch_im,projection_re,projection_im\n";
    for (size_t i = 0; i < atlas.branch_points.size(); ++i) {
        out += fmt17(atlas.branch_points[i].real()) + "," + fmt17(atlas.branch_points[i].imag()) +
               "," + fmt17(atlas.branch_projections[i].real()) + "," +
               fmt17(atlas.branch_projections[i].imag()) + "\n";
    }
    return out;
}

std::string saturation_csv(const SaturationReport& report) {
    std::string out =
        "step,rho_before,rho_after,moved_from_re,moved_from_im,moved_to_re,moved_to_im,"
        "certificate_ok\n";
    for (size_t i = 0; i < report.steps.size(); ++i) {
        const DeformationStep& s = report.steps[i];
        out += std::to_string(i) + "," + fmt17(s.rho_before) + "," + fmt17(s.rho_after) + "," +
               fmt17(s.moved_root_from.real()) + "," + fmt17(s.moved_root_from.imag()) + "," +
               fmt17(s.moved_root_to.real()) + "," + fmt17(s.moved_root_to.imag()) + "," +
               (s.certificate_ok ? "1" : "0") + "\n";
    }
    return out;
}

std::string search_csv(const SearchResult& result) {
    std::string out = "root_re,root_im,best_rho,gap_to_bound\n";
    for (const Cplx& z : result.best_roots) {
        out += fmt17(z.real()) + "," + fmt17(z.imag()) + "," + fmt17(result.best_rho) + "," +
               fmt17(result.gap_to_bound) + "\n";
    }
    return out;
}

std::string verify_csv(const ExperimentSummary& summary) {
    std::string out =
        "degree,samples,rho_min,rho_max,margin_min,margin_max,margin_mean,smale_ok,violations\n";
    for (const DegreeSummary& d : summary.degrees) {
        out += std::to_string(d.degree) + "," + std::to_string(d.samples) + "," +
               fmt17(d.rho_min) + "," + fmt17(d.rho_max) + "," + fmt17(d.margin_min) + "," +
               fmt17(d.margin_max) + "," + fmt17(d.margin_mean) + "," +
               (d.smale_bound_ok ? "1" : "0") + "," + std::to_string(d.violations.size()) + "\n";
    }
    return out;
}

std::string probe_csv(const std::vector<BlowupProbeRow>& table) {
    std::string out = "u0_re,u0_im,rho,sheet,zeta_re,zeta_im,f_re,f_im,is_pole,flag_ok\n";
    for (const BlowupProbeRow& row : table) {
        for (size_t i = 0; i < row.sheets.size(); ++i) {
            const SheetProbeValue& s = row.sheets[i];
            out += fmt17(row.u0.real()) + "," + fmt17(row.u0.imag()) + "," + fmt17(row.rho) +
                   "," + std::to_string(i) + "," + fmt17(s.zeta.real()) + "," +
                   fmt17(s.zeta.imag()) + "," + fmt17(s.f.real()) + "," + fmt17(s.f.imag()) +
                   "," + (s.is_pole_sheet ? "1" : "0") + "," + (s.flag_ok ? "1" : "0") + "\n";
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical laboratory for Smale's mean value problem"};
    app.require_subcommand(1);

    GlobalOptions opts;
    app.add_option("--tol", opts.tol, "Tolerance for bound checks");
    app.add_option("--seed", opts.seed, "Seed for randomized commands");
    app.add_option("--samples", opts.samples, "Sample count override");
    app.add_option("--format", opts.format, "Output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", opts.out, "Write output to a file instead of stdout");

    std::string poly_arg, family_arg, path_arg;
    int degree = 3, degree_max = 0, starts = 64, max_iter = 4000, root_index = -1;
    double blow_r = 1.0;

    CLI::App* cmd_rho = app.add_subcommand("rho", "Associated number of a polynomial");
    cmd_rho->add_option("--poly", poly_arg, "Polynomial document (JSON, or - for stdin)")
        ->required();

    CLI::App* cmd_crit = app.add_subcommand("critical-points", "Roots of the derivative");
    cmd_crit->add_option("--poly", poly_arg, "Polynomial document")->required();

    CLI::App* cmd_cont = app.add_subcommand("continue", "Continue a critical point along a path");
    cmd_cont->add_option("--family", family_arg, "Family document")->required();
    cmd_cont->add_option("--path", path_arg, "Path document")->required();

    CLI::App* cmd_mono = app.add_subcommand("monodromy", "Fiber permutation around a closed loop");
    cmd_mono->add_option("--family", family_arg, "Family document")->required();
    cmd_mono->add_option("--path", path_arg, "Closed path document")->required();

    CLI::App* cmd_branch = app.add_subcommand("branch-points", "Branch points and projections");
    cmd_branch->add_option("--family", family_arg, "Family document")->required();
    bool classify = false;
    cmd_branch->add_flag("--classify-sheets", classify, "Also classify the sheets at infinity");

    CLI::App* cmd_deform = app.add_subcommand("deform", "Push zeros to the unit circle");
    cmd_deform->add_option("--poly", poly_arg, "Polynomial document")->required();
    cmd_deform->add_option("--root-index", root_index,
                           "Push only this root (sorted nonzero roots); default saturates all");
    CLI::App* cmd_saturate = app.add_subcommand("saturate", "Alias of deform");
    cmd_saturate->add_option("--poly", poly_arg, "Polynomial document")->required();
    cmd_saturate->add_option("--root-index", root_index, "Push only this root");

    CLI::App* cmd_search = app.add_subcommand("search", "Search for maximal polynomials");
    cmd_search->add_option("--degree", degree, "Polynomial degree")->required();
    cmd_search->add_option("--starts", starts, "Multistart count");
    cmd_search->add_option("--max-iter", max_iter, "Iteration cap per start");

    CLI::App* cmd_tischler =
        app.add_subcommand("tischler", "Search restricted to roots on the unit circle");
    cmd_tischler->add_option("--degree", degree, "Polynomial degree")->required();
    cmd_tischler->add_option("--starts", starts, "Multistart count");
    cmd_tischler->add_option("--max-iter", max_iter, "Iteration cap per start");

    CLI::App* cmd_verify =
        app.add_subcommand("verify", "Sample random class members and check the bound");
    cmd_verify->add_option("--degree", degree, "Degree (or range start)")->required();
    cmd_verify->add_option("--degree-max", degree_max, "Range end (defaults to --degree)");

    CLI::App* cmd_probe = app.add_subcommand("probe-blowup", "Large-radius transfer-factor table");
    cmd_probe->add_option("--family", family_arg, "Family document")->required();
    cmd_probe->add_option("--r", blow_r, "Radius of the sampled circle")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        return app.exit(err) == 0 ? 0 : 2;
    }

    try {
        if (cmd_rho->parsed()) {
            const RhoReport report = rho(polynomial_from_json(parse_document(poly_arg, "--poly")));
            emit(opts, to_json(report), rho_csv(report));
            return 0;
        }
        if (cmd_crit->parsed()) {
            const RootFindReport report =
                critical_points(polynomial_from_json(parse_document(poly_arg, "--poly")));
            emit(opts, to_json(report), roots_csv(report));
            return report.converged ? 0 : 1;
        }
        if (cmd_cont->parsed()) {
            const VariationFamily fam = family_from_json(parse_document(family_arg, "--family"));
            const PathSpec path = path_from_json(parse_document(path_arg, "--path"));
            const ContinuationTrace trace = continue_critical_point(fam, path);
            json doc = to_json(trace);
            doc["rho_identity_discrepancy"] = rho_identity_check(fam, trace);
            emit(opts, doc, trace_csv(trace));
            return 0;
        }
        if (cmd_mono->parsed()) {
            const VariationFamily fam = family_from_json(parse_document(family_arg, "--family"));
            const PathSpec loop = path_from_json(parse_document(path_arg, "--path"));
            const std::vector<int> perm = monodromy(fam, loop);
            json doc{{"permutation", perm}};
            json fiber_doc = json::array();
            for (const Cplx& z : fiber(fam, loop.start()))
                fiber_doc.push_back(to_json(z));
            doc["fiber"] = fiber_doc;
            std::string csv = "sheet,maps_to\n";
            for (size_t i = 0; i < perm.size(); ++i)
                csv += std::to_string(i) + "," + std::to_string(perm[i]) + "\n";
            emit(opts, doc, csv);
            return 0;
        }
        if (cmd_branch->parsed()) {
            const VariationFamily fam = family_from_json(parse_document(family_arg, "--family"));
            SurfaceAtlas atlas = branch_points(fam);
            if (classify)
                atlas.sheets_at_infinity = classify_sheets_at_infinity(fam);
            emit(opts, to_json(atlas), atlas_csv(atlas));
            return 0;
        }
        if (cmd_deform->parsed() || cmd_saturate->parsed()) {
            const Polynomial p = polynomial_from_json(parse_document(poly_arg, "--poly"));
            const int samples = opts.samples > 0 ? opts.samples : 720;
            bool certified = true;
            json doc;
            std::string csv;
            if (root_index >= 0) {
                const DeformationStep step =
                    push_zero_to_circle(normalize_to_class(p).poly, root_index, samples);
                certified = step.certificate_ok;
                doc = to_json(step);
                SaturationReport single;
                single.steps.push_back(step);
                csv = saturation_csv(single);
            } else {
                const SaturationReport report = circle_saturate(p, samples);
                for (const DeformationStep& step : report.steps)
                    certified = certified && step.certificate_ok;
                doc = to_json(report);
                csv = saturation_csv(report);
            }
            emit(opts, doc, csv);
            return certified ? 0 : 1;
        }
        if (cmd_search->parsed() || cmd_tischler->parsed()) {
            SearchConfig config;
            config.degree = degree;
            config.starts = starts;
            config.max_iterations = max_iter;
            config.seed = opts.seed;
            config.circle_only = cmd_tischler->parsed();
            const SearchResult result =
                config.circle_only ? maximize_rho_circle(config) : maximize_rho(config);
            emit(opts, to_json(result), search_csv(result));
            return 0;
        }
        if (cmd_verify->parsed()) {
            const int hi = degree_max > 0 ? degree_max : degree;
            const int samples = opts.samples > 0 ? opts.samples : 1000;
            const ExperimentSummary summary =
                verify_bound(degree, hi, samples, opts.seed, opts.tol);
            emit(opts, to_json(summary), verify_csv(summary));
            for (const DegreeSummary& d : summary.degrees)
                if (!d.violations.empty() || !d.smale_bound_ok)
                    return 1;
            return 0;
        }
        if (cmd_probe->parsed()) {
            const VariationFamily fam = family_from_json(parse_document(family_arg, "--family"));
            const int samples = opts.samples > 0 ? opts.samples : 16;
            const std::vector<BlowupProbeRow> table = blowup_probe(fam, blow_r, samples);
            emit(opts, to_json(table), probe_csv(table));
            return 0;
        }
    } catch (const CLI::ValidationError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 2;
}
