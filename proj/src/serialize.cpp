#include "smalelab/serialize.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace smalelab {

namespace {

bool lex_less(Cplx a, Cplx b) {
    if (a.real() != b.real())
        return a.real() < b.real();
    return a.imag() < b.imag();
}

json complex_list(const std::vector<Cplx>& zs) {
    json arr = json::array();
    for (Cplx z : zs)
        arr.push_back(to_json(z));
    return arr;
}

std::vector<Cplx> complex_list_from(const json& arr, const char* what) {
    if (!arr.is_array())
        throw std::invalid_argument(std::string("document: ") + what + " must be an array");
    std::vector<Cplx> out;
    out.reserve(arr.size());
    for (const json& item : arr)
        out.push_back(complex_from_json(item));
    return out;
}

}  // namespace

json to_json(Cplx z) {
    return json::array({z.real(), z.imag()});
}

Cplx complex_from_json(const json& j) {
    if (j.is_number())
        return Cplx(j.get<double>(), 0.0);
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw std::invalid_argument("document: a complex number must be [re, im]");
    Cplx z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z))
        throw std::invalid_argument("document: non-finite complex number");
    return z;
}

json to_json(const Polynomial& p) {
    json arr = json::array();
    for (Cplx c : p.coefficients())
        arr.push_back(to_json(c));
    return json{{"coeffs", arr}};
}

Polynomial polynomial_from_json(const json& doc) {
    if (!doc.is_object())
        throw std::invalid_argument("document: polynomial must be an object");
    const bool has_coeffs = doc.contains("coeffs");
    const bool has_roots = doc.contains("roots");
    if (has_coeffs == has_roots)
        throw std::invalid_argument(
            "document: polynomial needs exactly one of \"coeffs\" or \"roots\"");
    if (has_coeffs)
        return Polynomial(complex_list_from(doc["coeffs"], "coeffs"));
    RootConfiguration cfg;
    cfg.roots = complex_list_from(doc["roots"], "roots");
    cfg.includes_origin = doc.value("include_origin", true);
    Cplx leading(1.0);
    if (doc.contains("leading"))
        leading = complex_from_json(doc["leading"]);
    return from_roots(cfg, leading);
}

json to_json(const RootFindReport& report) {
    return json{{"roots", complex_list(report.roots)},
                {"residuals", report.residuals},
                {"iterations", report.iterations},
                {"converged", report.converged}};
}

json to_json(const std::vector<RootCluster>& clusters) {
    json arr = json::array();
    for (const RootCluster& c : clusters)
        arr.push_back(json{{"root", to_json(c.center)}, {"multiplicity", c.multiplicity}});
    return arr;
}

json to_json(const CriticalPointRecord& record) {
    return json{{"zeta", to_json(record.zeta)},
                {"derivative_residual", record.derivative_residual},
                {"rho", record.rho},
                {"essential", record.essential},
                {"second_derivative", to_json(record.second_derivative)}};
}

json to_json(const RhoReport& report) {
    json records = json::array();
    for (const CriticalPointRecord& r : report.records)
        records.push_back(to_json(r));
    return json{{"rho", report.rho},
                {"margin", report.margin},
                {"in_class", report.in_class},
                {"simple", report.simple},
                {"essential_indices", report.essential_indices},
                {"records", records},
                {"diagnostic", report.diagnostic}};
}

json to_json(const ClassCheck& check) {
    return json{{"in_class", check.in_class},
                {"monic", check.monic},
                {"vanishes_at_origin", check.vanishes_at_origin},
                {"linear_term_nonzero", check.linear_term_nonzero},
                {"critical_values_nonzero", check.critical_values_nonzero},
                {"diagnostic", check.diagnostic}};
}

json to_json(const PathSpec& path) {
    json segments = json::array();
    for (const PathSegment& seg : path.segments) {
        if (const auto* line = std::get_if<LineSegment>(&seg)) {
            segments.push_back(json{{"from", to_json(line->from)}, {"to", to_json(line->to)}});
        } else {
            const auto& arc = std::get<ArcSegment>(seg);
            segments.push_back(json{{"center", to_json(arc.center)},
                                    {"radius", arc.radius},
                                    {"from_angle", arc.from_angle},
                                    {"to_angle", arc.to_angle}});
        }
    }
    return json{{"segments", segments}, {"samples_hint", path.samples_hint}};
}

PathSpec path_from_json(const json& doc) {
    // Two accepted shapes: a waypoint/arc list, or the serialized segment form.
    if (doc.is_object() && doc.contains("segments")) {
        PathSpec path;
        path.samples_hint = doc.value("samples_hint", 0);
        for (const json& seg : doc["segments"]) {
            if (seg.contains("center")) {
                path.segments.push_back(ArcSegment{complex_from_json(seg.at("center")),
                                                   seg.at("radius").get<double>(),
                                                   seg.at("from_angle").get<double>(),
                                                   seg.at("to_angle").get<double>()});
            } else {
                path.segments.push_back(LineSegment{complex_from_json(seg.at("from")),
                                                    complex_from_json(seg.at("to"))});
            }
        }
        if (path.segments.empty())
            throw std::invalid_argument("document: path has no segments");
        return path;
    }
    if (!doc.is_array() || doc.size() < 2)
        throw std::invalid_argument("document: a path needs at least 2 waypoints");
    PathSpec path;
    Cplx cursor(0.0);
    bool have_cursor = false;
    for (const json& item : doc) {
        if (item.is_object()) {
            // {"center":..., "radius":..., "from_angle":..., "to_angle":..., "turns":...}
            const Cplx center = complex_from_json(item.at("center"));
            const double radius = item.at("radius").get<double>();
            const double a0 = item.at("from_angle").get<double>();
            double a1 = item.value("to_angle", a0);
            a1 += 2.0 * std::numbers::pi * item.value("turns", (a1 == a0) ? 1 : 0);
            ArcSegment arc{center, radius, a0, a1};
            const Cplx arc_start = center + radius * Cplx(std::cos(a0), std::sin(a0));
            if (have_cursor && std::abs(cursor - arc_start) > 1e-9 * (1.0 + std::abs(cursor)))
                path.segments.push_back(LineSegment{cursor, arc_start});
            path.segments.push_back(arc);
            cursor = center + radius * Cplx(std::cos(a1), std::sin(a1));
            have_cursor = true;
        } else {
            const Cplx w = complex_from_json(item);
            if (have_cursor)
                path.segments.push_back(LineSegment{cursor, w});
            cursor = w;
            have_cursor = true;
        }
    }
    if (path.segments.empty())
        throw std::invalid_argument("document: path has no segments");
    return path;
}

json to_json(const VariationFamily& fam) {
    return json{{"q", to_json(fam.q)},
                {"fixed_roots", complex_list(fam.fixed_roots)},
                {"base_u", to_json(fam.base_u)},
                {"anchor_zeta", to_json(fam.anchor_zeta)},
                {"degree_n", fam.degree_n},
                {"prefactor", to_json(fam.prefactor)},
                {"rho_anchor", fam.rho_anchor}};
}

VariationFamily family_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("poly"))
        throw std::invalid_argument("document: family needs a \"poly\" member");
    const Polynomial p = polynomial_from_json(doc["poly"]);

    RootFindReport roots = all_roots(p);
    std::vector<Cplx> nonzero;
    for (const Cplx& z : roots.roots)
        if (std::abs(z) > 1e-12)
            nonzero.push_back(z);
    std::sort(nonzero.begin(), nonzero.end(), lex_less);

    auto nearest = [](const std::vector<Cplx>& items, Cplx target, const char* what) {
        if (items.empty())
            throw std::invalid_argument(std::string("document: no candidates for ") + what);
        size_t best = 0;
        for (size_t i = 1; i < items.size(); ++i)
            if (std::abs(items[i] - target) < std::abs(items[best] - target))
                best = i;
        return static_cast<int>(best);
    };

    int moving_index = -1;
    if (doc.contains("moving_root_index"))
        moving_index = doc["moving_root_index"].get<int>();
    else if (doc.contains("moving_root"))
        moving_index = nearest(nonzero, complex_from_json(doc["moving_root"]), "moving_root");
    else {
        // default: the unique nonzero root of smallest modulus
        int best = 0;
        int ties = 0;
        for (int i = 1; i < static_cast<int>(nonzero.size()); ++i)
            if (std::abs(nonzero[static_cast<size_t>(i)]) <
                std::abs(nonzero[static_cast<size_t>(best)]) - 1e-12)
                best = i;
        for (int i = 0; i < static_cast<int>(nonzero.size()); ++i)
            if (std::abs(std::abs(nonzero[static_cast<size_t>(i)]) -
                         std::abs(nonzero[static_cast<size_t>(best)])) <= 1e-12)
                ++ties;
        if (ties > 1)
            throw std::invalid_argument(
                "document: moving root is ambiguous, specify moving_root or moving_root_index");
        moving_index = best;
    }

    int anchor_index = 0;
    if (doc.contains("anchor_index")) {
        anchor_index = doc["anchor_index"].get<int>();
    } else if (doc.contains("anchor")) {
        RootFindReport crit = critical_points(p);
        std::vector<Cplx> zetas = crit.roots;
        std::sort(zetas.begin(), zetas.end(), lex_less);
        anchor_index = nearest(zetas, complex_from_json(doc["anchor"]), "anchor");
    }
    return build_family(p, moving_index, anchor_index);
}

json to_json(const TraceSample& sample) {
    return json{{"t", sample.t},
                {"u", to_json(sample.u)},
                {"zeta", to_json(sample.zeta)},
                {"zeta_prime", to_json(sample.zeta_prime)},
                {"residual", sample.residual}};
}

json to_json(const ContinuationTrace& trace) {
    json samples = json::array();
    for (const TraceSample& s : trace.samples)
        samples.push_back(to_json(s));
    return json{{"path", to_json(trace.path)},
                {"samples", samples},
                {"f_closed", to_json(trace.f_closed)},
                {"f_integral", to_json(trace.f_integral)},
                {"g_value", to_json(trace.g_value)},
                {"rho_endpoint", trace.rho_endpoint},
                {"step_count", trace.step_count},
                {"min_branch_distance", trace.min_branch_distance}};
}

ContinuationTrace trace_from_json(const json& doc) {
    ContinuationTrace trace;
    trace.path = path_from_json(doc.at("path"));
    for (const json& s : doc.at("samples")) {
        trace.samples.push_back(TraceSample{s.at("t").get<double>(),
                                            complex_from_json(s.at("u")),
                                            complex_from_json(s.at("zeta")),
                                            complex_from_json(s.at("zeta_prime")),
                                            s.at("residual").get<double>()});
    }
    trace.f_closed = complex_from_json(doc.at("f_closed"));
    trace.f_integral = complex_from_json(doc.at("f_integral"));
    trace.g_value = complex_from_json(doc.at("g_value"));
    trace.rho_endpoint = doc.at("rho_endpoint").get<double>();
    trace.step_count = doc.at("step_count").get<int>();
    trace.min_branch_distance = doc.at("min_branch_distance").get<double>();
    return trace;
}

json to_json(const SheetInfo& sheet) {
    json j{{"kind", sheet.kind == SheetInfo::Kind::pole_sheet ? "pole_sheet" : "finite_sheet"},
           {"zeta_start", to_json(sheet.zeta_start)}};
    j["xi"] = sheet.xi ? to_json(*sheet.xi) : json(nullptr);
    j["c"] = sheet.c ? to_json(*sheet.c) : json(nullptr);
    j["u_over_zeta_limit"] = sheet.u_over_zeta_limit ? json(*sheet.u_over_zeta_limit) : json(nullptr);
    j["pole_order_estimate"] =
        sheet.pole_order_estimate ? json(*sheet.pole_order_estimate) : json(nullptr);
    return j;
}

json to_json(const SurfaceAtlas& atlas) {
    json sheets = json::array();
    for (const SheetInfo& s : atlas.sheets_at_infinity)
        sheets.push_back(to_json(s));
    return json{{"branch_points", complex_list(atlas.branch_points)},
                {"branch_projections", complex_list(atlas.branch_projections)},
                {"sheet_count", atlas.sheet_count},
                {"sheets_at_infinity", sheets}};
}

json to_json(const DeformationStep& step) {
    return json{{"before", to_json(step.before)},
                {"after", to_json(step.after)},
                {"moved_root_from", to_json(step.moved_root_from)},
                {"moved_root_to", to_json(step.moved_root_to)},
                {"rho_before", step.rho_before},
                {"rho_after", step.rho_after},
                {"boundary_samples", step.boundary_samples},
                {"certificate_ok", step.certificate_ok},
                {"diagnostic", step.diagnostic}};
}

json to_json(const SaturationReport& report) {
    json steps = json::array();
    for (const DeformationStep& s : report.steps)
        steps.push_back(to_json(s));
    return json{{"steps", steps},
                {"final", to_json(report.final)},
                {"rho_trajectory", report.rho_trajectory},
                {"all_on_circle", report.all_on_circle}};
}

SaturationReport saturation_from_json(const json& doc) {
    SaturationReport report;
    for (const json& s : doc.at("steps")) {
        DeformationStep step;
        step.before = polynomial_from_json(s.at("before"));
        step.after = polynomial_from_json(s.at("after"));
        step.moved_root_from = complex_from_json(s.at("moved_root_from"));
        step.moved_root_to = complex_from_json(s.at("moved_root_to"));
        step.rho_before = s.at("rho_before").get<double>();
        step.rho_after = s.at("rho_after").get<double>();
        step.boundary_samples = s.at("boundary_samples").get<int>();
        step.certificate_ok = s.at("certificate_ok").get<bool>();
        step.diagnostic = s.value("diagnostic", std::string());
        report.steps.push_back(std::move(step));
    }
    report.final = polynomial_from_json(doc.at("final"));
    report.rho_trajectory = doc.at("rho_trajectory").get<std::vector<double>>();
    report.all_on_circle = doc.at("all_on_circle").get<bool>();
    return report;
}

json to_json(const std::vector<BlowupProbeRow>& table) {
    json rows = json::array();
    for (const BlowupProbeRow& row : table) {
        json sheets = json::array();
        for (const SheetProbeValue& s : row.sheets)
            sheets.push_back(json{{"zeta", to_json(s.zeta)},
                                  {"f", to_json(s.f)},
                                  {"is_pole_sheet", s.is_pole_sheet},
                                  {"flag_ok", s.flag_ok}});
        rows.push_back(json{{"u0", to_json(row.u0)}, {"rho", row.rho}, {"sheets", sheets}});
    }
    return rows;
}

json to_json(const SearchConfig& config) {
    return json{{"degree", config.degree},
                {"starts", config.starts},
                {"max_iterations", config.max_iterations},
                {"seed", config.seed},
                {"simplex_tolerance", config.simplex_tolerance},
                {"circle_only", config.circle_only}};
}

json to_json(const SearchResult& result) {
    return json{{"best_rho", result.best_rho},
                {"best_roots", complex_list(result.best_roots)},
                {"objective_evaluations", result.objective_evaluations},
                {"extremal_form", result.extremal_form},
                {"gap_to_bound", result.gap_to_bound}};
}

SearchResult search_result_from_json(const json& doc) {
    SearchResult result;
    result.best_rho = doc.at("best_rho").get<double>();
    result.best_roots = complex_list_from(doc.at("best_roots"), "best_roots");
    result.objective_evaluations = doc.at("objective_evaluations").get<long>();
    result.extremal_form = doc.at("extremal_form").get<bool>();
    result.gap_to_bound = doc.at("gap_to_bound").get<double>();
    return result;
}

json to_json(const ExperimentSummary& summary) {
    json degrees = json::array();
    for (const DegreeSummary& d : summary.degrees) {
        json violations = json::array();
        for (const std::vector<Cplx>& roots : d.violations)
            violations.push_back(json{{"roots", complex_list(roots)}, {"include_origin", true}});
        degrees.push_back(json{{"degree", d.degree},
                               {"samples", d.samples},
                               {"rho_min", d.rho_min},
                               {"rho_max", d.rho_max},
                               {"margin_min", d.margin_min},
                               {"margin_max", d.margin_max},
                               {"margin_mean", d.margin_mean},
                               {"smale_bound_ok", d.smale_bound_ok},
                               {"violations", violations}});
    }
    return json{{"command", summary.command},
                {"seed", summary.seed},
                {"sample_count", summary.sample_count},
                {"degree_min", summary.degree_min},
                {"degree_max", summary.degree_max},
                {"tol", summary.tol},
                {"degrees", degrees},
                {"wall_time_seconds", summary.wall_time_seconds}};
}

ExperimentSummary experiment_from_json(const json& doc) {
    ExperimentSummary summary;
    summary.command = doc.at("command").get<std::string>();
    summary.seed = doc.at("seed").get<uint64_t>();
    summary.sample_count = doc.at("sample_count").get<int>();
    summary.degree_min = doc.at("degree_min").get<int>();
    summary.degree_max = doc.at("degree_max").get<int>();
    summary.tol = doc.at("tol").get<double>();
    for (const json& d : doc.at("degrees")) {
        DegreeSummary degree;
        degree.degree = d.at("degree").get<int>();
        degree.samples = d.at("samples").get<int>();
        degree.rho_min = d.at("rho_min").get<double>();
        degree.rho_max = d.at("rho_max").get<double>();
        degree.margin_min = d.at("margin_min").get<double>();
        degree.margin_max = d.at("margin_max").get<double>();
        degree.margin_mean = d.at("margin_mean").get<double>();
        degree.smale_bound_ok = d.at("smale_bound_ok").get<bool>();
        for (const json& v : d.at("violations"))
            degree.violations.push_back(complex_list_from(v.at("roots"), "violation roots"));
        summary.degrees.push_back(std::move(degree));
    }
    summary.wall_time_seconds = doc.at("wall_time_seconds").get<double>();
    return summary;
}

}  // namespace smalelab
