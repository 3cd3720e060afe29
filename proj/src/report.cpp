#include "reesdiag/report.hpp"

#include "reesdiag/plot.hpp"

#include <fstream>

namespace reesdiag {

using nlohmann::json;

int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::NotDiagonalizableMod:
        case ErrorKind::NotInTorsor:
        case ErrorKind::NotGradedBasis:
        case ErrorKind::NestingViolated:
        case ErrorKind::NotWeightCompatible:
        case ErrorKind::NotDiagonalizing:
            return 2;
        default:
            return 1;
    }
}

json rational_json(const Rational& q) { return json(rational_str(q)); }

json qvec_json(const QVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_str(x));
    return a;
}

json point_json(const SkeletonComplex& k, const SkeletonPoint& p) {
    json j;
    json simplex = json::array();
    for (int idx : p.simplex) simplex.push_back(k.vertices()[static_cast<size_t>(idx)].label);
    j["simplex"] = simplex;
    j["barycentric"] = qvec_json(p.bary);
    j["weights"] = qvec_json(point_valuation(k, p).weights);
    return j;
}

namespace {

json table_json(const DvrGradedTable& t) {
    json entries = json::array();
    for (const auto& [lambda, piece] : t.entries) {
        json e;
        e["lambda"] = qvec_json(lambda);
        e["dim"] = piece.dim;
        entries.push_back(e);
    }
    json j;
    j["entries"] = entries;
    j["total"] = t.total();
    j["rank"] = t.ambient_rank;
    j["denominator"] = t.denominator;
    return j;
}

json svec_json(const SVec& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(e.str());
    return a;
}

struct Ctx {
    ModelFile model;
    SkeletonComplex k;
};

std::vector<DvrFiltration> vertex_filtrations(const Ctx& ctx, const SectionSpace& space,
                                              std::vector<SkeletonPoint>* points_out) {
    Subdivision sub = refine(ctx.k, space.sections(), /*integer_shifts=*/true);
    auto points = subdivision_vertices(ctx.k, sub);
    std::vector<DvrFiltration> fs;
    for (const auto& p : points)
        fs.push_back(induced_filtration(point_valuation(ctx.k, p), space));
    if (points_out) *points_out = std::move(points);
    return fs;
}

json run_grdim(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    SectionSpace space = ctx.model.space(opts.level);
    std::vector<SkeletonPoint> points;
    auto fs = vertex_filtrations(ctx, space, &points);
    DvrGradedTable t = dvr_graded_table(fs);
    json data = table_json(t);
    json verts = json::array();
    for (const auto& p : points) verts.push_back(point_json(ctx.k, p));
    data["vertices"] = verts;
    exit_code = 0;
    return data;
}

json run_diagonalize(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    SectionSpace space = ctx.model.space(opts.level);
    std::vector<SkeletonPoint> points;
    auto fs = vertex_filtrations(ctx, space, &points);
    DvrDiagResult r = diagonalize_dvr(fs, opts.seed);
    json data;
    data["table"] = table_json(r.table);
    if (r.success) {
        json basis = json::array();
        for (size_t i = 0; i < r.basis.vectors.size(); ++i) {
            json b;
            b["coordinates"] = svec_json(r.basis.vectors[i]);
            b["ords"] = qvec_json(r.basis.ord_vectors[i]);
            basis.push_back(b);
        }
        data["basis"] = basis;
        exit_code = 0;
    } else {
        data["obstruction"] = true;
        exit_code = 2;
    }
    return data;
}

json run_check(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    const auto& sections = ctx.model.sections_at(opts.level);
    IndependenceVerdict v = check_independence(sections, ctx.k);
    json data;
    data["independent"] = v.independent;
    if (v.independent) {
        json verts = json::array();
        for (const auto& p : v.basis.vertices) verts.push_back(point_json(ctx.k, p));
        data["vertices"] = verts;
        json ords = json::array();
        for (const auto& o : v.basis.ord_vectors) ords.push_back(qvec_json(o));
        data["ord_vectors"] = ords;
        exit_code = 0;
    } else {
        data["counterexample"] = point_json(ctx.k, *v.counterexample);
        data["detail"] = v.detail;
        exit_code = 2;
    }
    return data;
}

json run_construct(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    SectionSpace space = ctx.model.space(opts.level);
    ConstructResult r = construct_basis(space, ctx.k, opts.seed);
    json data;
    json verts = json::array();
    for (const auto& p : r.vertices) verts.push_back(point_json(ctx.k, p));
    data["vertices"] = verts;
    if (!r.success) {
        data["obstruction"] = table_json(r.obstruction);
        exit_code = 2;
        return data;
    }
    json basis = json::array();
    for (size_t i = 0; i < r.basis.sections.size(); ++i) {
        json b;
        b["section"] = r.basis.sections[i].str(ctx.model.variables);
        b["ords"] = qvec_json(r.basis.ord_vectors[i]);
        basis.push_back(b);
    }
    data["basis"] = basis;
    data["tropical_functions"] =
        trop_functions_json(ctx.k, r.basis.sections, ctx.model.variables);
    exit_code = 0;
    return data;
}

json run_tropicalize(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    const auto& sections = ctx.model.sections_at(opts.level);
    exit_code = 0;
    return trop_functions_json(ctx.k, sections, ctx.model.variables);
}

json run_refine(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    const auto& sections = ctx.model.sections_at(opts.level);
    Subdivision sub = refine(ctx.k, sections, /*integer_shifts=*/true);
    json cells = json::array();
    for (const auto& cell : sub.cells) {
        json c;
        c["simplex_index"] = cell.simplex_index;
        json vs = json::array();
        for (const auto& u : cell.vertices) vs.push_back(qvec_json(u));
        c["vertices_u"] = vs;
        json forms = json::array();
        for (const auto& f : cell.section_form) {
            json ff;
            ff["slope"] = qvec_json(f.slope);
            ff["offset"] = rational_str(f.offset);
            forms.push_back(ff);
        }
        c["section_forms"] = forms;
        cells.push_back(c);
    }
    json data;
    data["cells"] = cells;
    json pts = json::array();
    for (const auto& p : subdivision_vertices(ctx.k, sub)) pts.push_back(point_json(ctx.k, p));
    data["vertices"] = pts;
    exit_code = 0;
    return data;
}

json run_extend(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    (void)opts;
    if (ctx.model.levels.size() < 2)
        fail(ErrorKind::InvariantViolation, "extend needs at least two levels");
    ConstructResult base = construct_basis(ctx.model.space(0), ctx.k, opts.seed);
    json data;
    if (!base.success) {
        data["obstruction"] = table_json(base.obstruction);
        exit_code = 2;
        return data;
    }
    std::vector<LaurentPoly> inner = base.basis.sections;
    json chain = json::array();
    {
        json step;
        step["level"] = ctx.model.levels[0].first;
        json secs = json::array();
        for (const auto& s : inner) secs.push_back(s.str(ctx.model.variables));
        step["basis"] = secs;
        chain.push_back(step);
    }
    for (size_t l = 1; l < ctx.model.levels.size(); ++l) {
        ThetaBasis next = extend_basis(inner, ctx.model.space(static_cast<int>(l)), ctx.k);
        json step;
        step["level"] = ctx.model.levels[l].first;
        json secs = json::array();
        for (const auto& s : next.sections) secs.push_back(s.str(ctx.model.variables));
        step["basis"] = secs;
        step["contains_previous"] = true; // verbatim by construction
        chain.push_back(step);
        inner = next.sections;
    }
    data["chain"] = chain;
    exit_code = 0;
    return data;
}

json run_lift(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    long target = opts.precision > 0 ? opts.precision : ctx.model.precision;
    if (target > ctx.model.precision)
        fail(ErrorKind::PrecisionExhausted,
             "lift target level " + std::to_string(target) + " exceeds model precision " +
                 std::to_string(ctx.model.precision));
    SectionSpace space = ctx.model.space(opts.level);
    auto fs = vertex_filtrations(ctx, space, nullptr);
    auto oracle = [&](long level) {
        return diagonalize_mod(fs, level, opts.seed + 7919 * static_cast<std::uint64_t>(level));
    };
    ModBasis chain = lift_chain(fs, oracle, target);
    json data;
    data["level"] = chain.level;
    json basis = json::array();
    for (size_t i = 0; i < chain.vectors.size(); ++i) {
        json b;
        b["coordinates"] = svec_json(chain.vectors[i]);
        b["ords"] = qvec_json(chain.ord_vectors[i]);
        basis.push_back(b);
    }
    data["basis"] = basis;
    exit_code = 0;
    return data;
}

json run_cone(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    std::vector<SectionSpace> levels;
    for (size_t l = 0; l < ctx.model.levels.size(); ++l)
        levels.push_back(ctx.model.space(static_cast<int>(l)));
    ConeSpace cone = cone_assemble(levels);
    ConeBasis theta = cone_construct(cone, ctx.k, opts.seed);
    json data;
    data["total_rank"] = cone.total_rank;
    json basis = json::array();
    for (size_t i = 0; i < theta.coords.size(); ++i) {
        json b;
        b["coordinates"] = qvec_json(theta.coords[i]);
        b["ord_0"] = rational_str(theta.ord0[i]);
        b["ord_D"] = rational_str(theta.ordD[i]);
        basis.push_back(b);
    }
    data["basis"] = basis;
    json extracted = json::array();
    for (size_t m = 0; m < levels.size(); ++m) {
        auto secs = cone_extract(cone, theta, static_cast<int>(m), ctx.k);
        json lvl;
        lvl["level"] = static_cast<int>(m);
        json ss = json::array();
        for (const auto& s : secs) ss.push_back(s.str(ctx.model.variables));
        lvl["basis"] = ss;
        extracted.push_back(lvl);
    }
    data["extracted"] = extracted;
    exit_code = 0;
    return data;
}

json run_gr_ring(const Ctx& ctx, const RunOptions& opts, int& exit_code) {
    std::vector<SectionSpace> levels;
    for (size_t l = 0; l < ctx.model.levels.size(); ++l)
        levels.push_back(ctx.model.space(static_cast<int>(l)));
    int one_level = std::min<int>(opts.one_level, static_cast<int>(levels.size()) - 1);
    GrRingReport r = gr_ring_check(levels, one_level, opts.one_index, ctx.k, opts.samples);
    json data;
    data["multiplicativity_checked"] = r.multiplicativity_checked;
    data["multiplicativity_failures"] = r.multiplicativity_failures;
    data["injectivity_checked"] = r.injectivity_checked;
    data["injectivity_failures"] = r.injectivity_failures;
    data["reducedness"] = "unchecked";
    data["notes"] = r.notes;
    exit_code = 0;
    return data;
}

} // namespace

RunReport run(const RunOptions& opts) {
    RunReport report;
    report.body["command"] = opts.command;
    report.body["seed"] = opts.seed;
    try {
        Ctx ctx;
        ctx.model = parse_model(opts.model_path);
        ctx.k = ctx.model.complex();
        report.body["model"] = ctx.model.name;
        int code = 0;
        json data;
        if (opts.command == "grdim") {
            data = run_grdim(ctx, opts, code);
        } else if (opts.command == "diagonalize") {
            data = run_diagonalize(ctx, opts, code);
        } else if (opts.command == "check") {
            data = run_check(ctx, opts, code);
        } else if (opts.command == "construct") {
            data = run_construct(ctx, opts, code);
        } else if (opts.command == "tropicalize") {
            data = run_tropicalize(ctx, opts, code);
            if (opts.format == "svg") {
                std::string svg = emit_plot_svg(ctx.k, ctx.model.sections_at(opts.level),
                                                ctx.model.variables, ctx.model.name);
                if (opts.out.empty()) fail(ErrorKind::InvariantViolation,
                                           "--format svg requires --out");
                std::ofstream f(opts.out);
                f << svg;
                data["svg"] = opts.out;
            }
        } else if (opts.command == "refine") {
            data = run_refine(ctx, opts, code);
        } else if (opts.command == "extend") {
            data = run_extend(ctx, opts, code);
        } else if (opts.command == "lift") {
            data = run_lift(ctx, opts, code);
        } else if (opts.command == "cone") {
            data = run_cone(ctx, opts, code);
        } else if (opts.command == "gr-ring") {
            data = run_gr_ring(ctx, opts, code);
        } else {
            fail(ErrorKind::InvariantViolation, "unknown command '" + opts.command + "'");
        }
        report.body["data"] = data;
        report.body["verdict"] = code == 0 ? "success" : "obstruction";
        report.exit_code = code;
    } catch (const Error& e) {
        report.exit_code = exit_code_for(e.kind());
        report.body["verdict"] = report.exit_code == 2 ? "obstruction" : "error";
        report.body["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
    }
    return report;
}

} // namespace reesdiag
