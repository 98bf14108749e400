#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubeshape/enumerate.hpp"
#include "cubeshape/majorant.hpp"
#include "cubeshape/number_field.hpp"
#include "cubeshape/plot.hpp"
#include "cubeshape/quadform.hpp"
#include "cubeshape/records_io.hpp"
#include "cubeshape/shape.hpp"
#include "cubeshape/stats.hpp"

namespace {

using namespace cubeshape;
using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// comma-separated integer literal; reports the position of the bad token
std::vector<Int> parse_int_list(const std::string& text, size_t expected, const char* what) {
    std::vector<Int> out;
    size_t pos = 0;
    while (true) {
        size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                      : comma - pos);
        size_t digits = (tok.size() > 0 && (tok[0] == '-' || tok[0] == '+')) ? 1 : 0;
        bool valid = tok.size() > digits;
        for (size_t i = digits; i < tok.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(tok[i]))) valid = false;
        if (!valid) {
            std::ostringstream os;
            os << "malformed " << what << " literal '" << text << "' at position " << pos;
            throw UsageError(os.str());
        }
        out.push_back(Int(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.size() != expected) {
        std::ostringstream os;
        os << what << " literal '" << text << "' must have " << expected << " components";
        throw UsageError(os.str());
    }
    return out;
}

BinaryCubicForm parse_form(const std::string& s) {
    auto v = parse_int_list(s, 4, "form");
    return {v[0], v[1], v[2], v[3]};
}

BQF parse_bqf(const std::string& s) {
    auto v = parse_int_list(s, 3, "quadratic form");
    return {v[0], v[1], v[2]};
}

json json_int(const Int& n) {
    if (n.fits_slong_p()) return json(static_cast<std::int64_t>(n.get_si()));
    return json(n.get_str());
}

int default_threads() {
    if (const char* env = std::getenv("CUBESHAPE_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
    }
    return 1;
}

std::string class_id_for(const BQF& q) {
    Int D = q.disc();
    try {
        for (const auto& cls : classes_of_disc(D))
            if (equivalent(q, cls.rep, EquivMode::improper_allowed)) return cls.id;
    } catch (const std::exception&) {
    }
    return "D" + D.get_str();
}

int cmd_pell(const Int& D) {
    PellSolution p = pell_fundamental(D);
    json j;
    j["D"] = json_int(D);
    j["U0"] = json_int(p.U0);
    j["W0"] = json_int(p.W0);
    j["eps0"] = p.eps0_float;
    j["log_eps0"] = p.log_eps0;
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_classes(const Int& D) {
    auto classes = classes_of_disc(D);
    json j;
    j["D"] = json_int(D);
    j["count"] = classes.size();
    j["classes"] = json::array();
    for (const auto& cls : classes) {
        json c;
        c["id"] = cls.id;
        c["rep"] = {json_int(cls.rep.r), json_int(cls.rep.s), json_int(cls.rep.t)};
        c["normalized"] = {json_int(cls.normalized.r), json_int(cls.normalized.s),
                           json_int(cls.normalized.t)};
        c["ambiguous"] = cls.ambiguous;
        c["proper_cycles"] = cls.proper_cycles;
        json forms = json::array();
        for (const auto& f : cls.reduced_forms)
            forms.push_back({json_int(f.r), json_int(f.s), json_int(f.t)});
        c["reduced_forms"] = forms;
        j["classes"].push_back(c);
    }
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_shape(const BinaryCubicForm& f) {
    ContextPtr ctx = NumberFieldContext::create(f);
    ShapeGram sg = shape_gram(f, ctx);
    ShapePoint raw = shape_point(sg);
    auto [red, transform] = reduce_to_gauss(sg);
    ShapePoint reduced = shape_point(red);
    auto [tzf, content] = primitive_tzf(f);
    auto [rational, re] = re_shape_is_rational(f);
    json j;
    j["form"] = {json_int(f.a), json_int(f.b), json_int(f.c), json_int(f.d)};
    j["disc"] = json_int(disc(f));
    j["shape"] = {reduced.x_float, reduced.y_float};
    j["shape_raw"] = {raw.x_float, raw.y_float};
    j["tzf"] = {json_int(tzf.r), json_int(tzf.s), json_int(tzf.t)};
    j["content"] = json_int(content);
    j["resolvent_disc"] = json_int(resolvent_disc(f));
    j["re_shape_rational"] = rational;
    j["boundary"] = boundary_name(boundary_test(f));
    j["on_geodesic"] = on_geodesic_certificate(f, ctx);
    j["majorant_exact"] = majorant_check_exact(f, ctx);
    j["maximal"] = is_maximal(f);
    j["three_class"] = three_class_name(classify_3_relaxed(f));
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_geodesic(const BQF& q_in) {
    auto [q, g] = normalize_rep(q_in);
    GeodesicContext ctx = geodesic_context(q);
    json j;
    j["q"] = {json_int(q_in.r), json_int(q_in.s), json_int(q_in.t)};
    j["normalized"] = {json_int(q.r), json_int(q.s), json_int(q.t)};
    j["D"] = json_int(ctx.D);
    j["U0"] = json_int(ctx.pell.U0);
    j["W0"] = json_int(ctx.pell.W0);
    j["eps0"] = ctx.pell.eps0_float;
    j["period"] = ctx.period;
    j["theta"] = {ctx.theta_plus, ctx.theta_minus};
    j["rho"] = {ctx.rho_plus, ctx.rho_minus};
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_enumerate(const BQF& q_in, const Int& xmax, bool maximal, bool unoriented, int threads,
                  const std::string& out_path) {
    auto [q, g] = normalize_rep(q_in);
    EnumOptions opts;
    opts.maximal_only = maximal;
    opts.threads = threads;
    opts.class_id = class_id_for(q);
    auto records = enumerate_oriented(q, xmax, opts);
    if (unoriented) {
        bool ambiguous = false;
        for (const auto& cls : classes_of_disc(q.disc()))
            if (equivalent(q, cls.rep, EquivMode::improper_allowed)) ambiguous = cls.ambiguous;
        records = to_unoriented(records, q, ambiguous);
    }
    bool csv = out_path.size() > 4 && out_path.substr(out_path.size() - 4) == ".csv";
    if (out_path == "-") {
        write_jsonl(records, std::cout);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open " + out_path);
        if (csv)
            write_csv(records, out);
        else
            write_jsonl(records, out);
        json j;
        j["q"] = {json_int(q.r), json_int(q.s), json_int(q.t)};
        j["class_id"] = opts.class_id;
        j["xmax"] = json_int(xmax);
        j["records"] = records.size();
        j["out"] = out_path;
        std::cout << j.dump() << "\n";
    }
    return 0;
}

int cmd_stats(const std::string& in_path, const std::string& window_spec, int bins,
              const Int& xmax_opt, const std::string& hist_path) {
    auto records = read_jsonl_file(in_path);
    Int xmax = xmax_opt;
    if (sgn(xmax) <= 0)
        for (const auto& r : records) xmax = std::max(xmax, abs(r.disc_value) + 1);
    WindowSet window;
    bool have_window = !window_spec.empty();
    if (have_window) window = WindowSet::parse(window_spec);
    StatsSummary s = summarize(records, xmax, bins, have_window ? &window : nullptr);
    std::cout << summary_to_json(s) << "\n";
    if (!hist_path.empty()) {
        std::ofstream out(hist_path);
        if (!out) throw std::runtime_error("cannot open " + hist_path);
        out << histogram_csv(s);
    }
    return 0;
}

int cmd_check(const std::string& in_path) {
    auto records = read_jsonl_file(in_path);
    long bad = 0;
    auto report = [&](const std::string& name, long failures, long total) {
        std::cout << (failures == 0 ? "[PASS] " : "[FAIL] ") << name << " (" << total - failures
                  << "/" << total << ")\n";
        bad += failures;
    };
    long n = static_cast<long>(records.size());
    long f_disc = 0, f_hess = 0, f_geo = 0, f_maj = 0, f_rat = 0, f_bdy = 0, f_flow = 0,
         f_gauss = 0;
    for (const auto& r : records) {
        if (disc(r.form) != r.disc_value || resolvent_disc(r.form) != r.resolvent) ++f_disc;
        auto [tzf, content] = primitive_tzf(r.form);
        if (!(tzf == r.tzf) || content != r.content) ++f_hess;
        ContextPtr ctx = NumberFieldContext::create(r.form);
        if (!on_geodesic_certificate(r.form, ctx)) ++f_geo;
        if (!majorant_check_exact(r.form, ctx)) ++f_maj;
        auto [rational, re] = re_shape_is_rational(r.form);
        if (rational != (r.resolvent == -3)) ++f_rat;
        if (r.maximal && r.resolvent != -3 &&
            boundary_test(r.form) != BoundaryPosition::interior)
            ++f_bdy;
        Int D = r.tzf.disc();
        if (D > 0 && !is_square(D)) {
            ShapePoint raw = shape_point(shape_gram(r.form, ctx));
            auto [tau, residual] = flow_coordinate(
                geodesic_context(r.tzf), std::complex<double>(-raw.x_float, raw.y_float));
            if (!(residual < 1e-9)) ++f_flow;
        }
        if (!(r.shape_x >= -1e-12 && r.shape_x <= 0.5 + 1e-12 &&
              r.shape_x * r.shape_x + r.shape_y * r.shape_y >= 1 - 1e-12))
            ++f_gauss;
    }
    report("disc and resolvent match the form", f_disc, n);
    report("hessian = content * tzf", f_hess, n);
    report("on-geodesic certificate (exact)", f_geo, n);
    report("majorant identity (exact)", f_maj, n);
    report("Re(shape) irrational for non-pure", f_rat, n);
    report("boundary avoidance (maximal, non-pure)", f_bdy, n);
    report("flow residual < 1e-9", f_flow, n);
    report("shape reduced to Gauss domain", f_gauss, n);
    AuditResult audit = tame_wild_audit(records);
    report("tame-wild dichotomy", audit.failed, audit.passed + audit.failed);
    return bad == 0 ? 0 : 1;
}

int cmd_plot(const std::string& in_path, const std::vector<std::string>& q_specs,
             const std::string& out_path) {
    std::vector<FieldRecord> records;
    if (!in_path.empty()) records = read_jsonl_file(in_path);
    std::vector<std::pair<std::string, BQF>> arcs;
    auto add_arc = [&](const std::string& id, const BQF& q) {
        for (const auto& [aid, aq] : arcs)
            if (aid == id) return;
        arcs.push_back({id, q});
    };
    for (const auto& r : records) add_arc(r.class_id, r.tzf);
    for (const auto& spec : q_specs) {
        auto [q, g] = normalize_rep(parse_bqf(spec));
        add_arc(class_id_for(q), q);
    }
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path);
    plot_svg(records, arcs, out);
    json j;
    j["arcs"] = arcs.size();
    j["markers"] = records.size();
    j["out"] = out_path;
    std::cout << j.dump() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex cubic field shapes on geodesics of the modular surface"};
    app.require_subcommand(1);

    std::string form_str, q_str, in_path, out_path, window_spec, hist_path;
    std::vector<std::string> q_specs;
    std::int64_t disc_opt = 0;
    std::string xmax_str = "0";
    int bins = 32;
    int threads = default_threads();
    bool maximal = false, unoriented = false;

    auto* pell = app.add_subcommand("pell", "fundamental solution of u^2 - D w^2 = 4");
    pell->add_option("--disc", disc_opt, "discriminant D")->required();

    auto* classes = app.add_subcommand("classes", "classes of indefinite forms of discriminant D");
    classes->add_option("--disc", disc_opt, "discriminant D")->required();

    auto* shape = app.add_subcommand("shape", "exact shape data of a cubic form");
    shape->add_option("--form", form_str, "cubic form a,b,c,d")->required();

    auto* geod = app.add_subcommand("geodesic", "geodesic data of an indefinite form");
    geod->add_option("--q", q_str, "quadratic form r,s,t")->required();

    auto* enumc = app.add_subcommand("enumerate", "enumerate cubic orders with trace-zero form Q");
    enumc->add_option("--q", q_str, "quadratic form r,s,t")->required();
    enumc->add_option("--xmax", xmax_str, "discriminant bound X")->required();
    enumc->add_flag("--maximal", maximal, "keep only maximal orders (fields)");
    enumc->add_flag("--unoriented", unoriented, "deduplicate orientation pairs");
    enumc->add_option("--threads", threads, "worker threads (env CUBESHAPE_THREADS)");
    enumc->add_option("--out", out_path, "output path (.jsonl or .csv, '-' for stdout)")
        ->required();

    auto* stats = app.add_subcommand("stats", "statistics over a record stream");
    stats->add_option("--in", in_path, "input JSONL")->required();
    stats->add_option("--window", window_spec, "tau windows lo:hi[,lo:hi...]");
    stats->add_option("--bins", bins, "histogram bins");
    stats->add_option("--xmax", xmax_str, "X used for the asymptotic ratio");
    stats->add_option("--hist", hist_path, "write histogram CSV here");

    auto* check = app.add_subcommand("check", "run the full invariant audit on records");
    check->add_option("--in", in_path, "input JSONL")->required();

    auto* plot = app.add_subcommand("plot", "SVG of shapes and class geodesic arcs");
    plot->add_option("--in", in_path, "input JSONL");
    plot->add_option("--q", q_specs, "extra arc r,s,t (repeatable)");
    plot->add_option("--out", out_path, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (pell->parsed()) return cmd_pell(Int(disc_opt));
        if (classes->parsed()) return cmd_classes(Int(disc_opt));
        if (shape->parsed()) return cmd_shape(parse_form(form_str));
        if (geod->parsed()) return cmd_geodesic(parse_bqf(q_str));
        if (enumc->parsed())
            return cmd_enumerate(parse_bqf(q_str), Int(xmax_str), maximal, unoriented, threads,
                                 out_path);
        if (stats->parsed()) return cmd_stats(in_path, window_spec, bins, Int(xmax_str), hist_path);
        if (check->parsed()) return cmd_check(in_path);
        if (plot->parsed()) return cmd_plot(in_path, q_specs, out_path);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
