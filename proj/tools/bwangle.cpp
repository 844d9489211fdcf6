#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bwangle/axioms.hpp"
#include "bwangle/classify.hpp"
#include "bwangle/corners.hpp"
#include "bwangle/csb.hpp"
#include "bwangle/parallel.hpp"
#include "bwangle/rho.hpp"
#include "bwangle/space_json.hpp"

using nlohmann::json;
using namespace bwangle;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

Vector parse_vector(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(std::stod(tok));
    }
    if (vals.empty()) throw DescriptorError("empty vector literal: " + s);
    Vector v(static_cast<Eigen::Index>(vals.size()));
    for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
    return v;
}

std::vector<double> parse_grid(const std::string& s) {
    std::vector<double> vals;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        vals.push_back(std::stod(tok));
    }
    return vals;
}

SpaceDescriptor load_space(const std::string& src) {
    std::string text = src;
    if (!src.empty() && src[0] != '{') {
        std::ifstream in(src);
        if (!in) throw DescriptorError("cannot open space file: " + src);
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DescriptorError(std::string("space descriptor is not valid JSON: ") + e.what());
    }
    return space_from_json(j);
}

json vec_json(Eigen::Ref<const Vector> v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

void print_flat(std::ostream& os, const json& j, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items())
            print_flat(os, v, prefix.empty() ? k : prefix + "." + k);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            print_flat(os, j[i], prefix + "[" + std::to_string(i) + "]");
    } else if (j.is_number_float()) {
        os << prefix << " = " << fmt(j.get<double>()) << "\n";
    } else {
        os << prefix << " = " << j.dump() << "\n";
    }
}

void print_csv(std::ostream& os, const json& result) {
    if (result.is_array() && !result.empty() && result[0].is_object()) {
        bool flat = true;
        for (const auto& [k, v] : result[0].items()) {
            (void)k;
            if (v.is_object() || v.is_array()) flat = false;
        }
        if (flat) {
            bool first = true;
            for (const auto& [k, v] : result[0].items()) {
                (void)v;
                os << (first ? "" : ",") << k;
                first = false;
            }
            os << "\n";
            for (const auto& row : result) {
                first = true;
                for (const auto& [k, v] : row.items()) {
                    (void)k;
                    os << (first ? "" : ",");
                    if (v.is_number_float())
                        os << fmt(v.get<double>());
                    else if (v.is_string())
                        os << v.get<std::string>();
                    else
                        os << v.dump();
                    first = false;
                }
                os << "\n";
            }
            return;
        }
    }
    os << "key,value\n";
    std::ostringstream flat;
    print_flat(flat, result, "");
    std::string line;
    std::istringstream lines(flat.str());
    while (std::getline(lines, line)) {
        const std::size_t eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        os << line.substr(0, eq) << "," << line.substr(eq + 3) << "\n";
    }
}

struct RunConfig {
    std::string space_src;
    std::string x_str, y_str;
    double rho = 0.0;
    std::string rho_grid_str;
    int resolution = 1024;
    int refine = 40;
    double tol = 1e-7;
    double bracket_tol = 1e-3;
    double rho_cap = 64.0;
    int samples = 10000;
    std::uint64_t seed = 0x5eed;
    std::string format = "table";
    std::string output;
    bool degrees = false;
    std::string family;
    std::string params_str;
    double delta = 0.5;

    CsbConfig csb() const {
        CsbConfig c;
        c.resolution = resolution;
        c.refine = refine;
        c.tol = tol;
        c.seed = seed;
        return c;
    }
};

json config_json(const std::string& command, const RunConfig& cfg, const SpaceDescriptor* space) {
    json j;
    j["command"] = command;
    if (space) j["space"] = space_to_json(*space);
    j["rho"] = cfg.rho;
    if (!cfg.rho_grid_str.empty()) j["rho_grid"] = cfg.rho_grid_str;
    j["resolution"] = cfg.resolution;
    j["refine"] = cfg.refine;
    j["tol"] = cfg.tol;
    j["bracket_tol"] = cfg.bracket_tol;
    j["rho_cap"] = cfg.rho_cap;
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["format"] = cfg.format;
    j["degrees"] = cfg.degrees;
    j["threads"] = thread_count();
    return j;
}

int emit(const RunConfig& cfg, const json& config, const json& result, int exit_code) {
    std::ofstream file;
    std::ostream* os = &std::cout;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw DescriptorError("cannot open output file: " + cfg.output);
        os = &file;
    }
    if (cfg.format == "json") {
        json j;
        j["config"] = config;
        j["result"] = result;
        *os << j.dump(2) << "\n";
    } else if (cfg.format == "csv") {
        std::ostringstream flat;
        print_flat(flat, config, "config");
        std::istringstream lines(flat.str());
        std::string line;
        while (std::getline(lines, line)) *os << "# " << line << "\n";
        print_csv(*os, result);
    } else {
        std::ostringstream flat;
        print_flat(flat, config, "config");
        std::istringstream lines(flat.str());
        std::string line;
        while (std::getline(lines, line)) *os << "# " << line << "\n";
        print_flat(*os, result, "");
    }
    return exit_code;
}

json upsilon_json(const UpsilonResult& u) {
    json j;
    j["nu"] = std::isinf(u.nu) ? json("-inf") : json(u.nu);
    j["mu"] = std::isinf(u.mu) ? json("inf") : json(u.mu);
    j["nu_attained"] = u.nu_attained;
    j["mu_attained"] = u.mu_attained;
    j["bracket_tol"] = u.bracket_tol;
    j["rho_cap"] = u.rho_cap;
    j["csb_resolution"] = u.csb.resolution;
    j["csb_refine"] = u.csb.refine;
    j["csb_tol"] = u.csb.tol;
    return j;
}

json corner_json(const SpaceDescriptor& space, const CornerWitness& w) {
    json j;
    j["y_hat"] = {w.y_hat.x(), w.y_hat.y()};
    j["x_bar"] = {w.x_bar.x(), w.x_bar.y()};
    j["m_minus"] = w.m_minus;
    j["m_plus"] = w.m_plus;
    j["kind"] = w.kind == CornerKind::Convex ? "convex" : "concave";
    j["delta_max"] = w.delta_max;
    j["verified"] = verify_corner(space, w);
    return j;
}

int run_repro(const RunConfig& cfg) {
    json rows = json::array();
    const auto add = [&rows](const std::string& name, double computed, double expected,
                             double tol) {
        const bool pass = std::abs(computed - expected) <= tol;
        rows.push_back({{"name", name},
                        {"computed", computed},
                        {"expected", expected},
                        {"tolerance", tol},
                        {"status", pass ? "pass" : "fail"}});
    };
    const auto add_flag = [&rows](const std::string& name, bool pass, const std::string& detail) {
        rows.push_back({{"name", name},
                        {"detail", detail},
                        {"status", pass ? "pass" : "fail"}});
    };

    for (const CounterexampleRow& r : reproduce_counterexamples())
        add(r.name, r.computed, r.closed_form, 1e-12);

    // Hexagon vertex pair (1,r), (-1,r): product (r^2-1)(r^2+1)^rho.
    for (const double r : {2.0, 3.0, 5.0}) {
        const SpaceDescriptor hex = SpaceDescriptor::hexagon(r);
        Vector v(2), w(2);
        v << 1, r;
        w << -1, r;
        const double rho = -0.5;
        add("hexagon(" + fmt(r) + ") vertex pair product at rho=-0.5",
            rho_product(hex, v, w, rho),
            (r * r - 1.0) * std::pow(r * r + 1.0, rho), 1e-12);
    }
    {
        const SpaceDescriptor hex2 = SpaceDescriptor::hexagon(2.0);
        Vector v(2), w(2);
        v << 1, 2;
        w << -1, 2;
        add("hexagon(2) pair product at rho=0", rho_product(hex2, v, w, 0.0), 3.0, 1e-12);
        const auto corners = find_corners(hex2);
        bool found = false;
        for (const CornerWitness& c : corners)
            if (c.kind == CornerKind::Concave && (c.y_hat - Vector2(0, 1)).norm() < 1e-6 &&
                std::abs(c.m_minus + 1.0) < 1e-6 && std::abs(c.m_plus - 1.0) < 1e-6)
                found = verify_corner(hex2, c);
        add_flag("hexagon(2) concave corner at (0,1) with m=-1,+1", found,
                 std::to_string(corners.size()) + " corners found");
        add_flag("hexagon(2) CSB violation at rho=0",
                 !csb_sup(hex2, 0.0, 256, 20).holds, "sup > 1 expected");
    }
    {
        const auto corners = find_corners(SpaceDescriptor::hoelder(1.0));
        int convex = 0;
        for (const CornerWitness& c : corners)
            if (c.kind == CornerKind::Convex) ++convex;
        add("sum-norm convex corner count", convex, 4.0, 0.0);
    }
    {
        CsbConfig fast;
        fast.resolution = 256;
        fast.refine = 20;
        const UpsilonResult u1 = upsilon(SpaceDescriptor::hoelder(1.0), 1e-3, 64.0, fast);
        add("upsilon nu of sum-norm", u1.nu, -1.0, 2e-3);
        add("upsilon mu of sum-norm", u1.mu, 1.0, 2e-3);
        const UpsilonResult ui = upsilon(SpaceDescriptor::hoelder(
                                             std::numeric_limits<double>::infinity()),
                                         1e-3, 64.0, fast);
        add("upsilon nu of max-norm", ui.nu, -1.0, 2e-3);
        add("upsilon mu of max-norm", ui.mu, 1.0, 2e-3);
        const UpsilonResult u2 = upsilon(SpaceDescriptor::hoelder(2.0), 1e-3, 64.0, fast);
        add_flag("upsilon of Euclidean plane is unbounded",
                 std::isinf(u2.nu) && std::isinf(u2.mu),
                 "nu=" + fmt(u2.nu) + " mu=" + fmt(u2.mu));
    }
    {
        const CurvatureReport half = curvature_report(SpaceDescriptor::hoelder(0.5));
        add_flag("hoelder(0.5) strictly curved, not strictly convex",
                 half.strictly_curved && !half.strictly_convex, "");
        const CurvatureReport one = curvature_report(SpaceDescriptor::hoelder(1.0));
        add_flag("hoelder(1) neither strictly curved nor strictly convex",
                 !one.strictly_curved && !one.strictly_convex &&
                     one.flat_segments.size() == 4,
                 std::to_string(one.flat_segments.size()) + " flat segments");
        const CurvatureReport three = curvature_report(SpaceDescriptor::hoelder(3.0));
        add_flag("hoelder(3) strictly curved and strictly convex",
                 three.strictly_curved && three.strictly_convex, "");
    }
    {
        // The degenerate hexagons coincide with the p=1 and p=inf weights.
        double worst0 = 0.0, worst1 = 0.0;
        const SpaceDescriptor h0 = SpaceDescriptor::hexagon(0.0);
        const SpaceDescriptor h1 = SpaceDescriptor::hexagon(1.0);
        const SpaceDescriptor l1 = SpaceDescriptor::hoelder(1.0);
        const SpaceDescriptor li =
            SpaceDescriptor::hoelder(std::numeric_limits<double>::infinity());
        for (int k = 0; k < 256; ++k) {
            const double th = 2.0 * kPi * k / 256;
            Vector d(2);
            d << std::cos(th), std::sin(th);
            worst0 = std::max(worst0, std::abs(eval_weight(h0, d) - eval_weight(l1, d)));
            worst1 = std::max(worst1, std::abs(eval_weight(h1, d) - eval_weight(li, d)));
        }
        add("hexagon(0) vs p=1 weight, max difference", worst0, 0.0, 1e-12);
        add("hexagon(1) vs p=inf weight, max difference", worst1, 0.0, 1e-12);
    }
    {
        // Every positive definite instance satisfies CSB at rho = -1.
        double worst = 0.0;
        for (const SpaceDescriptor& s :
             {SpaceDescriptor::hoelder(0.5), SpaceDescriptor::hoelder(1.0),
              SpaceDescriptor::hoelder(2.0), SpaceDescriptor::hoelder(3.0),
              SpaceDescriptor::hexagon(2.0), SpaceDescriptor::hexagon(5.0)})
            worst = std::max(worst, csb_sup(s, -1.0, 256, 20).sup_estimate);
        add_flag("CSB holds at rho=-1 for bundled instances", worst <= 1.0 + 1e-12,
                 "max sup estimate " + fmt(worst));
    }

    bool all_pass = true;
    for (const auto& r : rows)
        if (r.at("status") != "pass") all_pass = false;
    const int code = emit(cfg, config_json("repro", cfg, nullptr), rows, all_pass ? 0 : 4);
    return code;
}

int dispatch(const std::string& cmd, const RunConfig& cfg) {
    if (cmd == "repro") return run_repro(cfg);

    // sweep builds its family from --family/--params instead of --space
    const SpaceDescriptor space =
        cmd == "sweep" ? SpaceDescriptor{} : load_space(cfg.space_src);
    const json config = config_json(cmd, cfg, cmd == "sweep" ? nullptr : &space);

    if (cmd == "angle" || cmd == "product") {
        const Vector x = parse_vector(cfg.x_str);
        const Vector y = parse_vector(cfg.y_str);
        if (cmd == "product") {
            json result;
            result["product"] = rho_product(space, x, y, cfg.rho);
            return emit(cfg, config, result, 0);
        }
        const AngleOutcome a = rho_angle(space, x, y, cfg.rho);
        const PairGeometry g = pair_geometry(space, x, y);
        json result;
        result["cosine"] = a.cosine;
        result["defined"] = a.defined;
        result["s"] = g.s;
        result["d"] = g.d;
        result["Sigma"] = g.Sigma;
        result["Delta"] = g.Delta;
        if (a.defined) {
            result["angle_rad"] = a.angle_rad;
            result["angle_deg"] = a.angle_rad * 180.0 / kPi;
            result["angle"] = cfg.degrees ? a.angle_rad * 180.0 / kPi : a.angle_rad;
            result["unit"] = cfg.degrees ? "deg" : "rad";
        }
        return emit(cfg, config, result, a.defined ? 0 : 2);
    }
    if (cmd == "csb") {
        const CsbReport rep = csb_sup(space, cfg.rho, cfg.csb());
        json result;
        result["rho"] = rep.rho;
        result["sup_estimate"] = rep.sup_estimate;
        result["holds"] = rep.holds;
        result["witness_x"] = vec_json(rep.witness_x);
        result["witness_y"] = vec_json(rep.witness_y);
        result["grid_resolution"] = rep.grid_resolution;
        result["refinement_steps"] = rep.refinement_steps;
        return emit(cfg, config, result, 0);
    }
    if (cmd == "upsilon") {
        const UpsilonResult u = upsilon(space, cfg.bracket_tol, cfg.rho_cap, cfg.csb());
        return emit(cfg, config, upsilon_json(u), 0);
    }
    if (cmd == "classify") {
        std::vector<double> rhos = parse_grid(cfg.rho_grid_str);
        if (rhos.empty()) rhos = {-1.0, 0.0, 1.0};
        const ClassMembership m = class_report(space, rhos, cfg.csb());
        json result = json::array();
        for (const ClassEntry& e : m.entries) {
            json row;
            row["class"] = e.has_rho ? e.tag + "(" + fmt(e.rho) + ")" : e.tag;
            row["member"] = e.member;
            row["evidence"] = e.evidence;
            result.push_back(row);
        }
        return emit(cfg, config, result, 0);
    }
    if (cmd == "corners") {
        json result = json::array();
        for (const CornerWitness& w : find_corners(space, cfg.resolution))
            result.push_back(corner_json(space, w));
        return emit(cfg, config, result, 0);
    }
    if (cmd == "curvature") {
        const CurvatureReport rep = curvature_report(space, cfg.resolution);
        json result;
        result["strictly_convex"] = rep.strictly_convex;
        result["strictly_curved"] = rep.strictly_curved;
        json segs = json::array();
        for (const FlatSegment& s : rep.flat_segments)
            segs.push_back({{"a", {s.a.x(), s.a.y()}}, {"b", {s.b.x(), s.b.y()}}});
        result["flat_segments"] = segs;
        json cs = json::array();
        for (const CornerWitness& w : rep.corners) cs.push_back(corner_json(space, w));
        result["corners"] = cs;
        return emit(cfg, config, result, 0);
    }
    if (cmd == "axioms") {
        const AxiomReport rep = check_axioms(space, cfg.rho, cfg.samples, cfg.seed);
        json result = json::array();
        for (const AxiomResult& r : rep.results) {
            json row;
            row["axiom"] = r.name;
            row["status"] = axiom_status_name(r.status);
            row["discrepancy"] = r.discrepancy;
            row["note"] = r.note;
            result.push_back(row);
        }
        return emit(cfg, config, result, 0);
    }
    if (cmd == "sweep") {
        std::vector<std::pair<std::string, SpaceDescriptor>> family;
        for (const double p : parse_grid(cfg.params_str)) {
            if (cfg.family == "hoelder")
                family.emplace_back(fmt(p), SpaceDescriptor::hoelder(p));
            else if (cfg.family == "hexagon")
                family.emplace_back(fmt(p), SpaceDescriptor::hexagon(p));
            else if (cfg.family == "product")
                family.emplace_back(fmt(p),
                                    SpaceDescriptor::product(SpaceDescriptor::hoelder(2.0, 1),
                                                             SpaceDescriptor::hoelder(2.0, 1),
                                                             p));
            else
                throw DescriptorError("sweep family must be hoelder, hexagon or product");
        }
        if (family.empty()) throw DescriptorError("sweep needs --params");
        std::vector<double> rhos = parse_grid(cfg.rho_grid_str);
        if (rhos.empty()) rhos = {-2.0, -1.0, 0.0, 1.0, 2.0};
        SweepConfig sc;
        sc.bracket_tol = cfg.bracket_tol;
        sc.rho_cap = cfg.rho_cap;
        sc.csb = cfg.csb();
        const SweepTable table = conjecture_sweep(family, rhos, sc);
        if (cfg.format == "csv") {
            std::ofstream file;
            std::ostream* os = &std::cout;
            if (!cfg.output.empty()) {
                file.open(cfg.output);
                if (!file) throw DescriptorError("cannot open output file: " + cfg.output);
                os = &file;
            }
            std::ostringstream flat;
            print_flat(flat, config_json(cmd, cfg, nullptr), "config");
            std::istringstream lines(flat.str());
            std::string line;
            while (std::getline(lines, line)) *os << "# " << line << "\n";
            write_sweep_csv(*os, table);
            return 0;
        }
        json result;
        json rows = json::array();
        for (const SweepRow& row : table.rows) {
            json r;
            r["family_param"] = row.param;
            r["upsilon"] = upsilon_json(row.ups);
            json has = json::array();
            for (const bool h : row.has_angle_row) has.push_back(h);
            r["has_angle"] = has;
            rows.push_back(r);
        }
        result["rows"] = rows;
        json flags = json::array();
        for (const ProperInclusionFlag& f : table.proper_flags)
            flags.push_back({{"rho", f.rho},
                             {"valid_member", f.valid_member},
                             {"invalid_member", f.invalid_member}});
        result["proper_inclusion_flags"] = flags;
        return emit(cfg, config, result, 0);
    }
    if (cmd == "sphere-export") {
        json result = json::array();
        for (const Vector2& p : sphere_polyline(space, cfg.resolution))
            result.push_back({{"theta", std::atan2(p.y(), p.x())}, {"x", p.x()}, {"y", p.y()}});
        return emit(cfg, config, result, 0);
    }
    throw DescriptorError("unknown command: " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rho-angle geometry on balanced-weighted planes"};
    app.require_subcommand(1);
    RunConfig cfg;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"angle", "rho-angle of a vector pair"},
        {"product", "rho-product of a vector pair"},
        {"csb", "estimate the CSB supremum at a given exponent"},
        {"upsilon", "bracket the interval of valid exponents"},
        {"classify", "class memberships of a space"},
        {"corners", "detect and verify sphere corners"},
        {"curvature", "strict convexity / curvature report"},
        {"axioms", "property-test the angle axioms"},
        {"sweep", "upsilon table over a parametric family"},
        {"sphere-export", "emit the unit-sphere polyline"},
        {"repro", "re-run the bundled reference computations"}};
    for (const auto& [name, blurb] : commands) {
        CLI::App* sub = app.add_subcommand(name, blurb);
        if (name != "repro" && name != "sweep")
            sub->add_option("--space", cfg.space_src, "space descriptor (inline JSON or file)")
                ->required();
        if (name == "angle" || name == "product") {
            sub->add_option("--x", cfg.x_str, "first vector, comma separated")->required();
            sub->add_option("--y", cfg.y_str, "second vector, comma separated")->required();
        }
        if (name == "angle" || name == "product" || name == "csb" || name == "axioms")
            sub->add_option("--rho", cfg.rho, "exponent rho");
        if (name == "classify" || name == "sweep")
            sub->add_option("--rho-grid", cfg.rho_grid_str, "comma separated rho values");
        if (name == "sweep") {
            sub->add_option("--family", cfg.family, "hoelder, hexagon or product")->required();
            sub->add_option("--params", cfg.params_str, "comma separated family parameters")
                ->required();
        }
        sub->add_option("--resolution", cfg.resolution, "search grid resolution");
        sub->add_option("--refine", cfg.refine, "refinement steps");
        sub->add_option("--tol", cfg.tol, "CSB slack tolerance");
        sub->add_option("--bracket-tol", cfg.bracket_tol, "upsilon bisection tolerance");
        sub->add_option("--rho-cap", cfg.rho_cap, "rho magnitude treated as infinity");
        sub->add_option("--samples", cfg.samples, "sample count for property checks");
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--format", cfg.format, "table, json or csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--output", cfg.output, "write output to file instead of stdout");
        sub->add_flag("--degrees", cfg.degrees, "print angles in degrees");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        return dispatch(app.get_subcommands().front()->get_name(), cfg);
    } catch (const DescriptorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DimensionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ZeroWeightError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NotPositiveDefiniteError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 4;
    }
}
