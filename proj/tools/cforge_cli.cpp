#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cforge/deformation.hpp>
#include <cforge/io/curve_file.hpp>
#include <cforge/io/germ_file.hpp>
#include <cforge/io/mesh.hpp>

namespace
{

using nlohmann::json;
using namespace cforge;

namespace exit_code
{
constexpr int ok = 0;
constexpr int other = 1;
constexpr int parse = 2;
constexpr int not_cuspidal = 3;
constexpr int non_generic = 4;
constexpr int curvature = 5;
constexpr int budget = 6;
constexpr int verification = 7;
} // namespace exit_code

int exit_code_for(ErrorCode code)
{
    switch (code) {
        case ErrorCode::ParseError:
            return exit_code::parse;
        case ErrorCode::NotDivisible:
        case ErrorCode::DegenerateEdge:
        case ErrorCode::DegenerateFrame:
        case ErrorCode::SingularAtOrigin:
            return exit_code::not_cuspidal;
        case ErrorCode::NonGeneric:
        case ErrorCode::GenericityViolated:
            return exit_code::non_generic;
        case ErrorCode::CurvatureTooSmall:
            return exit_code::curvature;
        case ErrorCode::BudgetExhausted:
            return exit_code::budget;
        default:
            return exit_code::other;
    }
}

// Settings resolved from flags, then CFORGE_* variables, then the config file.
struct Settings {
    int order = 8;
    double tol = 1e-7;
    std::string branch = "+";
    bool quiet = false;
};

struct Flags {
    std::optional<int> order;
    std::optional<double> tol;
    std::optional<std::string> branch;
    bool quiet = false;
    std::string config;
    std::string out;
};

template <typename V>
std::optional<V> from_env(const char *name)
{
    const char *raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') {
        return std::nullopt;
    }
    std::istringstream in(raw);
    V v{};
    if (!(in >> v) || !(in >> std::ws).eof()) {
        throw Error(ErrorCode::ParseError, std::string("bad value for ") + name + ": " + raw);
    }
    return v;
}

Settings resolve(const Flags &flags)
{
    Settings s;
    json config = json::object();
    if (!flags.config.empty()) {
        config = io::read_json(flags.config);
        if (!config.is_object()) {
            throw Error(ErrorCode::ParseError, "config file must hold an object");
        }
    }
    try {
        if (config.contains("order")) {
            s.order = config.at("order").get<int>();
        }
        if (config.contains("tol")) {
            s.tol = config.at("tol").get<double>();
        }
        if (config.contains("branch")) {
            s.branch = config.at("branch").get<std::string>();
        }
        if (config.contains("quiet")) {
            s.quiet = config.at("quiet").get<bool>();
        }
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, std::string("config: ") + e.what());
    }
    if (auto v = from_env<int>("CFORGE_ORDER")) {
        s.order = *v;
    }
    if (auto v = from_env<double>("CFORGE_TOL")) {
        s.tol = *v;
    }
    if (auto v = from_env<std::string>("CFORGE_BRANCH")) {
        s.branch = *v;
    }
    if (auto v = from_env<int>("CFORGE_QUIET")) {
        s.quiet = *v != 0;
    }
    if (flags.order) {
        s.order = *flags.order;
    }
    if (flags.tol) {
        s.tol = *flags.tol;
    }
    if (flags.branch) {
        s.branch = *flags.branch;
    }
    s.quiet = s.quiet || flags.quiet;

    if (s.order < 3) {
        throw Error(ErrorCode::ParseError, "order must be at least 3");
    }
    if (!(s.tol > 0.0)) {
        throw Error(ErrorCode::ParseError, "tol must be positive");
    }
    if (s.branch != "+" && s.branch != "-") {
        throw Error(ErrorCode::ParseError, "branch must be + or -");
    }
    return s;
}

PipelineOptions<double> pipeline_options(const Settings &s)
{
    PipelineOptions<double> o;
    o.order = s.order;
    o.form_tol = s.tol;
    return o;
}

Branch branch_of(const Settings &s)
{
    return s.branch == "+" ? Branch::plus : Branch::minus;
}

void emit(const json &doc, const Settings &s)
{
    if (!s.quiet) {
        std::cout << doc.dump(2) << '\n';
    }
}

void warn(const std::string &msg, const Settings &s)
{
    if (!s.quiet) {
        std::cerr << "warning: " << msg << '\n';
    }
}

json invariants_json(const EdgeInvariants<double> &inv)
{
    return {{"kappa_s", io::jet_to_json(inv.kappa_s)},
            {"kappa_nu", io::jet_to_json(inv.kappa_nu)},
            {"kappa_c", io::jet_to_json(inv.kappa_c)},
            {"kappa", io::jet_to_json(inv.kappa)},
            {"tau", io::jet_to_json(inv.tau)},
            {"frenet_defined", inv.frenet_defined},
            {"generic", inv.generic},
            {"cuspidal_edge", inv.cuspidal_edge}};
}

json verification_json(const Verification<double> &v)
{
    const auto &iso = v.isometry;
    return {{"passed", v.passed},
            {"failures", v.failures},
            {"degree", iso.degree},
            {"form_deviation", iso.form_deviation},
            {"form_by_degree", iso.form_by_degree},
            {"product_deviation", iso.product_deviation ? json(*iso.product_deviation) : json(nullptr)},
            {"boundary_deviation", iso.boundary_deviation},
            {"kappa_s_deviation", v.kappa_s_deviation}};
}

double boundary_torsion(const MapGerm<double> &g)
{
    try {
        return frenet_apparatus(g.singular_image()).tau.max_abs();
    } catch (const Error &) {
        return NAN;
    }
}

json member_json(const DeformationResult<double> &r)
{
    const auto &inv = r.result_invariants;
    return {{"parameter", r.parameter},
            {"branch", r.branch == Branch::plus ? "+" : "-"},
            {"kappa_nu0", inv.kappa_nu[0]},
            {"kappa_c0", inv.kappa_c[0]},
            {"abs_kappa_c_kappa_nu0", std::abs(inv.kappa_c[0] * inv.kappa_nu[0])},
            {"kappa0", inv.kappa[0]},
            {"boundary_torsion_max", boundary_torsion(r.germ)},
            {"verification", verification_json(r.verification)}};
}

std::filesystem::path member_path(const std::string &out, std::size_t k, std::size_t count)
{
    std::filesystem::path p(out);
    if (count == 1) {
        return p;
    }
    const auto stem = p.stem().string();
    const auto ext = p.has_extension() ? p.extension().string() : std::string(".json");
    return p.parent_path() / (stem + "_" + std::to_string(k) + ext);
}

int run_invariants(const std::string &file, const Settings &s)
{
    const auto f = io::read_germ(file, s.order);
    const auto adapted = adapt_germ(f, AdaptOptions<double>{true});
    const auto inv = edge_invariants(adapted.germ);
    const auto nu = unit_normal(adapted.germ);
    const auto nu_v = constant_term(derive_v(nu));
    const double k0 = inv.kappa[0];
    const double identity =
        inv.frenet_defined
            ? (inv.kappa * inv.kappa - inv.kappa_s * inv.kappa_s - inv.kappa_nu * inv.kappa_nu).max_abs()
            : NAN;
    const json doc{{"order", s.order},
                   {"orientation_flipped", adapted.orientation_flipped},
                   {"invariants", invariants_json(inv)},
                   {"checks",
                    {{"front", std::sqrt(dot(nu_v, nu_v)) > 1e-12},
                     {"cuspidal_edge", inv.cuspidal_edge},
                     {"generic", inv.generic},
                     {"curvature_exceeds_kappa_s", inv.frenet_defined && k0 > std::abs(inv.kappa_s[0])},
                     {"kappa_identity_residual", std::isnan(identity) ? json(nullptr) : json(identity)}}}};
    emit(doc, s);
    return inv.cuspidal_edge ? exit_code::ok : exit_code::not_cuspidal;
}

int run_adapt(const std::string &file, const Settings &s, const std::string &out)
{
    const auto f = io::read_germ(file, s.order);
    const auto adapted = adapt_germ(f, AdaptOptions<double>{true});
    const auto report = check_adapted(adapted.germ);
    const json germ = io::germ_to_json(adapted.germ);
    if (!out.empty()) {
        io::write_json(out, germ);
    }
    emit({{"orientation_flipped", adapted.orientation_flipped},
          {"adapted_deviation", report.worst()},
          {"germ", germ}},
         s);
    return exit_code::ok;
}

struct DeformRequest {
    std::string curve;
    bool isomer = false;
    bool planar = false;
    std::string family;
    bool source_coordinates = false;
};

int run_deform(const std::string &file, const DeformRequest &req, const Settings &s, const std::string &out)
{
    const int chosen = (req.curve.empty() ? 0 : 1) + (req.isomer ? 1 : 0) + (req.planar ? 1 : 0) +
                       (req.family.empty() ? 0 : 1);
    if (chosen != 1) {
        throw Error(ErrorCode::ParseError, "choose exactly one of --curve, --isomer, --planar, --family");
    }
    const auto options = pipeline_options(s);
    const auto f = io::read_germ(file, options.working_order());

    std::vector<DeformationResult<double>> members;
    json extra = json::object();
    if (req.isomer) {
        members.push_back(isomer(f, options));
    } else if (!req.curve.empty()) {
        members.push_back(deform_to_curve(f, io::read_curve(req.curve, options.working_order()), branch_of(s), options));
    } else if (req.planar) {
        auto fam = planar_normalization(f, branch_of(s), linear_grid(0.0, 1.0, 11), options);
        members = std::move(fam.members);
        if (fam.reflection_deviation) {
            extra["reflection_deviation"] = *fam.reflection_deviation;
        }
    } else {
        const auto range = io::parse_range(req.family);
        auto fam = kappa_nu_family(f, linear_grid(range.lo, range.hi, range.count), options);
        members = std::move(fam.members);
        if (fam.law_deviation) {
            extra["law_deviation"] = *fam.law_deviation;
        }
    }

    json report{{"members", json::array()}};
    report.update(extra);
    bool passed = true;
    for (std::size_t k = 0; k < members.size(); ++k) {
        auto entry = member_json(members[k]);
        if (!out.empty()) {
            const auto path = member_path(out, k, members.size());
            io::write_germ(path, req.source_coordinates ? to_source_coordinates(members[k]) : members[k].germ);
            entry["file"] = path.string();
        }
        passed = passed && members[k].verification.passed;
        report["members"].push_back(std::move(entry));
    }
    report["passed"] = passed;
    if (!out.empty()) {
        auto p = std::filesystem::path(out);
        io::write_json(p.parent_path() / (p.stem().string() + ".report.json"), report);
    }
    emit(report, s);
    return passed ? exit_code::ok : exit_code::verification;
}

int run_verify(const std::string &a, const std::string &b, const Settings &s)
{
    // E, F, G lose one degree against the germ.
    const auto f = io::read_germ(a, s.order + 1);
    const auto g = io::read_germ(b, s.order + 1);
    const auto r = verify_isometry(f, g, s.order);
    const bool passed = r.form_deviation <= s.tol;
    emit({{"degree", r.degree},
          {"form_deviation", r.form_deviation},
          {"form_by_degree", r.form_by_degree},
          {"product_deviation", r.product_deviation ? json(*r.product_deviation) : json(nullptr)},
          {"boundary_deviation", r.boundary_deviation},
          {"passed", passed}},
         s);
    return passed ? exit_code::ok : exit_code::verification;
}

int run_mesh(const std::string &file, const std::string &u, const std::string &v, const std::string &format,
             const Settings &s, const std::string &out)
{
    const auto f = io::read_germ(file, s.order);
    const auto grid = io::sample_germ(f, io::parse_range(u), io::parse_range(v));
    for (const auto &w : grid.warnings) {
        warn(w, s);
    }
    std::ostringstream text;
    if (format == "obj") {
        io::write_obj(text, grid);
    } else {
        io::write_csv(text, grid);
    }
    if (out.empty()) {
        std::cout << text.str();
    } else {
        std::ofstream os(out, std::ios::binary);
        if (!os) {
            throw Error(ErrorCode::ParseError, "cannot write " + out);
        }
        os << text.str();
    }
    return exit_code::ok;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Cuspidal edge germs: invariants, isometric deformations and mesh export"};
    app.require_subcommand(1);

    Flags flags;
    const auto add_common = [&](CLI::App *sub) {
        sub->add_option("--order", flags.order, "Total degree of results (default 8)");
        sub->add_option("--tol", flags.tol, "First fundamental form tolerance (default 1e-7)");
        sub->add_flag("--quiet", flags.quiet, "Suppress reports and warnings");
        sub->add_option("--config", flags.config, "JSON file with order, tol, branch, quiet");
    };

    std::string input, second;

    auto *inv = app.add_subcommand("invariants", "Adapted-coordinate invariants and genericity checks");
    inv->add_option("germ", input, "Germ JSON file")->required();
    add_common(inv);

    auto *adapt = app.add_subcommand("adapt", "Rewrite a germ in adapted coordinates");
    adapt->add_option("germ", input, "Germ JSON file")->required();
    adapt->add_option("--out", flags.out, "Output germ file");
    add_common(adapt);

    DeformRequest req;
    auto *deform = app.add_subcommand("deform", "Isometric deformation along a target curve");
    deform->add_option("germ", input, "Germ JSON file")->required();
    deform->add_option("--curve", req.curve, "Target curve JSON file");
    deform->add_flag("--isomer", req.isomer, "Second germ sharing the image of the singular curve");
    deform->add_flag("--planar", req.planar, "Family ending in a planar singular image");
    deform->add_option("--family", req.family, "Limiting normal curvature family s0:s1:n");
    deform->add_option("--branch", flags.branch, "Normal field branch, + or -");
    deform->add_option("--out", flags.out, "Output germ file; families get _k suffixes");
    deform->add_flag("--source-coordinates", req.source_coordinates,
                     "Write germs in the input's coordinates instead of adapted ones");
    add_common(deform);

    auto *verify = app.add_subcommand("verify", "Compare first fundamental forms of two germs");
    verify->add_option("source", input, "First germ")->required();
    verify->add_option("target", second, "Second germ")->required();
    add_common(verify);

    std::string u_range = "-0.125:0.125:64", v_range = "-0.25:0.25:64", format = "obj";
    auto *mesh = app.add_subcommand("mesh", "Sample a germ on a grid");
    mesh->add_option("germ", input, "Germ JSON file")->required();
    mesh->add_option("--u", u_range, "u range a:b:n");
    mesh->add_option("--v", v_range, "v range c:d:m");
    mesh->add_option("--format", format, "obj or csv")->check(CLI::IsMember({"obj", "csv"}));
    mesh->add_option("--out", flags.out, "Output file (stdout if omitted)");
    add_common(mesh);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::parse;
    }

    try {
        const auto s = resolve(flags);
        if (inv->parsed()) {
            return run_invariants(input, s);
        }
        if (adapt->parsed()) {
            return run_adapt(input, s, flags.out);
        }
        if (deform->parsed()) {
            return run_deform(input, req, s, flags.out);
        }
        if (verify->parsed()) {
            return run_verify(input, second, s);
        }
        return run_mesh(input, u_range, v_range, format, s, flags.out);
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::other;
    }
}
