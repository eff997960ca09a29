// covkit command-line front end: jacobians, covering constants, limsup
// probes, coincidence solves, and the built-in mapping catalog, with
// table or JSON output. Exit codes: 0 success, 1 numerical failure
// (non-convergence or a violated certificate bound), 2 usage or parse errors.

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "covkit/catalog.hpp"
#include "covkit/coderivative.hpp"
#include "covkit/coincidence.hpp"
#include "covkit/covering.hpp"
#include "covkit/frechet.hpp"
#include "covkit/json_io.hpp"

namespace {

using namespace covkit;

constexpr std::uint64_t kDefaultSeed = 1729;  // documented default; COD_SEED overrides

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t seed_from_env() {
    if (const char* env = std::getenv("COD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError(std::string("COD_SEED is not an unsigned integer: ") + env);
        }
    }
    return kDefaultSeed;
}

struct CommonOptions {
    std::uint64_t seed = kDefaultSeed;
    std::string format = "table";
    std::string out_path;
    Tolerances tols;

    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed (default " + std::to_string(kDefaultSeed) +
                                            "; COD_SEED overrides the default)");
        cmd->add_option("--format", format, "Output format: table or json")
            ->check(CLI::IsMember({"table", "json"}));
        cmd->add_option("--out", out_path, "Write the JSON document to this path");
        cmd->add_option("--abs-tol", tols.abs_tol, "Absolute tolerance");
        cmd->add_option("--rel-tol", tols.rel_tol, "Relative tolerance");
        cmd->add_option("--singular-floor", tols.singular_floor,
                        "Singular values below this report as exact zeros");
    }
};

Point parse_point(const std::string& text) {
    std::vector<double> coords;
    std::string piece;
    std::istringstream stream(text);
    while (std::getline(stream, piece, ',')) {
        try {
            std::size_t used = 0;
            double v = std::stod(piece, &used);
            while (used < piece.size() && std::isspace(static_cast<unsigned char>(piece[used]))) {
                ++used;
            }
            if (used != piece.size()) throw std::invalid_argument(piece);
            coords.push_back(v);
        } catch (const std::exception&) {
            throw UsageError("malformed coordinate '" + piece + "' in point '" + text + "'");
        }
    }
    if (coords.empty()) throw UsageError("empty point '" + text + "'");
    return Point(std::move(coords));
}

struct MappingSpec {
    MappingHandle handle;
    std::string description;
};

MappingSpec resolve_mapping(const std::string& spec, int n, int m, int k) {
    const std::string catalog_prefix = "catalog:";
    const std::string expr_prefix = "expr:";
    if (spec.rfind(catalog_prefix, 0) == 0) {
        std::string name = spec.substr(catalog_prefix.size());
        auto id = catalog::id_from_name(name);
        if (!id) throw UsageError("unknown catalog mapping '" + name + "'");
        const auto& entry = catalog::get(*id);
        return {entry.handle, entry.name};
    }
    if (spec.rfind(expr_prefix, 0) == 0) {
        std::string payload = spec.substr(expr_prefix.size());
        std::ifstream file(payload);
        expr::ExprMapping mapping;
        if (file.good()) {
            std::stringstream buffer;
            buffer << file.rdbuf();
            mapping = expr::mapping_from_json(buffer.str());
        } else {
            mapping = expr::parse_mapping(payload, n, m, k);
        }
        if (mapping.param_count > 0) {
            throw UsageError("mapping '" + spec + "' declares parameters; bind them via `solve`");
        }
        return {make_handle(mapping), expr::to_string(mapping)};
    }
    throw UsageError("mapping spec must start with 'catalog:' or 'expr:', got '" + spec + "'");
}

std::string format_matrix(const Jacobian& j) {
    std::ostringstream out;
    out << std::setprecision(12);
    for (int r = 0; r < j.rows(); ++r) {
        out << "  [";
        for (int c = 0; c < j.cols(); ++c) {
            if (c > 0) out << ", ";
            out << std::setw(16) << j(r, c);
        }
        out << " ]\n";
    }
    return out.str();
}

nlohmann::json config_json(const CommonOptions& common) {
    return {{"seed", common.seed},
            {"tolerances",
             {{"abs_tol", common.tols.abs_tol},
              {"rel_tol", common.tols.rel_tol},
              {"singular_floor", common.tols.singular_floor}}}};
}

void emit(const CommonOptions& common, const std::string& command, nlohmann::json config,
          nlohmann::json result, const std::string& table) {
    nlohmann::json doc = {{"schema_version", kSchemaVersion},
                          {"command", command},
                          {"config", std::move(config)},
                          {"result", std::move(result)}};
    if (common.format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << table;
    }
    if (!common.out_path.empty()) {
        std::ofstream out(common.out_path);
        if (!out) throw UsageError("cannot open output path '" + common.out_path + "'");
        out << doc.dump(2) << "\n";
    }
}

// ---------------------------------------------------------------------------

struct JacobianArgs {
    std::string mapping;
    std::string at;
    int n = 2, m = 2;
    double fd_step = 1e-6;
    CommonOptions common;
};

int run_jacobian(const JacobianArgs& args) {
    MappingSpec spec = resolve_mapping(args.mapping, args.n, args.m, 0);
    Point z = parse_point(args.at);
    Jacobian exact = jacobian_at(spec.handle, z);
    Jacobian fd = fd_jacobian(spec.handle, z, args.fd_step);
    double max_dev = 0.0;
    for (int r = 0; r < exact.rows(); ++r)
        for (int c = 0; c < exact.cols(); ++c)
            max_dev = std::max(max_dev, std::abs(exact(r, c) - fd(r, c)));

    std::ostringstream table;
    table << "mapping: " << spec.description << "\n";
    table << "analytic/AD jacobian:\n" << format_matrix(exact);
    table << "central-difference jacobian (h = " << args.fd_step << "):\n" << format_matrix(fd);
    table << "max deviation: " << max_dev << "\n";

    nlohmann::json config = config_json(args.common);
    config["mapping"] = args.mapping;
    config["at"] = to_json(z);
    config["fd_step"] = args.fd_step;
    nlohmann::json result = {{"jacobian", to_json(exact)},
                             {"fd_jacobian", to_json(fd)},
                             {"max_deviation", max_dev}};
    emit(args.common, "jacobian", config, result, table.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CoveringArgs {
    std::string mapping;
    std::string at;
    int n = 2, m = 2;
    double eta0 = 1.0;
    double factor = 0.5;
    int levels = 13;
    int samples = 1024;
    CommonOptions common;
};

int run_covering(const CoveringArgs& args) {
    MappingSpec spec = resolve_mapping(args.mapping, args.n, args.m, 0);
    Point z = parse_point(args.at);
    EtaSchedule schedule(args.eta0, args.factor, args.levels);
    CoveringReport report =
        covering_constant(spec.handle, z, schedule, args.samples, args.common.seed,
                          args.common.tols);

    std::ostringstream table;
    table << "mapping: " << spec.description << "\n";
    table << std::setprecision(10);
    table << std::setw(14) << "eta" << std::setw(16) << "inf" << std::setw(10) << "samples"
          << std::setw(10) << "accepted" << "\n";
    for (const EtaLevel& level : report.per_eta_inf) {
        table << std::setw(14) << level.eta;
        if (level.empty) {
            table << std::setw(16) << "(empty)";
        } else {
            table << std::setw(16) << level.inf_estimate;
        }
        table << std::setw(10) << level.sample_count << std::setw(10) << level.accepted_count
              << "\n";
    }
    table << "final estimate: " << report.final_estimate << "\n";
    table << "monotone inf net: " << (report.monotone ? "yes" : "no") << "\n";
    if (report.any_level_empty) {
        table << "warning: some eta levels had empty accepted sets (inf over the empty set)\n";
    }

    nlohmann::json config = config_json(args.common);
    config["mapping"] = args.mapping;
    config["at"] = to_json(z);
    config["schedule"] = {{"eta0", args.eta0}, {"factor", args.factor}, {"count", args.levels}};
    config["samples_per_eta"] = args.samples;
    emit(args.common, "covering", config, to_json(report), table.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ProbeArgs {
    std::string mapping;
    std::string at;
    std::string covector;
    std::string candidate = "auto";
    int n = 2, m = 2;
    double tol = 1e-3;
    int random_count = 32;
    CommonOptions common;
};

int run_probe(const ProbeArgs& args) {
    MappingSpec spec = resolve_mapping(args.mapping, args.n, args.m, 0);
    Point x = parse_point(args.at);
    Point y = parse_point(args.covector);

    Point candidate = Point::zeros(x.dim());
    if (args.candidate == "auto") {
        // adjoint candidate at differentiable points; the zero candidate at
        // singular points (where the ray limits are candidate-independent
        // whenever the mapping jumps)
        if (!spec.handle.is_excluded(x)) {
            candidate = adjoint_apply(jacobian_at(spec.handle, x), y);
        }
    } else {
        candidate = parse_point(args.candidate);
    }

    ProbeConfig config = ProbeConfig::defaults();
    config.tol = args.tol;
    config.random_count = args.random_count;
    config.seed = args.common.seed;
    LimsupProbeReport report =
        limsup_probe(spec.handle, x, y, candidate, standard_rays(x.dim()), config);

    std::ostringstream table;
    table << "mapping: " << spec.description << "\n";
    table << std::setprecision(8);
    table << "candidate: [";
    for (int i = 0; i < candidate.dim(); ++i) {
        if (i > 0) table << ", ";
        table << candidate[i];
    }
    table << "]\n";
    table << std::setw(24) << "ray" << std::setw(18) << "limit estimate" << "\n";
    for (const RayEstimate& ray : report.probe_rays) {
        std::ostringstream dir;
        dir << "(";
        for (int i = 0; i < ray.direction.dim(); ++i) {
            if (i > 0) dir << ", ";
            dir << std::setprecision(4) << ray.direction[i];
        }
        dir << ")";
        table << std::setw(24) << dir.str() << std::setw(18) << ray.limit_estimate << "\n";
    }
    table << "skipped rays: " << report.skipped_rays.size() << "\n";
    table << "random probe max: " << report.random_probe_max << "\n";
    table << "verdict: " << to_string(report.verdict) << "\n";

    nlohmann::json config_doc = config_json(args.common);
    config_doc["mapping"] = args.mapping;
    config_doc["at"] = to_json(x);
    config_doc["covector"] = to_json(y);
    config_doc["candidate"] = to_json(candidate);
    config_doc["tol"] = args.tol;
    config_doc["random_count"] = args.random_count;
    emit(args.common, "probe", config_doc, to_json(report), table.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct FrechetArgs {
    std::string mapping;
    std::string at;
    int n = 2, m = 2;
    double tol = 1e-4;
    int probes = 16;
    CommonOptions common;
};

int run_frechet(const FrechetArgs& args) {
    MappingSpec spec = resolve_mapping(args.mapping, args.n, args.m, 0);
    Point z = parse_point(args.at);
    Jacobian j = jacobian_at(spec.handle, z);
    DifferentiabilityReport report =
        check_frechet(spec.handle, z, j, default_radii(), args.probes, args.tol,
                      args.common.seed);

    std::ostringstream table;
    table << "mapping: " << spec.description << "\n";
    table << std::setprecision(8);
    table << std::setw(14) << "radius" << std::setw(18) << "worst residual" << "\n";
    for (std::size_t i = 0; i < report.radii.size(); ++i) {
        table << std::setw(14) << report.radii[i] << std::setw(18)
              << report.worst_residual_per_radius[i] << "\n";
    }
    table << "verdict: " << to_string(report.verdict) << "\n";

    nlohmann::json config = config_json(args.common);
    config["mapping"] = args.mapping;
    config["at"] = to_json(z);
    config["tol"] = args.tol;
    config["probes_per_radius"] = args.probes;
    emit(args.common, "frechet", config, to_json(report), table.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SolveArgs {
    std::string f_spec;
    std::string g_spec;
    std::string xbar;
    std::vector<std::string> params;
    double alpha = 0.0;
    double beta = 0.0;
    bool estimate_beta = false;
    double ball_radius = 1.0;
    int n = 2, m = 2, k = 1;
    int max_iter = 50;
    double tol = 1e-10;
    bool identity_check = false;
    CommonOptions common;
};

ParameterizedMapping resolve_parameterized(const std::string& spec, int n, int m, int k) {
    const std::string expr_prefix = "expr:";
    if (spec.rfind(expr_prefix, 0) != 0) {
        throw UsageError("G must be an expression mapping spec 'expr:...', got '" + spec + "'");
    }
    std::string payload = spec.substr(expr_prefix.size());
    std::ifstream file(payload);
    expr::ExprMapping mapping;
    if (file.good()) {
        std::stringstream buffer;
        buffer << file.rdbuf();
        mapping = expr::mapping_from_json(buffer.str());
    } else {
        mapping = expr::parse_mapping(payload, n, m, k);
    }
    return make_parameterized(mapping);
}

int run_solve(const SolveArgs& args) {
    MappingSpec f = resolve_mapping(args.f_spec, args.n, args.m, 0);
    ParameterizedMapping g = resolve_parameterized(args.g_spec, args.n, args.m, args.k);
    Point x_bar = parse_point(args.xbar);
    if (args.params.empty()) throw UsageError("at least one --p parameter point is required");
    if (!(args.alpha > 0.0)) throw UsageError("--alpha must be positive");

    SolveOptions options;
    options.max_iter = args.max_iter;
    options.tol = args.tol;
    options.tols = args.common.tols;

    std::ostringstream table;
    table << std::setprecision(12);
    nlohmann::json certs = nlohmann::json::array();
    bool all_ok = true;

    for (const std::string& ptext : args.params) {
        Point p = parse_point(ptext);
        double beta = args.beta;
        if (args.estimate_beta) {
            beta = estimate_lipschitz(g, Ball(x_bar, args.ball_radius), p, 512, args.common.seed);
        }
        CoincidenceCertificate cert =
            solve_coincidence(f.handle, g, x_bar, p, args.alpha, beta, options);
        if (args.identity_check) {
            Point gs = g.evaluate(cert.solution, p);
            double n2 = inner(cert.solution, cert.solution);
            cert.radial_identity_residual = std::abs(inner(gs, gs) - n2 * n2);
        }
        certs.push_back(to_json(cert));

        table << "p = " << ptext << ":\n";
        table << "  solution: [";
        for (int i = 0; i < cert.solution.dim(); ++i) {
            if (i > 0) table << ", ";
            table << cert.solution[i];
        }
        table << "]\n";
        table << "  residual: " << cert.residual << "  iterations: " << cert.iterations
              << (cert.converged ? "" : "  (did not converge)") << "\n";
        table << "  ||sigma - x_bar||: " << distance(cert.solution, x_bar)
              << "  bound rhs: " << cert.bound_rhs
              << "  bound holds: " << (cert.bound_holds ? "yes" : "no") << "\n";
        if (cert.radial_identity_residual) {
            table << "  radial identity residual: " << *cert.radial_identity_residual << "\n";
        }
        if (args.estimate_beta) table << "  estimated beta: " << beta << "\n";
        if (!cert.converged || !cert.bound_holds) all_ok = false;
    }

    nlohmann::json config = config_json(args.common);
    config["f"] = args.f_spec;
    config["g"] = args.g_spec;
    config["x_bar"] = to_json(x_bar);
    config["alpha"] = args.alpha;
    config["beta"] = args.beta;
    config["estimate_beta"] = args.estimate_beta;
    config["max_iter"] = args.max_iter;
    config["tol"] = args.tol;
    emit(args.common, "solve", config, certs, table.str());
    return all_ok ? kExitOk : kExitNumerical;
}

// ---------------------------------------------------------------------------

struct LipschitzArgs {
    std::string g_spec;
    std::string center;
    double radius = 1.0;
    std::string p = "0";
    int pairs = 512;
    int n = 2, m = 2, k = 1;
    CommonOptions common;
};

int run_lipschitz(const LipschitzArgs& args) {
    ParameterizedMapping g = resolve_parameterized(args.g_spec, args.n, args.m, args.k);
    Point center = parse_point(args.center);
    Point p = parse_point(args.p);
    double beta = estimate_lipschitz(g, Ball(center, args.radius), p, args.pairs,
                                     args.common.seed);

    std::ostringstream table;
    table << std::setprecision(12) << "estimated Lipschitz modulus (lower estimate): " << beta
          << "\n";
    nlohmann::json config = config_json(args.common);
    config["g"] = args.g_spec;
    config["center"] = to_json(center);
    config["radius"] = args.radius;
    config["p"] = to_json(p);
    config["pairs"] = args.pairs;
    emit(args.common, "lipschitz", config, {{"beta_estimate", beta}}, table.str());
    return kExitOk;
}

// ---------------------------------------------------------------------------

int run_catalog_list() {
    for (catalog::Id id : catalog::all_ids()) {
        const auto& entry = catalog::get(id);
        std::cout << std::left << std::setw(16) << entry.name << entry.definition << "\n";
    }
    return kExitOk;
}

int run_catalog_show(const std::string& name) {
    auto id = catalog::id_from_name(name);
    if (!id) throw UsageError("unknown catalog mapping '" + name + "'");
    const auto& entry = catalog::get(*id);
    std::cout << "name:        " << entry.name << "\n";
    std::cout << "definition:  " << entry.definition << "\n";
    std::cout << "expression:  " << entry.expression << "\n";
    std::cout << "excluded:    ";
    if (entry.handle.excluded_points.empty()) {
        std::cout << "none\n";
    } else {
        for (const Point& p : entry.handle.excluded_points) {
            std::cout << "(";
            for (int i = 0; i < p.dim(); ++i) {
                if (i > 0) std::cout << ", ";
                std::cout << p[i];
            }
            std::cout << ") ";
        }
        std::cout << "\n";
    }
    Point sample{1, 1};
    if (!entry.handle.is_excluded(sample)) {
        std::cout << "jacobian at (1, 1):\n" << format_matrix(entry.handle.analytic_jacobian(sample));
    }
    auto ref = entry.reference_covering(Point{1, 1});
    std::cout << "covering constant at (1, 1): ";
    switch (ref.kind) {
        case catalog::ReferenceCovering::Kind::Exact:
            std::cout << ref.exact_value << " (exact)\n";
            break;
        case catalog::ReferenceCovering::Kind::Zero: std::cout << "0 (exact)\n"; break;
        case catalog::ReferenceCovering::Kind::UpperBounds:
            std::cout << "upper bounds:";
            for (double b : ref.upper_bounds) std::cout << " " << b;
            std::cout << "\n";
            break;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"covkit: jacobians, coderivative actions, covering constants, and "
                 "coincidence-equation certificates for small dense mappings"};
    app.require_subcommand(1);

    std::uint64_t env_seed;
    try {
        env_seed = seed_from_env();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    JacobianArgs jac;
    jac.common.seed = env_seed;
    auto* jac_cmd = app.add_subcommand("jacobian", "Analytic/AD and FD jacobians side by side");
    jac_cmd->add_option("mapping", jac.mapping, "catalog:<id> or expr:<file|inline>")->required();
    jac_cmd->add_option("--at", jac.at, "Evaluation point, comma separated")->required();
    jac_cmd->add_option("--n", jac.n, "Input dimension for inline expressions");
    jac_cmd->add_option("--m", jac.m, "Output dimension for inline expressions");
    jac_cmd->add_option("--fd-step", jac.fd_step, "Finite-difference step");
    jac.common.attach(jac_cmd);

    CoveringArgs cov;
    cov.common.seed = env_seed;
    auto* cov_cmd = app.add_subcommand("covering", "Covering-constant estimate with eta trace");
    cov_cmd->add_option("mapping", cov.mapping, "catalog:<id> or expr:<file|inline>")->required();
    cov_cmd->add_option("--at", cov.at, "Base point")->required();
    cov_cmd->add_option("--n", cov.n, "Input dimension for inline expressions");
    cov_cmd->add_option("--m", cov.m, "Output dimension for inline expressions");
    cov_cmd->add_option("--eta0", cov.eta0, "Largest ball radius");
    cov_cmd->add_option("--factor", cov.factor, "Radius shrink factor in (0,1)");
    cov_cmd->add_option("--levels", cov.levels, "Number of radii");
    cov_cmd->add_option("--samples", cov.samples, "Low-discrepancy samples per radius");
    cov.common.attach(cov_cmd);

    ProbeArgs probe;
    probe.common.seed = env_seed;
    auto* probe_cmd =
        app.add_subcommand("probe", "Limsup-quotient membership probe at a point");
    probe_cmd->add_option("mapping", probe.mapping, "catalog:<id> or expr:<file|inline>")
        ->required();
    probe_cmd->add_option("--at", probe.at, "Base point x")->required();
    probe_cmd->add_option("--y", probe.covector, "Covector y")->required();
    probe_cmd->add_option("--z", probe.candidate,
                          "Candidate z (comma separated) or 'auto' for the adjoint candidate");
    probe_cmd->add_option("--n", probe.n, "Input dimension for inline expressions");
    probe_cmd->add_option("--m", probe.m, "Output dimension for inline expressions");
    probe_cmd->add_option("--tol", probe.tol, "Rejection threshold");
    probe_cmd->add_option("--random-count", probe.random_count, "Random diagnostic directions");
    probe.common.attach(probe_cmd);

    FrechetArgs fre;
    fre.common.seed = env_seed;
    auto* fre_cmd = app.add_subcommand("frechet", "Linear-approximation residual-decay audit");
    fre_cmd->add_option("mapping", fre.mapping, "catalog:<id> or expr:<file|inline>")->required();
    fre_cmd->add_option("--at", fre.at, "Audit point")->required();
    fre_cmd->add_option("--n", fre.n, "Input dimension for inline expressions");
    fre_cmd->add_option("--m", fre.m, "Output dimension for inline expressions");
    fre_cmd->add_option("--tol", fre.tol, "Residual tolerance for the supported verdict");
    fre_cmd->add_option("--probes", fre.probes, "Probe directions per radius");
    fre.common.attach(fre_cmd);

    SolveArgs solve;
    solve.common.seed = env_seed;
    auto* solve_cmd =
        app.add_subcommand("solve", "Coincidence solve F(x) = G(x, p) with certificate");
    solve_cmd->add_option("--f", solve.f_spec, "F: catalog:<id> or expr:<file|inline>")
        ->required();
    solve_cmd->add_option("--g", solve.g_spec, "G: expr:<file|inline> with parameters p1..pk")
        ->required();
    solve_cmd->add_option("--xbar", solve.xbar, "Base point x_bar")->required();
    solve_cmd->add_option("--p", solve.params, "Parameter point (repeat for a grid)")->required();
    solve_cmd->add_option("--alpha", solve.alpha, "Covering modulus alpha")->required();
    solve_cmd->add_option("--beta", solve.beta, "Lipschitz modulus beta of G in x");
    solve_cmd->add_flag("--estimate-beta", solve.estimate_beta,
                        "Estimate beta by sampling instead of --beta");
    solve_cmd->add_option("--ball-radius", solve.ball_radius,
                          "Ball radius for --estimate-beta sampling");
    solve_cmd->add_option("--n", solve.n, "Input dimension for inline expressions");
    solve_cmd->add_option("--m", solve.m, "Output dimension for inline expressions");
    solve_cmd->add_option("--k", solve.k, "Parameter count for inline expressions");
    solve_cmd->add_option("--max-iter", solve.max_iter, "Iteration cap");
    solve_cmd->add_option("--tol", solve.tol, "Residual tolerance");
    solve_cmd->add_flag("--identity-check", solve.identity_check,
                        "Verify ||G(sigma,p)|| = ||sigma||^2 after the solve");
    solve.common.attach(solve_cmd);

    LipschitzArgs lip;
    lip.common.seed = env_seed;
    auto* lip_cmd = app.add_subcommand("lipschitz", "Sampled Lipschitz-modulus estimate for G");
    lip_cmd->add_option("--g", lip.g_spec, "G: expr:<file|inline>")->required();
    lip_cmd->add_option("--center", lip.center, "Ball center")->required();
    lip_cmd->add_option("--radius", lip.radius, "Ball radius");
    lip_cmd->add_option("--p", lip.p, "Parameter point");
    lip_cmd->add_option("--pairs", lip.pairs, "Sample pairs");
    lip_cmd->add_option("--n", lip.n, "Input dimension for inline expressions");
    lip_cmd->add_option("--m", lip.m, "Output dimension for inline expressions");
    lip_cmd->add_option("--k", lip.k, "Parameter count for inline expressions");
    lip.common.attach(lip_cmd);

    auto* cat_cmd = app.add_subcommand("catalog", "Built-in reference mappings");
    auto* cat_list = cat_cmd->add_subcommand("list", "List catalog mappings");
    std::string show_name;
    auto* cat_show = cat_cmd->add_subcommand("show", "Show one catalog mapping");
    cat_show->add_option("id", show_name, "Catalog id, e.g. poly_4_3")->required();
    cat_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (jac_cmd->parsed()) return run_jacobian(jac);
        if (cov_cmd->parsed()) return run_covering(cov);
        if (probe_cmd->parsed()) return run_probe(probe);
        if (fre_cmd->parsed()) return run_frechet(fre);
        if (solve_cmd->parsed()) return run_solve(solve);
        if (lip_cmd->parsed()) return run_lipschitz(lip);
        if (cat_cmd->parsed()) {
            if (cat_list->parsed()) return run_catalog_list();
            if (cat_show->parsed()) return run_catalog_show(show_name);
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ExcludedPointError& e) {
        std::cerr << "error: excluded point: " << e.what() << "\n";
        return kExitUsage;
    } catch (const expr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const expr::EvalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
