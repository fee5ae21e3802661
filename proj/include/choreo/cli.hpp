#pragma once

// Command-line front end: solve, sweep, verify, plot.
// Exit codes: 0 success, 1 runtime or I/O error, 2 flag error,
// 3 inadmissible omega, 4 verification failure.

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "constraints.hpp"
#include "io.hpp"
#include "model.hpp"
#include "optimizer.hpp"
#include "plot.hpp"
#include "symmetry.hpp"
#include "verify.hpp"

namespace choreo::cli {

enum ExitCode : int { ok = 0, runtime_error = 1, flag_error = 2, infeasible_omega = 3, verification_failed = 4 };

enum class LogLevel { quiet, info, debug };

/// CHOREO_LOG = quiet | info | debug (default info).
inline LogLevel log_level_from_env() {
    const char* v = std::getenv("CHOREO_LOG");
    if (!v) return LogLevel::info;
    const std::string s(v);
    if (s == "quiet" || s == "0" || s == "off") return LogLevel::quiet;
    if (s == "debug" || s == "2") return LogLevel::debug;
    return LogLevel::info;
}

struct RunConfig {
    std::string command;
    int n = 0;
    std::string omega;
    int nodes = 128;
    int refine = 0;
    int samples = 0;
    double tol = 1e-9;
    int max_iters = 20000;
    std::uint64_t seed = 0;
    double jitter = 0.0;
    int jobs = 1;
    bool modulo_flip = false;
    std::string out;
    std::string input;
    std::string csv;
    std::string proj = "xy";
    double el_tol = 1e-3;
};

inline nlohmann::json to_json(const SolverConfig& c) {
    return {{"nodes", c.nodes},
            {"max_iters", c.max_iters},
            {"gradient_tolerance", c.gradient_tolerance},
            {"armijo", c.armijo},
            {"backtrack", c.backtrack},
            {"max_backtracks", c.max_backtracks},
            {"lbfgs_memory", c.lbfgs_memory},
            {"plateau_tolerance", c.plateau_tolerance},
            {"plateau_nodes", c.plateau_nodes},
            {"near_collision", c.near_collision},
            {"collision_guard", c.collision_guard},
            {"seed", c.seed},
            {"jitter", c.jitter},
            {"amplitude", c.amplitude},
            {"radius", c.radius},
            {"polish_threshold", c.polish_threshold},
            {"polish_iters", c.polish_iters},
            {"polish", c.polish}};
}

inline nlohmann::json to_json(const ActionReport& r) {
    return {{"kinetic_integral", r.kinetic_integral},
            {"potential_integral", r.potential_integral},
            {"action", r.action},
            {"gradient_inf_norm", r.gradient_inf_norm},
            {"min_pairwise_distance", r.min_pairwise_distance}};
}

/// File-name friendly form of a word: "+,-,+" -> "pmp".
inline std::string word_tag(const OmegaSequence& w) {
    std::string s;
    for (int v : w.signs()) s += v > 0 ? 'p' : 'm';
    return s;
}

namespace detail {

struct Context {
    std::ostream& out;
    std::ostream& err;
    LogLevel level;
    std::mutex mu;

    void info(const std::string& s) {
        if (level == LogLevel::quiet) return;
        std::lock_guard lk(mu);
        err << s << "\n";
    }
};

inline SolverConfig solver_config(const RunConfig& rc, Context& ctx, const std::string& tag) {
    SolverConfig c;
    c.nodes = rc.nodes;
    c.max_iters = rc.max_iters;
    c.gradient_tolerance = rc.tol;
    c.seed = rc.seed;
    c.jitter = rc.jitter;
    if (ctx.level == LogLevel::debug)
        c.log = [&ctx, tag](const IterationLog& l) {
            std::ostringstream s;
            s << tag << " iter " << l.iteration << " " << l.event << " action " << std::setprecision(12) << l.action
              << " grad " << std::setprecision(3) << l.gradient_norm << " dmin " << l.min_distance;
            std::lock_guard lk(ctx.mu);
            ctx.err << s.str() << "\n";
        };
    c.validate();
    return c;
}

inline Thresholds thresholds(const RunConfig& rc) {
    Thresholds t;
    t.el_residual = rc.el_tol;
    return t;
}

/// Parses the word; inadmissible words print the reason and yield exit 3.
inline std::optional<OmegaSequence> admissible_word(const RunConfig& rc, Context& ctx, int& code) {
    OmegaSequence w = [&] {
        try {
            return OmegaSequence::parse(rc.n, rc.omega);
        } catch (const Error& e) {
            throw CLI::ValidationError("--omega", e.what());
        }
    }();
    if (const auto v = validate_omega(w); !v) {
        ctx.err << "inadmissible omega " << w.to_string() << " for n = " << rc.n << ":\n" << v.reason << "\n";
        code = infeasible_omega;
        return std::nullopt;
    }
    return w;
}

inline Trajectory make_trajectory(const SolveResult& r, const SolverConfig& c, const Thresholds& th, int refine_nodes,
                                  Certificate& cert) {
    const SymmetrySpec spec(r.n);
    FullLoop loop = reconstruct_full_loop(spec, *r.arc);
    cert = certify(loop, *r.omega, th);
    Trajectory t{std::move(loop), r.omega, nlohmann::json::object(), std::nullopt};
    t.metadata = {{"generator", "choreo solve"},
                  {"status", to_string(r.status)},
                  {"iterations", r.iterations},
                  {"escapes", r.escapes},
                  {"arc_nodes", r.arc->nodes()},
                  {"refine_nodes", refine_nodes},
                  {"report", to_json(r.report)},
                  {"solver", to_json(c)},
                  {"thresholds", to_json(th)}};
    if (!r.message.empty()) t.metadata["message"] = r.message;
    t.certificate = to_json(cert);
    return t;
}

inline SolveResult solve_one(int n, const OmegaSequence& w, const SolverConfig& c, int refine_nodes) {
    SolveResult r = minimize(n, w, c);
    if (refine_nodes > 0 && r.arc) r = refine(r, refine_nodes, c);
    return r;
}

inline int cmd_solve(const RunConfig& rc, Context& ctx) {
    int code = ok;
    const auto w = admissible_word(rc, ctx, code);
    if (!w) return code;
    const SolverConfig c = solver_config(rc, ctx, "solve");
    const Thresholds th = thresholds(rc);
    ctx.info("solving n = " + std::to_string(rc.n) + ", omega = " + w->to_string() + ", nodes = " +
             std::to_string(compatible_nodes(rc.n, rc.nodes)));
    const SolveResult r = solve_one(rc.n, *w, c, rc.refine);
    Certificate cert;
    Trajectory t = make_trajectory(r, c, th, rc.refine, cert);
    const std::string path = rc.out.empty() ? "run.traj" : rc.out;
    write_trajectory(path, t);
    if (!rc.csv.empty()) write_csv(rc.csv, rc.samples > 0 ? resample(t.loop, rc.samples) : t.loop);
    ctx.out << "status " << to_string(r.status) << ", iterations " << r.iterations << ", escapes " << r.escapes
            << "\naction " << std::setprecision(15) << r.report.action << ", min distance " << std::setprecision(6)
            << r.report.min_pairwise_distance << "\n"
            << cert.report() << "wrote " << path << "\n";
    if (r.status != SolveStatus::converged) ctx.info("warning: solver stopped before convergence");
    return ok;
}

inline int cmd_sweep(const RunConfig& rc, Context& ctx) {
    const auto words = enumerate_admissible_omega(rc.n, rc.modulo_flip);
    if (words.empty()) {
        // only n = 3 has an empty admissible set
        ctx.err << "no admissible omega for n = " << rc.n << "\n";
        if (rc.n == 3) ctx.err << validate_omega(OmegaSequence::parse(3, "+,-")).reason << "\n";
        return infeasible_omega;
    }
    const SolverConfig c = solver_config(rc, ctx, "sweep");
    const Thresholds th = thresholds(rc);
    const std::filesystem::path dir = rc.out.empty() ? "sweep_n" + std::to_string(rc.n) : rc.out;
    std::filesystem::create_directories(dir);
    ctx.info("sweeping " + std::to_string(words.size()) + " words for n = " + std::to_string(rc.n) + " with " +
             std::to_string(rc.jobs) + " jobs");
    auto results = sweep(rc.n, c, rc.modulo_flip, rc.jobs);

    std::ostringstream table;
    table << "omega\taction\tmin_distance\tstatus\tcertificate\tfile\n";
    for (auto& [w, r0] : results) {
        SolveResult r = r0;
        if (rc.refine > 0 && r.arc) r = refine(r, rc.refine, c);
        std::string file = "-", cert_state = "-";
        if (r.arc) {
            Certificate cert;
            const Trajectory t = make_trajectory(r, c, th, rc.refine, cert);
            file = "n" + std::to_string(rc.n) + "_" + word_tag(w) + ".traj";
            write_trajectory((dir / file).string(), t);
            cert_state = cert.passed() ? "pass" : "fail";
        }
        table << w.to_string() << '\t' << std::setprecision(12) << r.report.action << '\t' << std::setprecision(6)
              << r.report.min_pairwise_distance << '\t' << (r.arc ? to_string(r.status) : "error") << '\t'
              << cert_state << '\t' << file << '\n';
    }
    std::ofstream(dir / "summary.tsv") << table.str();
    ctx.out << table.str() << "wrote " << (dir / "summary.tsv").string() << "\n";
    return ok;
}

inline int cmd_verify(const RunConfig& rc, Context& ctx) {
    const Trajectory t = read_trajectory(rc.input);
    if (!t.omega) {
        ctx.err << rc.input << ": trajectory carries no omega word\n";
        return runtime_error;
    }
    const Certificate cert = certify(t.loop, *t.omega, thresholds(rc));
    ctx.out << cert.report();
    if (t.certificate) {
        const bool agree = certificate_from_json(*t.certificate).passed() == cert.passed();
        ctx.out << "embedded certificate: " << (agree ? "agrees" : "DISAGREES") << "\n";
    }
    return cert.passed() ? ok : verification_failed;
}

inline int cmd_plot(const RunConfig& rc, Context& ctx) {
    const Trajectory t = read_trajectory(rc.input);
    PlotOptions opt;
    opt.projection = parse_projection(rc.proj);
    opt.title = "n = " + std::to_string(t.loop.body_count() / 2) + (t.omega ? ", omega = " + t.omega->to_string() : "") +
                ", " + to_string(opt.projection);
    std::filesystem::path svg = rc.out.empty() ? std::filesystem::path(rc.input).replace_extension(".svg")
                                               : std::filesystem::path(rc.out);
    std::filesystem::path csv = rc.csv.empty() ? std::filesystem::path(svg).replace_extension(".csv")
                                               : std::filesystem::path(rc.csv);
    const FullLoop loop = rc.samples > 0 ? resample(t.loop, rc.samples) : t.loop;
    write_svg(svg.string(), loop, opt);
    write_csv(csv.string(), loop);
    ctx.out << "wrote " << svg.string() << " and " << csv.string() << "\n";
    return ok;
}

}  // namespace detail

/// Parses argv and runs one subcommand.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    RunConfig rc;
    CLI::App app{"Spatial double choreographies of the equal-mass 2n-body problem"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "choreo 1.0");

    auto add_solver_flags = [&](CLI::App* s) {
        s->add_option("--n", rc.n, "half the number of bodies")->required()->check(CLI::Range(2, 60));
        s->add_option("--nodes", rc.nodes, "arc intervals M on [0, n/4]; rounded up so 2M is a multiple of n")
            ->capture_default_str()
            ->check(CLI::Range(8, 1 << 20));
        s->add_option("--refine", rc.refine, "re-minimize on this many arc intervals after the first solve (0 = off)")
            ->capture_default_str()
            ->check(CLI::Range(0, 1 << 20));
        s->add_option("--tol", rc.tol, "projected-gradient tolerance")->capture_default_str()->check(CLI::PositiveNumber);
        s->add_option("--max-iters", rc.max_iters, "iteration cap")->capture_default_str()->check(CLI::NonNegativeNumber);
        s->add_option("--seed", rc.seed, "seed for the initial-guess jitter")->capture_default_str();
        s->add_option("--jitter", rc.jitter, "relative random perturbation of the initial guess")
            ->capture_default_str()
            ->check(CLI::NonNegativeNumber);
        s->add_option("--el-tol", rc.el_tol, "Euler-Lagrange residual threshold of the certificate")
            ->capture_default_str()
            ->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "minimize the action for one sign word and certify the result");
    add_solver_flags(solve);
    solve->add_option("--omega", rc.omega, "sign word, e.g. +,-,+")->required();
    solve->add_option("--out", rc.out, "trajectory file")->default_str("run.traj");
    solve->add_option("--csv", rc.csv, "also export the loop as CSV");
    solve->add_option("--samples", rc.samples, "resample the CSV export to this many loop samples (0 = native)")
        ->check(CLI::Range(0, 1 << 24));

    auto* sw = app.add_subcommand("sweep", "solve every admissible sign word of n");
    add_solver_flags(sw);
    sw->add_option("--jobs", rc.jobs, "concurrent jobs")->capture_default_str()->check(CLI::Range(1, 256));
    sw->add_flag("--modulo-flip", rc.modulo_flip, "keep one word of each pair omega, -omega");
    sw->add_option("--out", rc.out, "output directory")->default_str("sweep_n<n>");

    auto* ver = app.add_subcommand("verify", "re-certify a trajectory file");
    ver->add_option("trajectory", rc.input, "trajectory file")->required()->check(CLI::ExistingFile);
    ver->add_option("--el-tol", rc.el_tol, "Euler-Lagrange residual threshold")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    auto* plt = app.add_subcommand("plot", "SVG of the body tracks plus raw CSV");
    plt->add_option("trajectory", rc.input, "trajectory file")->required()->check(CLI::ExistingFile);
    plt->add_option("--proj", rc.proj, "projection")
        ->capture_default_str()
        ->check(CLI::IsMember({"xy", "xz", "yz", "3d-oblique"}));
    plt->add_option("--out", rc.out, "SVG file")->default_str("<trajectory>.svg");
    plt->add_option("--csv", rc.csv, "CSV file")->default_str("<svg>.csv");
    plt->add_option("--samples", rc.samples, "resample to this many loop samples (0 = native)")
        ->check(CLI::Range(0, 1 << 24));

    detail::Context ctx{out, err, log_level_from_env(), {}};
    try {
        app.parse(argc, argv);
        if (*solve) return detail::cmd_solve(rc, ctx);
        if (*sw) return detail::cmd_sweep(rc, ctx);
        if (*ver) return detail::cmd_verify(rc, ctx);
        return detail::cmd_plot(rc, ctx);
    } catch (const CLI::CallForHelp&) {
        const auto parsed = app.get_subcommands();
        out << (parsed.empty() ? app.help() : parsed.front()->help());
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::CallForVersion&) {
        out << app.version() << "\n";
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return flag_error;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return runtime_error;
    }
}

}  // namespace choreo::cli
