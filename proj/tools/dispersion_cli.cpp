#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "dispersion/a2.hpp"
#include "dispersion/centers_a1.hpp"
#include "dispersion/certify.hpp"
#include "dispersion/error.hpp"
#include "dispersion/hybrid.hpp"
#include "dispersion/io.hpp"

using namespace dispersion;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct SolveArgs {
    std::string input;
    std::string algorithm = "auto";
    double epsilon = kDefaultEpsilon;
    std::string output;
    std::string svg;
};

std::string resolve_auto(const BallInstance& inst) {
    if (is_unit(inst)) return "hybrid";
    if (is_disjoint(inst)) return "a2";
    return "centers";
}

int run_solve(const SolveArgs& args) {
    const BallInstance inst = io::instance_from_json(io::read_file(args.input));
    std::string algorithm = args.algorithm == "auto" ? resolve_auto(inst) : args.algorithm;

    Solution sol;
    std::string note;
    if (algorithm == "centers") {
        sol = solve_centers(inst);
    } else if (algorithm == "a1") {
        const A1Outcome out = solve_a1(inst);
        sol = out.solution;
        note = std::string(to_string(out.case_tag)) + (out.matching_fallback ? " (fallback)" : "");
    } else if (algorithm == "a2") {
        const A2Outcome out = solve_a2(inst, args.epsilon);
        sol = out.solution;
        note = "z* = " + std::to_string(out.z_star) + ", pairs = " + std::to_string(out.included_pairs);
    } else if (algorithm == "hybrid") {
        const HybridOutcome out = solve_hybrid(inst, args.epsilon);
        sol = out.solution;
        note = "winner " + out.winner + ", " + out.guarantee;
    } else {
        throw ValidationError("unknown algorithm '" + algorithm + "'");
    }

    const Certificate cert = certify(sol, inst);
    const std::string text = io::solution_to_json(sol, cert);
    if (args.output.empty()) {
        std::cout << text;
    } else {
        io::write_file(args.output, text);
    }
    if (!args.svg.empty()) io::write_file(args.svg, io::render_svg(inst, sol));
    std::cerr << sol.algorithm << ": min_distance = " << sol.min_distance
              << ", ratio >= " << cert.ratio_lower_bound << " (" << cert.bound_provenance << ")";
    if (!note.empty()) std::cerr << "; " << note;
    std::cerr << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric dispersion solvers: one point per ball, maximizing the minimum distance"};
    app.require_subcommand(1);

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance file");
    solve_cmd->add_option("--input,-i", solve.input, "Instance JSON")->required();
    solve_cmd->add_option("--algorithm,-a", solve.algorithm, "centers | a1 | a2 | hybrid | auto")
        ->check(CLI::IsMember({"centers", "a1", "a2", "hybrid", "auto"}));
    solve_cmd->add_option("--epsilon", solve.epsilon, "LP accuracy parameter for a2");
    solve_cmd->add_option("--output,-o", solve.output, "Solution JSON (stdout if omitted)");
    solve_cmd->add_option("--svg", solve.svg, "Also write an SVG drawing (d = 2)");

    io::GeneratorSpec gen;
    std::string kind = "disjoint-unit";
    std::string gen_output;
    auto* gen_cmd = app.add_subcommand("generate", "Generate a seeded random instance");
    gen_cmd->add_option("--kind", kind, "disjoint-unit | disjoint-arbitrary | unit-overlap")
        ->check(CLI::IsMember({"disjoint-unit", "disjoint-arbitrary", "unit-overlap"}));
    gen_cmd->add_option("--n", gen.n, "Number of balls")->required();
    gen_cmd->add_option("--seed", gen.seed, "64-bit seed");
    gen_cmd->add_option("--min-gap", gen.min_gap, "Extra clearance between balls");
    gen_cmd->add_option("--dim", gen.dimension, "Dimension (1..3)");
    gen_cmd->add_option("--output,-o", gen_output, "Instance JSON (stdout if omitted)");

    app.add_subcommand("constants", "Print the ratio constants with residuals");

    std::string svg_instance, svg_solution, svg_output;
    auto* svg_cmd = app.add_subcommand("svg", "Draw an instance and a solution");
    svg_cmd->add_option("--instance", svg_instance, "Instance JSON")->required();
    svg_cmd->add_option("--solution", svg_solution, "Solution JSON")->required();
    svg_cmd->add_option("--output,-o", svg_output, "SVG file")->required();

    std::string oracle_input;
    int oracle_k = 21;
    auto* oracle_cmd = app.add_subcommand("oracle", "Grid search lower bound on OPT (n <= 5)");
    oracle_cmd->add_option("--input,-i", oracle_input, "Instance JSON")->required();
    oracle_cmd->add_option("--k", oracle_k, "Grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        if (*solve_cmd) return run_solve(solve);
        if (*gen_cmd) {
            gen.kind = io::parse_generator_kind(kind);
            const std::string text = io::instance_to_json(io::generate(gen));
            if (gen_output.empty()) {
                std::cout << text;
            } else {
                io::write_file(gen_output, text);
            }
            return 0;
        }
        if (app.got_subcommand("constants")) {
            std::cout << io::constants_report();
            return 0;
        }
        if (*svg_cmd) {
            const BallInstance inst = io::instance_from_json(io::read_file(svg_instance));
            const io::SolutionFile sol = io::solution_from_json(io::read_file(svg_solution));
            const ValidationReport report = validate_solution(inst, sol.solution);
            if (!report.ok()) throw ValidationError("solution does not fit the instance: " + report.to_string());
            io::write_file(svg_output, io::render_svg(inst, sol.solution));
            return 0;
        }
        if (*oracle_cmd) {
            const BallInstance inst = io::instance_from_json(io::read_file(oracle_input));
            const OracleResult res = brute_force_opt(inst, oracle_k);
            nlohmann::json out = {{"k", oracle_k},
                                  {"best", std::isfinite(res.best) ? nlohmann::json(res.best) : nlohmann::json(nullptr)},
                                  {"grid_error", res.grid_error},
                                  {"nodes", res.nodes}};
            if (inst.size() >= 2) out["opt_upper"] = certify(solve_centers(inst), inst).opt_upper;
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return kExitSolver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSolver;
    }
    return 0;
}
