#include <packcov/packcov.hpp>

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using packcov::json;

constexpr int kExitHolds = 0;
constexpr int kExitFails = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
    std::string input;
    std::string arithmetic;
    double grid_h = 0;

    std::optional<packcov::Arith> mode_override() const {
        if (arithmetic.empty()) return std::nullopt;
        return packcov::arith_from_name(arithmetic);
    }

    packcov::CoverageOptions coverage() const {
        packcov::CoverageOptions opt;
        if (grid_h > 0) {
            opt.method = packcov::CoverageMethod::grid;
            opt.grid_h = grid_h;
        }
        return opt;
    }
};

packcov::AnyArrangement load(const CommonOptions& common) {
    return packcov::load_arrangement(packcov::parse_json_file(common.input),
                                     common.mode_override());
}

int run_check(const CommonOptions& common, const std::string& assertion, double schmidt_c) {
    auto any = load(common);
    return std::visit(
        [&](const auto& arr) -> int {
            const bool want_packing = assertion == "packing";
            auto kind = want_packing ? packcov::ArrangementKind::packing
                                     : packcov::ArrangementKind::covering;
            json out;
            out["assert"] = assertion;

            auto packing = packcov::is_packing(arr);
            out["is_packing"] = packing.ok;
            if (packing.witness) {
                json w;
                w["first"] = packcov::vec_to_json(packing.witness->first);
                w["second"] = packcov::vec_to_json(packing.witness->second);
                w["lattice_vector"] = packcov::vec_to_json(packing.witness->lattice_vector);
                out["witness"] = std::move(w);
            }
            auto coverage = packcov::uncovered_volume(arr, common.coverage());
            out["is_covering"] = coverage.is_covering;
            out["uncovered_volume"] = packcov::to_double(coverage.uncovered_volume);
            out["method"] =
                coverage.method == packcov::CoverageMethod::exact2d ? "exact2d" : "grid";
            out["certified"] = coverage.certified;
            if (coverage.witness_uncovered)
                out["witness_uncovered"] = packcov::vec_to_json(*coverage.witness_uncovered);

            const bool holds = want_packing ? packing.ok : coverage.is_covering;
            out["holds"] = holds;
            out["report"] = packcov::density_report_json(
                packcov::make_density_report(arr, kind, schmidt_c));
            std::cout << out.dump(2) << "\n";
            return holds ? kExitHolds : kExitFails;
        },
        any.value);
}

int run_transform(const CommonOptions& common, const std::string& direction_name,
                  std::optional<double> alpha, const std::string& output_path,
                  const std::string& trace_path, const std::string& report_path) {
    const auto direction = direction_name == "pack-to-cover"
                               ? packcov::Direction::pack_to_cover
                               : packcov::Direction::cover_to_pack;
    auto any = load(common);
    return std::visit(
        [&](const auto& arr) -> int {
            using A = std::decay_t<decltype(arr)>;
            using S = typename A::scalar_type;
            constexpr int D = A::dim;
            packcov::TransformOptions opt;
            opt.coverage = common.coverage();
            auto make_pipe = [&]() -> packcov::PipelineResult<S, D> {
                if (!alpha) return packcov::theorem_pipeline(arr, direction, opt);
                if (!(*alpha > 0 && *alpha < 1))
                    throw packcov::ParameterError("--alpha must lie in (0, 1)");
                if (direction == packcov::Direction::pack_to_cover &&
                    !arr.body().symmetric() && *alpha > 1.0 / D + 1e-15)
                    throw packcov::ParameterError(
                        "--alpha must be <= 1/d for a body without central symmetry");
                S a = packcov::ScalarTraits<S>::from_double(*alpha);
                packcov::PipelineResult<S, D> p{direction == packcov::Direction::pack_to_cover
                                                    ? packcov::pack_to_cover(arr, a, opt)
                                                    : packcov::cover_to_pack(arr, a, opt),
                                                0.0, false, false, ""};
                const double eps = packcov::to_double(p.transform.trace.epsilon_effective);
                if (eps > 0 && eps < 1) {
                    if (direction == packcov::Direction::pack_to_cover) {
                        auto b = packcov::thm_cover_bound(eps, D, arr.body().symmetric());
                        p.formula_bound = b.value;
                        p.formula_branch = b.branch;
                        p.formula_satisfied =
                            packcov::to_double(p.transform.density_after) < b.value;
                    } else {
                        p.formula_bound = packcov::thm_pack_bound(eps, D);
                        p.formula_branch = "2";
                        p.formula_satisfied =
                            packcov::to_double(p.transform.density_after) > p.formula_bound;
                    }
                } else {
                    p.formula_vacuous = true;
                }
                return p;
            };
            packcov::PipelineResult<S, D> pipe = make_pipe();
            if (!output_path.empty())
                packcov::write_text_file(
                    output_path, packcov::arrangement_to_json(pipe.transform.output).dump(2) + "\n");
            if (!trace_path.empty())
                packcov::write_text_file(trace_path,
                                         packcov::trace_to_json(pipe.transform.trace).dump(2) + "\n");
            json report = packcov::transform_report_json(pipe, direction, alpha);
            if (!report_path.empty())
                packcov::write_text_file(report_path, report.dump(2) + "\n");
            else
                std::cout << report.dump(2) << "\n";
            const bool ok =
                pipe.transform.output_verified && pipe.transform.trace.claim_failures == 0;
            return ok ? kExitHolds : kExitFails;
        },
        any.value);
}

int run_bounds(int d, std::vector<double> eps_values, int eps_decades, bool symmetric,
               double schmidt_c, double ft_o_term, const std::string& csv_path) {
    if (d < 2) throw packcov::ParameterError("--d must be >= 2");
    for (int k = 1; k <= eps_decades; ++k) eps_values.push_back(std::pow(10.0, -k));
    if (eps_values.empty()) eps_values = {0.5, 0.1, 0.01, 0.001};
    std::string csv = "eps,cover_bound,cover_branch,pack_bound\n";
    std::printf("%-12s %-16s %-8s %-16s\n", "eps", "cover_bound", "branch", "pack_bound");
    for (double eps : eps_values) {
        auto cover = packcov::thm_cover_bound(eps, d, symmetric);
        double pack = packcov::thm_pack_bound(eps, d);
        std::printf("%-12.6g %-16.12g %-8s %-16.12g\n", eps, cover.value, cover.branch.c_str(),
                    pack);
        char line[160];
        std::snprintf(line, sizeof(line), "%.17g,%.17g,%s,%.17g\n", eps, cover.value,
                      cover.branch.c_str(), pack);
        csv += line;
    }
    if (d >= 3) {
        std::printf("fejes_toth_cover(d=%d) = %.12g (o-term %.6g)\n", d,
                    packcov::ft_cover_bound(d, ft_o_term), ft_o_term);
        std::printf("schmidt_pack(d=%d, c=%.6g) = %.12g\n", d,
                    packcov::schmidt_pack_bound(d, schmidt_c), schmidt_c);
        auto cross = packcov::crossover_report(d, schmidt_c, symmetric, 2.0);
        std::cout << packcov::crossover_report_json(cross).dump(2) << "\n";
    }
    if (!csv_path.empty()) packcov::write_text_file(csv_path, csv);
    return kExitHolds;
}

int run_render(const CommonOptions& common, const std::string& svg_path,
               const std::string& trace_path) {
    auto any = load(common);
    if (any.d != 2) throw packcov::ParameterError("render supports d = 2 arrangements only");
    packcov::RenderOptions opt;
    if (!trace_path.empty()) {
        json tj = packcov::parse_json_file(trace_path);
        for (const auto& step : tj.value("steps", json::array())) {
            if (step.contains("point"))
                opt.trace_points.push_back(packcov::vec_from_json<double, 2>(step.at("point")));
            if (step.contains("y"))
                opt.trace_witnesses.push_back(packcov::vec_from_json<double, 2>(step.at("y")));
        }
    }
    return std::visit(
        [&](const auto& arr) -> int {
            using A = std::decay_t<decltype(arr)>;
            if constexpr (A::dim == 2) {
                packcov::write_text_file(svg_path, packcov::render_svg(arr, opt));
                return kExitHolds;
            } else {
                throw packcov::ParameterError("render supports d = 2 arrangements only");
            }
        },
        any.value);
}

int run_refine(const CommonOptions& common, const std::string& output_path) {
    auto any = load(common);
    return std::visit(
        [&](const auto& arr) -> int {
            using A = std::decay_t<decltype(arr)>;
            using S = typename A::scalar_type;
            constexpr int D = A::dim;
            int m = packcov::refine_lattice(arr.body(), arr.lattice());
            json out;
            out["m"] = m;
            std::cout << out.dump(2) << "\n";
            if (!output_path.empty()) {
                packcov::Arrangement<S, D> refined(
                    arr.body(), arr.lattice().scaled_by_int(m),
                    packcov::expand_points(arr.points(), arr.lattice(), m));
                packcov::write_text_file(output_path,
                                         packcov::arrangement_to_json(refined).dump(2) + "\n");
            }
            return kExitHolds;
        },
        any.value);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"packcov: certified greedy transforms between packings and coverings on flat tori"};
    app.require_subcommand(1);

    CommonOptions common;
    auto add_common = [&](CLI::App* cmd, bool need_input = true) {
        auto* in = cmd->add_option("--input", common.input, "arrangement JSON file");
        if (need_input) in->required();
        cmd->add_option("--arithmetic", common.arithmetic,
                        "override the arithmetic mode (rational|float)")
            ->check(CLI::IsMember({"rational", "float"}));
        cmd->add_option("--grid-h", common.grid_h, "grid resolution (switches to the grid method)");
    };

    std::string assertion;
    double schmidt_c = 1.0;
    auto* check = app.add_subcommand("check", "verify the packing or covering property");
    add_common(check);
    check->add_option("--assert", assertion, "property to assert (packing|covering)")
        ->required()
        ->check(CLI::IsMember({"packing", "covering"}));
    check->add_option("--schmidt-c", schmidt_c, "Schmidt constant for comparisons");

    std::string direction, output_path, trace_path, report_path;
    std::optional<double> alpha;
    double alpha_raw = -1;
    auto* transform = app.add_subcommand("transform", "run a greedy transform with certification");
    add_common(transform);
    transform->add_option("--direction", direction, "pack-to-cover | cover-to-pack")
        ->required()
        ->check(CLI::IsMember({"pack-to-cover", "cover-to-pack"}));
    transform->add_option("--output", output_path, "output arrangement JSON path");
    transform->add_option("--trace", trace_path, "trace JSON path");
    transform->add_option("--report", report_path, "report JSON path (default: stdout)");
    auto* alpha_opt = transform->add_option("--alpha", alpha_raw, "fixed alpha (skips the optimizer)");

    int bounds_d = 2, eps_decades = 0;
    std::vector<double> eps_values;
    bool symmetric = false;
    double ft_o_term = 0.0;
    std::string csv_path;
    auto* bounds = app.add_subcommand("bounds", "evaluate the closed-form density bounds");
    bounds->add_option("--d", bounds_d, "dimension")->required();
    bounds->add_option("--eps", eps_values, "epsilon values");
    bounds->add_option("--eps-decades", eps_decades, "add eps = 10^-1 .. 10^-k");
    bounds->add_flag("--symmetric", symmetric, "treat the body as centrally symmetric");
    bounds->add_option("--schmidt-c", schmidt_c, "Schmidt constant");
    bounds->add_option("--ft-o-term", ft_o_term, "o(d) term of the covering comparison");
    bounds->add_option("--csv", csv_path, "write the table as CSV");

    std::string svg_path, render_trace;
    auto* render = app.add_subcommand("render", "render a d=2 arrangement as SVG");
    add_common(render);
    render->add_option("--svg", svg_path, "output SVG path")->required();
    render->add_option("--trace", render_trace, "transform trace to annotate");

    std::string refine_output;
    auto* refine = app.add_subcommand("refine", "compute the minimal disjointness refinement");
    add_common(refine);
    refine->add_option("--output", refine_output, "write the refined arrangement here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (alpha_opt->count() > 0) alpha = alpha_raw;
        if (check->parsed()) return run_check(common, assertion, schmidt_c);
        if (transform->parsed())
            return run_transform(common, direction, alpha, output_path, trace_path, report_path);
        if (bounds->parsed())
            return run_bounds(bounds_d, eps_values, eps_decades, symmetric, schmidt_c, ft_o_term,
                              csv_path);
        if (render->parsed()) return run_render(common, svg_path, render_trace);
        if (refine->parsed()) return run_refine(common, refine_output);
    } catch (const packcov::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const packcov::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const packcov::PreconditionError& e) {
        std::cerr << "precondition failed: " << e.what() << "\n";
        return kExitFails;
    } catch (const packcov::GeometryError& e) {
        std::cerr << "internal geometry error: " << e.what() << "\n";
        return kExitFails;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFails;
    }
    return kExitUsage;
}
