// reebmapper: mapper / JCN / Reeb graph construction and certification
// for PL maps on simplicial complexes.
//
// Exit codes: 0 success, 1 check failed, 2 usage or input error.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "reebmapper/converge.hpp"
#include "reebmapper/errors.hpp"
#include "reebmapper/fixtures.hpp"
#include "reebmapper/interleave.hpp"
#include "reebmapper/io.hpp"
#include "reebmapper/mapper.hpp"
#include "reebmapper/reeb.hpp"

namespace {

using namespace reebmapper;

struct CommonOpts {
    std::string mesh;
    std::string intervals = "3";
    double gain = 0.5;
    std::string range = "auto";
    std::string out_dir = ".";
    std::string format = "all";
};

RdSpace resolve_mesh(const std::string& spec) {
    std::vector<std::string> warnings;
    RdSpace space;
    if (spec.rfind("fixture:", 0) == 0) {
        space = canned(spec.substr(8)).space;
        warnings = genericity_warnings(space);
    } else {
        space = load_mesh(spec, &warnings);
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
    return space;
}

std::vector<int> parse_counts(const std::string& text) {
    std::vector<int> counts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) counts.push_back(std::stoi(item));
    if (counts.empty()) throw PreconditionError("empty --intervals");
    return counts;
}

Box parse_range(const std::string& text, const RdSpace& space) {
    if (text == "auto") return image_bounding_box(space);
    Box box;
    std::stringstream axes(text);
    std::string axis;
    while (std::getline(axes, axis, ';')) {
        auto comma = axis.find(',');
        if (comma == std::string::npos) throw PreconditionError("range axis needs lo,hi");
        box.axes.push_back({std::stod(axis.substr(0, comma)), std::stod(axis.substr(comma + 1))});
    }
    return box;
}

Cover build_cover(const CommonOpts& opts, const RdSpace& space) {
    return uniform_cover(parse_range(opts.range, space), parse_counts(opts.intervals), opts.gain);
}

void write_output(const CommonOpts& opts, const std::string& stem, const std::string& json,
                  const std::string& dot) {
    std::filesystem::create_directories(opts.out_dir);
    auto base = std::filesystem::path(opts.out_dir) / stem;
    if (opts.format == "all" || opts.format == "json") {
        write_file((base.string() + ".json"), json);
        std::cout << "wrote " << base.string() << ".json\n";
    }
    if ((opts.format == "all" || opts.format == "dot") && !dot.empty()) {
        write_file((base.string() + ".dot"), dot);
        std::cout << "wrote " << base.string() << ".dot\n";
    }
}

int cmd_mapper(const CommonOpts& opts) {
    RdSpace space = resolve_mesh(opts.mesh);
    CategoricalMapper cm = categorical_mapper(space, build_cover(opts, space));
    MapperNerve mn = mapper_nerve(cm);
    write_output(opts, "mapper", mapper_to_json(mn), mapper_to_dot(mn));
    return 0;
}

int cmd_reeb(const CommonOpts& opts, bool contract) {
    RdSpace space = resolve_mesh(opts.mesh);
    ReebGraph g = reeb_graph(space, contract);
    write_output(opts, "reeb", reeb_to_json(g), reeb_to_dot(g));
    return 0;
}

int cmd_jcn(const CommonOpts& opts) {
    RdSpace space = resolve_mesh(opts.mesh);
    MapperNerve mn = jcn(space, parse_counts(opts.intervals), opts.gain);
    write_output(opts, "jcn", mapper_to_json(mn), mapper_to_dot(mn));
    return 0;
}

int cmd_verify(const CommonOpts& opts, int nd_boxes, std::uint64_t seed, bool corrupt) {
    RdSpace space = resolve_mesh(opts.mesh);
    Cover cover = build_cover(opts, space);

    EquivalenceReport equivalence = colimit_equivalence_check(space, cover, default_test_boxes(space, cover, nd_boxes, seed));
    InterleavingWitness witness = build_interleaving(space, cover, -1.0, nd_boxes, seed);
    if (corrupt) {
        if (!corrupt_witness(witness)) {
            std::cerr << "corrupt: no single-label corruption can break this witness\n";
        }
    }
    DiagramReport diagrams = verify_interleaving(witness);

    nlohmann::json j;
    j["colimit_equivalence"] = nlohmann::json::parse(equivalence_report_to_json(equivalence));
    j["interleaving"] = nlohmann::json::parse(diagram_report_to_json(diagrams));
    j["certified_upper_bound"] = resolution(cover);
    j["pass"] = equivalence.pass && diagrams.pass;
    std::filesystem::create_directories(opts.out_dir);
    auto path = std::filesystem::path(opts.out_dir) / "verify.json";
    write_file(path.string(), j.dump(2) + "\n");

    std::cout << "colimit/direct bijection + naturality: " << equivalence.summary() << "\n";
    std::cout << "interleaving diagrams: " << diagrams.summary() << "\n";
    if (equivalence.pass && diagrams.pass) {
        std::cout << "certified upper bound: d_I <= " << format_double(resolution(cover))
                  << (diagrams.sampled ? " [sampled]" : "") << "\n";
        return 0;
    }
    std::cout << "verification FAILED (see " << path.string() << ")\n";
    return 1;
}

int cmd_converge(const CommonOpts& opts, int steps, bool timings) {
    RdSpace space = resolve_mesh(opts.mesh);
    ConvergenceReport report = run_convergence(space, build_cover(opts, space), steps);
    std::filesystem::create_directories(opts.out_dir);
    auto path = std::filesystem::path(opts.out_dir) / "converge.csv";
    write_file(path.string(), convergence_to_csv(report, timings));
    std::cout << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_fixture(const std::string& name, std::string out) {
    Fixture f = canned(name);
    if (out.empty()) out = name + ".json";
    save_mesh(f.space, out);
    std::cout << "wrote " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mapper / JCN discretizations of PL maps with certified Reeb-space approximation bounds"};
    app.require_subcommand(1);

    CommonOpts opts;
    bool reeb_contract = true;
    int steps = 4;
    bool timings = false;
    int nd_boxes = 64;
    std::uint64_t seed = 2027;
    bool corrupt = false;
    std::string fixture_name, fixture_out;

    auto add_common = [&](CLI::App* sub, bool with_cover) {
        sub->add_option("--mesh", opts.mesh, "mesh JSON path, or fixture:NAME")->required();
        if (with_cover) {
            sub->add_option("--intervals", opts.intervals, "interval counts per axis, comma separated");
            sub->add_option("--gain", opts.gain, "overlap gain in (0,1)");
            sub->add_option("--range", opts.range, "auto or lo,hi[;lo,hi...]");
        }
        sub->add_option("--out", opts.out_dir, "output directory");
        sub->add_option("--format", opts.format, "json|dot|all")
            ->check(CLI::IsMember({"json", "dot", "all"}));
    };

    CLI::App* mapper_cmd = app.add_subcommand("mapper", "classic mapper nerve of a cover");
    add_common(mapper_cmd, true);

    CLI::App* reeb_cmd = app.add_subcommand("reeb", "exact Reeb graph (d = 1)");
    add_common(reeb_cmd, false);
    reeb_cmd->add_flag("!--no-contract", reeb_contract, "keep regular degree-2 nodes");

    CLI::App* jcn_cmd = app.add_subcommand("jcn", "joint contour net over a quantized range cover");
    add_common(jcn_cmd, true);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "colimit/direct bijection + interleaving certification at eps = res");
    add_common(verify_cmd, true);
    verify_cmd->add_option("--boxes", nd_boxes, "sampled box count for d >= 2");
    verify_cmd->add_option("--seed", seed, "seed for sampled boxes");
    verify_cmd->add_flag("--corrupt", corrupt, "negative control: corrupt the witness first");

    CLI::App* converge_cmd = app.add_subcommand("converge", "refinement sweep, one CSV row per step");
    add_common(converge_cmd, true);
    converge_cmd->add_option("--steps", steps, "number of refinement steps")->check(CLI::PositiveNumber);
    converge_cmd->add_flag("--timings", timings, "append a wall_ms column");

    CLI::App* fixture_cmd = app.add_subcommand("fixture", "write a canned fixture as mesh JSON");
    fixture_cmd->add_option("--name", fixture_name, "tent|circle4|torus|square_grid_2d")->required();
    fixture_cmd->add_option("--out", fixture_out, "output path (default NAME.json)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(mapper_cmd)) return cmd_mapper(opts);
        if (app.got_subcommand(reeb_cmd)) return cmd_reeb(opts, reeb_contract);
        if (app.got_subcommand(jcn_cmd)) return cmd_jcn(opts);
        if (app.got_subcommand(verify_cmd)) return cmd_verify(opts, nd_boxes, seed, corrupt);
        if (app.got_subcommand(converge_cmd)) return cmd_converge(opts, steps, timings);
        if (app.got_subcommand(fixture_cmd)) return cmd_fixture(fixture_name, fixture_out);
    } catch (const CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
