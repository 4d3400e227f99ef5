/* pmc: command-line driver for one-dimensional polyhedral metric currents.
 *
 * Subcommands
 *   decompose  split a current into cycles + weighted simple paths, verify
 *   transport  mass-minimizing current between two atomic measures (W1)
 *   approx     polyhedral approximation of a grid vector field, CSV report
 *   spiral     shrinking-coil convergence study, CSV report
 *   frechet    pairwise oriented Frechet distances between weighted paths
 *   flatnorm   flat norm of an atomic 0-current with optimal filling
 *
 * Exit codes: 0 success, 1 validation failure (bad input, bad flags),
 * 2 certificate/check failure (the computation ran but a verification
 * report did not pass its tolerance).
 *
 * Outputs are deterministic: the same inputs, seed, and tolerance produce
 * byte-identical files.  Files are written atomically (temp + rename), and
 * every command validates its inputs fully before writing anything.
 *
 * The default tolerance (1e-9 relative) can be scaled globally with the
 * PMC_TOL_SCALE environment variable; an explicit --tol wins.
 */
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pmc/approx.hpp"
#include "pmc/core.hpp"
#include "pmc/curves.hpp"
#include "pmc/decompose.hpp"
#include "pmc/flatnorm.hpp"
#include "pmc/grid.hpp"
#include "pmc/io.hpp"
#include "pmc/transport.hpp"

namespace {

using nlohmann::json;

/* "4" | "1,2,8" | "1..6" | mixes like "1..3,8"; ascending ranges, values >= 1. */
std::vector<int> parse_levels(const std::string& text) {
    auto parse_int = [&](const std::string& token) -> int {
        try {
            std::size_t used = 0;
            const int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument("trailing characters");
            return value;
        } catch (const std::exception&) {
            throw pmc::ValidationError("levels: '" + token + "' is not an integer");
        }
    };
    std::vector<int> levels;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (token.empty()) throw pmc::ValidationError("levels: empty entry in '" + text + "'");
        const std::size_t dots = token.find("..");
        if (dots == std::string::npos) {
            levels.push_back(parse_int(token));
        } else {
            const int lo = parse_int(token.substr(0, dots));
            const int hi = parse_int(token.substr(dots + 2));
            if (lo > hi)
                throw pmc::ValidationError("levels: range '" + token + "' must be ascending");
            for (int v = lo; v <= hi; ++v) levels.push_back(v);
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    for (const int v : levels) {
        if (v < 1) throw pmc::ValidationError("levels: values must be >= 1");
    }
    return levels;
}

/* Round-trip formatting for CSV bodies the io module does not cover. */
std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

int run_decompose(const std::string& input, const std::string& out, std::uint64_t seed,
                  double tol) {
    const pmc::PolyhedralCurrent t = pmc::io::current_from_json(pmc::io::load_json(input));
    const pmc::CycleSplit split = pmc::extract_cycles(t);
    const pmc::Transport transport = pmc::decompose(split.acyclic);
    const pmc::DecompositionReport report =
        pmc::verify_decomposition(split.acyclic, transport, seed, 8, tol);

    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}});
    }
    const json doc = {
        {"input_mass", pmc::mass(t)},
        {"cycles", pmc::io::current_to_json(split.cycles)},
        {"cycle_mass", pmc::mass(split.cycles)},
        {"acyclic_mass", pmc::mass(split.acyclic)},
        {"transport", pmc::io::transport_to_json(transport)},
        {"transport_cost", pmc::transport_cost(transport, *t.space())},
        {"checks", checks},
        {"all_pass", report.all_pass()},
    };
    pmc::io::save_json(out, doc);

    for (const auto& c : report.checks) {
        std::cout << (c.pass ? "[ ok ] " : "[FAIL] ") << c.name << " (residual " << c.residual
                  << ")\n";
    }
    std::cout << (report.all_pass() ? "decomposition verified" : "decomposition FAILED") << ": "
              << transport.atoms().size() << " paths, cycle mass " << pmc::mass(split.cycles)
              << "\n";
    return report.all_pass() ? 0 : 2;
}

int run_transport(const std::string& plus_path, const std::string& minus_path,
                  const std::string& space_path, const std::string& out, double tol) {
    const pmc::SpacePtr space = pmc::io::space_from_json(pmc::io::load_json(space_path));
    const pmc::AtomicMeasure plus = pmc::io::measure_from_json(pmc::io::load_json(plus_path));
    const pmc::AtomicMeasure minus = pmc::io::measure_from_json(pmc::io::load_json(minus_path));
    const pmc::BeckmannResult r = pmc::beckmann(plus, minus, space);

    json plan = json::array();
    for (const auto& e : r.kantorovich.plan.entries()) plan.push_back({e.source, e.target, e.mass});
    json potentials = json::array();
    for (const auto& [index, value] : r.kantorovich.potentials) potentials.push_back({index, value});
    const pmc::BeckmannCertificate& c = r.certificate;
    const json doc = {
        {"w1", r.kantorovich.cost},
        {"plan", plan},
        {"potentials", potentials},
        {"current", pmc::io::current_to_json(r.current)},
        {"transport", pmc::io::transport_to_json(r.transport)},
        {"certificate",
         {{"w1", c.w1},
          {"current_mass", c.current_mass},
          {"mass_gap", c.mass_gap},
          {"cycle_mass", c.cycle_mass},
          {"duality_gap", c.duality_gap},
          {"boundary_gap", c.boundary_gap},
          {"ok", c.ok(tol)}}},
    };
    pmc::io::save_json(out, doc);

    std::cout << "W1 = " << r.kantorovich.cost << "\n"
              << "current mass " << c.current_mass << ", mass gap " << c.mass_gap
              << ", cycle mass " << c.cycle_mass << "\n"
              << "duality gap " << c.duality_gap << ", boundary gap " << c.boundary_gap << "\n"
              << (c.ok(tol) ? "certificate ok" : "certificate FAILED") << "\n";
    return c.ok(tol) ? 0 : 2;
}

int run_approx(const std::string& grid_path, const std::string& demo,
               const std::string& levels_text, const std::string& mode_text,
               const std::string& out) {
    if (!grid_path.empty() && !demo.empty()) {
        throw pmc::ValidationError("approx: give either --grid or --demo, not both");
    }
    const pmc::GridCurrent g = [&]() -> pmc::GridCurrent {
        if (!grid_path.empty()) return pmc::io::grid_from_json(pmc::io::load_json(grid_path));
        if (demo == "axis") return pmc::demo_axis_field();
        if (demo == "rotated") return pmc::demo_rotated_field();
        if (demo.empty()) throw pmc::ValidationError("approx: need --grid FILE or --demo NAME");
        throw pmc::ValidationError("approx: unknown demo '" + demo + "' (axis, rotated)");
    }();
    const pmc::PolyMode mode = [&] {
        if (mode_text == "directional") return pmc::PolyMode::directional;
        if (mode_text == "component") return pmc::PolyMode::component;
        throw pmc::ValidationError("approx: unknown mode '" + mode_text +
                                   "' (directional, component)");
    }();
    const std::vector<int> levels = parse_levels(levels_text);
    const std::vector<pmc::ConvergenceRow> rows = pmc::convergence_report(g, levels, mode);
    const std::string csv = pmc::io::convergence_csv(rows);
    pmc::io::save_text(out, csv);
    std::cout << csv;
    return 0;
}

int run_spiral(const std::string& levels_text, const std::string& out) {
    const std::vector<int> levels = parse_levels(levels_text);
    const std::vector<pmc::SpiralRow> rows = pmc::spiral_suite(levels);
    const std::string csv = pmc::io::spiral_csv(rows);
    pmc::io::save_text(out, csv);
    std::cout << csv;
    return 0;
}

int run_frechet(const std::string& space_path, const std::string& input, const std::string& out,
                double samples_per_unit) {
    const pmc::SpacePtr space = pmc::io::space_from_json(pmc::io::load_json(space_path));
    if (!space->is_embedded()) {
        throw pmc::ValidationError("frechet: needs an embedded space (point coordinates)");
    }
    const pmc::Transport transport = pmc::io::transport_from_json(pmc::io::load_json(input));
    const auto& atoms = transport.atoms();
    if (atoms.empty()) throw pmc::ValidationError("frechet: input holds no paths");

    const std::size_t n = atoms.size();
    std::vector<double> matrix(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = pmc::theta_distance(atoms[i].path, atoms[j].path, space->embedded(),
                                                 samples_per_unit);
            matrix[i * n + j] = d;
            matrix[j * n + i] = d;
        }
    }
    /* Square matrix, no header: row i holds the distances from path i. */
    std::string csv;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            csv += fmt(matrix[i * n + j]);
            csv += (j + 1 == n) ? '\n' : ',';
        }
    }
    pmc::io::save_text(out, csv);
    std::cout << csv;
    return 0;
}

int run_flatnorm(const std::string& input, const std::string& space_path, const std::string& out,
                 double creation_cost) {
    const pmc::SpacePtr space = pmc::io::space_from_json(pmc::io::load_json(space_path));
    const pmc::AtomicMeasure mu = pmc::io::measure_from_json(pmc::io::load_json(input));
    const pmc::FlatNormResult r = pmc::flat_norm(mu, space, creation_cost);
    const json doc = {
        {"value", r.value},
        {"residue", pmc::io::measure_to_json(r.residue)},
        {"filling", pmc::io::current_to_json(r.filling)},
    };
    pmc::io::save_json(out, doc);
    std::cout << "flat norm = " << r.value << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    const double default_tol = pmc::global_tolerances().relative;

    CLI::App app{
        "pmc: one-dimensional polyhedral metric currents — decomposition into curves,\n"
        "optimal transport with certificates, polyhedral approximation, flat norm.\n"
        "Set PMC_TOL_SCALE to scale all default tolerances."};
    app.require_subcommand(1);

    std::string dec_input, dec_out;
    std::uint64_t dec_seed = 0;
    double dec_tol = default_tol;
    CLI::App* dec = app.add_subcommand(
        "decompose", "split a current into cycles plus weighted simple paths, then verify");
    dec->add_option("--input", dec_input, "current JSON file")->required();
    dec->add_option("--out", dec_out, "verification report JSON file")->required();
    dec->add_option("--seed", dec_seed, "seed for the verification's random vertex subsets");
    dec->add_option("--tol", dec_tol, "relative tolerance for the verification checks");

    std::string tr_plus, tr_minus, tr_space, tr_out;
    double tr_tol = default_tol;
    CLI::App* tr = app.add_subcommand(
        "transport", "mass-minimizing current between two atomic measures, with certificate");
    tr->add_option("--plus", tr_plus, "source measure JSON file")->required();
    tr->add_option("--minus", tr_minus, "target measure JSON file")->required();
    tr->add_option("--space", tr_space, "space JSON file")->required();
    tr->add_option("--out", tr_out, "solution JSON file")->required();
    tr->add_option("--tol", tr_tol, "certificate tolerance");

    std::string ap_grid, ap_demo, ap_levels = "1..6", ap_mode = "directional", ap_out;
    CLI::App* ap = app.add_subcommand(
        "approx", "polyhedral approximation of a grid vector field, convergence CSV");
    ap->add_option("--grid", ap_grid, "grid current JSON file");
    ap->add_option("--demo", ap_demo, "built-in field instead of --grid: axis | rotated");
    ap->add_option("--levels", ap_levels, "refinement levels, e.g. 1..6 or 1,2,4");
    ap->add_option("--mode", ap_mode, "segment family: directional | component");
    ap->add_option("--out", ap_out, "report CSV file")->required();

    std::string sp_levels = "4,8,16,32", sp_out;
    CLI::App* sp =
        app.add_subcommand("spiral", "shrinking-coil convergence study, CSV per level");
    sp->add_option("--levels", sp_levels, "winding counts, e.g. 1,2,4,8,16,32");
    sp->add_option("--out", sp_out, "report CSV file")->required();

    std::string fr_space, fr_input, fr_out;
    double fr_samples = 64.0;
    CLI::App* fr = app.add_subcommand(
        "frechet", "pairwise oriented Frechet distances between the paths of a transport");
    fr->add_option("--space", fr_space, "embedded space JSON file")->required();
    fr->add_option("--input", fr_input, "transport JSON file (paths to compare)")->required();
    fr->add_option("--out", fr_out, "distance matrix CSV file")->required();
    fr->add_option("--samples-per-unit", fr_samples, "sampling density along each path");

    std::string fn_input, fn_space, fn_out;
    double fn_creation = 1.0;
    CLI::App* fn = app.add_subcommand(
        "flatnorm", "flat norm of an atomic 0-current with its optimal filling");
    fn->add_option("--input", fn_input, "signed measure JSON file")->required();
    fn->add_option("--space", fn_space, "space JSON file")->required();
    fn->add_option("--out", fn_out, "result JSON file")->required();
    fn->add_option("--creation-cost", fn_creation, "cost per unit of uncancelled mass");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (app.got_subcommand(dec)) return run_decompose(dec_input, dec_out, dec_seed, dec_tol);
        if (app.got_subcommand(tr))
            return run_transport(tr_plus, tr_minus, tr_space, tr_out, tr_tol);
        if (app.got_subcommand(ap)) return run_approx(ap_grid, ap_demo, ap_levels, ap_mode, ap_out);
        if (app.got_subcommand(sp)) return run_spiral(sp_levels, sp_out);
        if (app.got_subcommand(fr)) return run_frechet(fr_space, fr_input, fr_out, fr_samples);
        if (app.got_subcommand(fn)) return run_flatnorm(fn_input, fn_space, fn_out, fn_creation);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
