#pragma once

#include <span>
#include <string>

#include "json.hpp"
#include "pmc/approx.hpp"
#include "pmc/curves.hpp"
#include "pmc/decompose.hpp"
#include "pmc/grid.hpp"

/* JSON and CSV faces of the library types.
 *
 * Schemas (all numbers finite; every reader validates and throws
 * ValidationError with a message naming the offending part):
 *
 *   space    {"kind": "embedded", "p": 1 | 2 | "inf", "points": [[x, ...], ...]}
 *            {"kind": "metric", "d": [[row], ...]}
 *   measure  {"atoms": [[index, weight], ...]}
 *   current  {"space": <space>, "edges": [[tail, head, weight], ...]}
 *   grid     {"rect": [x0, y0, x1, y1], "shape": [nx, ny],
 *             "field": [[lx, ly], ...] row-major with x fastest,
 *             "p": 1 | 2 | "inf"}
 *   transport {"atoms": [[weight, [v0, v1, ...]], ...]}
 *
 * Writers emit canonical order (measure atoms by index, current edges in
 * canonical edge order), so equal values serialize to equal bytes.  File
 * writers are atomic: content goes to a sibling temp file which is then
 * renamed over the destination, so a crash never leaves a partial file.
 */
namespace pmc::io {

nlohmann::json space_to_json(const Space& space);
SpacePtr space_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const AtomicMeasure& mu);
AtomicMeasure measure_from_json(const nlohmann::json& j);

nlohmann::json current_to_json(const PolyhedralCurrent& t);
PolyhedralCurrent current_from_json(const nlohmann::json& j);

nlohmann::json grid_to_json(const GridCurrent& g);
GridCurrent grid_from_json(const nlohmann::json& j);

nlohmann::json transport_to_json(const Transport& transport);
Transport transport_from_json(const nlohmann::json& j);

/* Parses a whole file; parse errors and unreadable files throw
 * ValidationError naming the path. */
nlohmann::json load_json(const std::string& path);

/* Atomic writers (temp file + rename).  JSON is written with 2-space
 * indentation and a trailing newline. */
void save_json(const std::string& path, const nlohmann::json& j);
void save_text(const std::string& path, const std::string& content);

/* CSV tables, one header line plus one line per row, '\n' endings,
 * doubles printed with round-trip precision. */
std::string convergence_csv(std::span<const ConvergenceRow> rows);
std::string spiral_csv(std::span<const SpiralRow> rows);

}  // namespace pmc::io
