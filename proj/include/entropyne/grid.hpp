// grid.hpp - inclusive grid specs, Delta grids and their CSV/JSON forms,
// plus the deterministic per-cell parallel loop used by every sweep.

#pragma once

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace entropyne {

// start:stop:count, endpoints included, uniform spacing.
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    std::size_t count = 1;

    std::vector<double> values() const;

    // Throws ParseError on malformed text.
    static GridSpec parse(std::string_view text);
    std::string to_string() const;
};

// Two-axis grid of Delta values, row-major in axis1 then axis2. An empty cell
// marks a divergent or otherwise flagged evaluation.
struct DeltaGrid {
    std::string axis1_name;
    std::string axis2_name;
    std::vector<double> axis1_values;
    std::vector<double> axis2_values;
    std::vector<std::optional<double>> cells;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    std::size_t index(std::size_t i1, std::size_t i2) const { return i1 * axis2_values.size() + i2; }
    const std::optional<double>& at(std::size_t i1, std::size_t i2) const { return cells[index(i1, i2)]; }

    // Index along axis2 of the smallest finite cell in row i1, if any.
    std::optional<std::size_t> row_argmin(std::size_t i1) const;
    std::size_t flagged_count() const;
};

struct CsvLayout {
    bool axis2_first = false;     // column order axis2,axis1 instead of axis1,axis2
    bool row_argmin_column = false;
};

// Header row, '.' decimal separator, 17 significant digits, '\n' line ends.
// Flagged cells are written as empty fields.
void write_csv(const DeltaGrid& grid, std::ostream& out, const CsvLayout& layout = {});

nlohmann::ordered_json grid_to_json(const DeltaGrid& grid, bool include_row_argmin = false);
DeltaGrid grid_from_json(const nlohmann::ordered_json& j);

// Locale-independent shortest-exact-enough formatting with 17 significant digits.
std::string format_double(double v);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; results are expected to be stored by index.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// --threads value if positive, else ENTROPYNE_THREADS, else 1.
unsigned resolve_threads(int requested);

}  // namespace entropyne
