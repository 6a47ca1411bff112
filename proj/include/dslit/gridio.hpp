#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dslit/doubleslit.hpp"
#include "dslit/errors.hpp"

namespace dslit {

// One scalar field on a space-time grid plus the header needed to interpret
// it standalone: field name, units, the originating config hash, grid extents.
struct FieldGridFile {
    std::string field;
    std::string units = "1";
    std::string config;
    GridSpec spec;
    std::vector<double> values;  // row-major, n_t rows of n_x samples
};

// Text form: `# key = value` header lines, then n_t comma-separated rows.
// Numbers use the shortest decimal that round-trips binary64, so
// parse_grid_csv(serialize_grid_csv(g)) reproduces g bit for bit.
std::string serialize_grid_csv(const FieldGridFile& file);
FieldGridFile parse_grid_csv(std::string_view text);

// Column-labeled table with `# key = value` comment headers; cells are
// preformatted so integer ids stay integers.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string serialize_csv(const CsvTable& table);

enum class HeatmapScaling { linear, log };

// 16-bit binary PGM (P5, big-endian samples). Nonnegative data maps as
// value/max; data with negatives maps min..max onto the full range; a
// constant grid renders all-max. Log scaling spans the 12 decades below the
// peak and sends nonpositive cells to black.
std::string render_pgm(const std::vector<double>& values, int n_cols, HeatmapScaling scaling);

struct PgmHeader {
    int width = 0;
    int height = 0;
    int max_value = 0;
    size_t data_offset = 0;
};

PgmHeader parse_pgm_header(std::string_view bytes);

void write_binary_file(const std::string& path, std::string_view content);
std::string read_binary_file(const std::string& path);
void ensure_directory(const std::string& path);

}  // namespace dslit
