#include "dslit/gridio.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

#include "dslit/textio.hpp"

namespace dslit {

namespace {

constexpr std::string_view kGridMagic = "# dslit-grid v1";

std::string_view next_line(std::string_view text, size_t& pos) {
    size_t nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() : nl + 1;
    return line;
}

double must_parse_double(std::string_view token, int line) {
    double out = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError(line, std::string(token), "expected a number");
    return out;
}

int must_parse_int(std::string_view token, int line) {
    int out = 0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), out);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError(line, std::string(token), "expected an integer");
    return out;
}

}  // namespace

std::string serialize_grid_csv(const FieldGridFile& file) {
    std::string out;
    out.reserve(file.values.size() * 12 + 256);
    out += kGridMagic;
    out += '\n';
    auto hdr = [&out](std::string_view key, const std::string& value) {
        out += "# ";
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    hdr("field", file.field);
    hdr("units", file.units);
    hdr("config", file.config);
    hdr("x_min", format_double(file.spec.x_min));
    hdr("x_max", format_double(file.spec.x_max));
    hdr("n_x", format_int(file.spec.n_x));
    hdr("t_min", format_double(file.spec.t_min));
    hdr("t_max", format_double(file.spec.t_max));
    hdr("n_t", format_int(file.spec.n_t));
    for (int it = 0; it < file.spec.n_t; ++it) {
        for (int ix = 0; ix < file.spec.n_x; ++ix) {
            if (ix) out += ',';
            out += format_double(file.values[size_t(it) * file.spec.n_x + ix]);
        }
        out += '\n';
    }
    return out;
}

FieldGridFile parse_grid_csv(std::string_view text) {
    size_t pos = 0;
    int line_no = 1;
    if (next_line(text, pos) != kGridMagic)
        throw ParseError(1, std::string(text.substr(0, text.find('\n'))),
                         "missing grid file magic line");

    std::map<std::string, std::string> header;
    while (pos < text.size() && text[pos] == '#') {
        std::string_view line = next_line(text, pos);
        ++line_no;
        line.remove_prefix(1);
        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, std::string(line), "malformed header line");
        auto trim = [](std::string_view s) {
            size_t b = s.find_first_not_of(" \t\r");
            size_t e = s.find_last_not_of(" \t\r");
            return b == std::string_view::npos ? std::string_view{} : s.substr(b, e - b + 1);
        };
        header[std::string(trim(line.substr(0, eq)))] = std::string(trim(line.substr(eq + 1)));
    }

    auto need = [&header, line_no](const char* key) -> const std::string& {
        auto it = header.find(key);
        if (it == header.end())
            throw ParseError(line_no, key, "missing required header key");
        return it->second;
    };

    FieldGridFile file;
    file.field = need("field");
    file.units = need("units");
    file.config = need("config");
    file.spec.x_min = must_parse_double(need("x_min"), line_no);
    file.spec.x_max = must_parse_double(need("x_max"), line_no);
    file.spec.n_x = must_parse_int(need("n_x"), line_no);
    file.spec.t_min = must_parse_double(need("t_min"), line_no);
    file.spec.t_max = must_parse_double(need("t_max"), line_no);
    file.spec.n_t = must_parse_int(need("n_t"), line_no);
    file.spec.validate();

    file.values.reserve(size_t(file.spec.n_x) * file.spec.n_t);
    for (int it = 0; it < file.spec.n_t; ++it) {
        if (pos >= text.size())
            throw ParseError(line_no, "", "fewer data rows than n_t");
        std::string_view line = next_line(text, pos);
        ++line_no;
        size_t start = 0;
        for (int ix = 0; ix < file.spec.n_x; ++ix) {
            size_t comma = line.find(',', start);
            std::string_view cell =
                line.substr(start, comma == std::string_view::npos ? line.size() - start
                                                                   : comma - start);
            if (cell.empty())
                throw ParseError(line_no, std::string(line), "short data row");
            file.values.push_back(must_parse_double(cell, line_no));
            if (comma == std::string_view::npos) {
                if (ix + 1 != file.spec.n_x)
                    throw ParseError(line_no, std::string(line), "short data row");
                start = line.size();
            } else {
                start = comma + 1;
            }
        }
        if (start != line.size())
            throw ParseError(line_no, std::string(line), "extra cells in data row");
    }
    if (pos < text.size() && !text.substr(pos).empty())
        throw ParseError(line_no + 1, std::string(text.substr(pos, 40)),
                         "trailing content after data rows");
    return file;
}

std::string serialize_csv(const CsvTable& table) {
    std::string out;
    for (const auto& [key, value] : table.header) {
        out += "# ";
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out += ',';
        out += table.columns[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += row[i];
        }
        out += '\n';
    }
    return out;
}

std::string render_pgm(const std::vector<double>& values, int n_cols, HeatmapScaling scaling) {
    if (n_cols < 1 || values.empty() || values.size() % size_t(n_cols) != 0)
        throw ValidationError("pgm_shape", "value count must be a positive multiple of n_cols");
    const int n_rows = int(values.size() / size_t(n_cols));

    double lo = values[0];
    double hi = values[0];
    for (double v : values) {
        if (!std::isfinite(v))
            throw ValidationError("pgm_finite", "heatmap requires finite values");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }

    auto level = [&](double v) -> double {
        if (scaling == HeatmapScaling::log) {
            if (!(hi > 0.0)) return 1.0;  // nothing positive: flat image
            if (!(v > 0.0)) return 0.0;
            constexpr double decades = 12.0;
            const double d = (std::log10(v) - (std::log10(hi) - decades)) / decades;
            return std::clamp(d, 0.0, 1.0);
        }
        if (hi == lo) return 1.0;
        if (lo >= 0.0) return hi > 0.0 ? v / hi : 1.0;
        return (v - lo) / (hi - lo);
    };

    std::string out;
    out += "P5\n";
    out += format_int(n_cols);
    out += ' ';
    out += format_int(n_rows);
    out += "\n65535\n";
    out.reserve(out.size() + values.size() * 2);
    for (double v : values) {
        const auto sample = unsigned(std::lround(level(v) * 65535.0));
        out += char((sample >> 8) & 0xff);
        out += char(sample & 0xff);
    }
    return out;
}

PgmHeader parse_pgm_header(std::string_view bytes) {
    size_t pos = 0;
    if (next_line(bytes, pos) != "P5") throw ParseError(1, "P5", "not a binary PGM");
    std::string_view dims = next_line(bytes, pos);
    size_t space = dims.find(' ');
    if (space == std::string_view::npos)
        throw ParseError(2, std::string(dims), "expected `width height`");
    PgmHeader h;
    h.width = must_parse_int(dims.substr(0, space), 2);
    h.height = must_parse_int(dims.substr(space + 1), 2);
    h.max_value = must_parse_int(next_line(bytes, pos), 3);
    h.data_offset = pos;
    if (h.width < 1 || h.height < 1)
        throw ParseError(2, std::string(dims), "degenerate image dimensions");
    const size_t expect = h.data_offset + size_t(h.width) * h.height * (h.max_value > 255 ? 2 : 1);
    if (bytes.size() != expect)
        throw ParseError(3, format_int(long(bytes.size())), "pixel payload size mismatch");
    return h;
}

void write_binary_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(content.data(), std::streamsize(content.size()));
    if (!out) throw IoError("write failure: " + path);
}

std::string read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failure: " + path);
    return content;
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory " + path + ": " + ec.message());
}

}  // namespace dslit
