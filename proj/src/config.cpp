#include "dslit/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "dslit/textio.hpp"

namespace dslit {

namespace {

std::string_view trim(std::string_view s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

struct RawEntry {
    int line = 0;
    std::string value;
    bool used = false;
};

// Ordered map so leftover-key errors point at the first offender.
struct RawConfig {
    std::map<std::string, RawEntry> entries;

    const RawEntry* find(const std::string& key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }

    bool take(const std::string& key, std::string& out_value, int& out_line) {
        auto it = entries.find(key);
        if (it == entries.end()) return false;
        it->second.used = true;
        out_value = it->second.value;
        out_line = it->second.line;
        return true;
    }
};

RawConfig tokenize(std::string_view text) {
    RawConfig raw;
    int line_no = 0;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        ++line_no;
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError(line_no, std::string(line), "expected `key = value`");
        std::string key(trim(line.substr(0, eq)));
        std::string value(trim(line.substr(eq + 1)));
        if (key.empty()) throw ParseError(line_no, std::string(line), "missing key before `=`");
        if (value.empty()) throw ParseError(line_no, key, "missing value after `=`");
        if (key.find_first_of(" \t") != std::string::npos)
            throw ParseError(line_no, key, "key may not contain whitespace");
        auto [it, inserted] = raw.entries.emplace(key, RawEntry{line_no, value, false});
        if (!inserted) throw ParseError(line_no, key, "duplicate key");
    }
    return raw;
}

double parse_double(const std::string& value, int line, const std::string& key) {
    double out = 0.0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError(line, value, "expected a number for " + key);
    return out;
}

int parse_int(const std::string& value, int line, const std::string& key) {
    int out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    auto res = std::from_chars(first, last, out);
    if (res.ec != std::errc{} || res.ptr != last)
        throw ParseError(line, value, "expected an integer for " + key);
    return out;
}

bool parse_bool(const std::string& value, int line, const std::string& key) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ParseError(line, value, "expected true or false for " + key);
}

struct Reader {
    RawConfig& raw;

    void number(const std::string& key, double& dst) {
        std::string v;
        int line = 0;
        if (raw.take(key, v, line)) dst = parse_double(v, line, key);
    }
    bool number_present(const std::string& key, double& dst) {
        std::string v;
        int line = 0;
        if (!raw.take(key, v, line)) return false;
        dst = parse_double(v, line, key);
        return true;
    }
    void integer(const std::string& key, int& dst) {
        std::string v;
        int line = 0;
        if (raw.take(key, v, line)) dst = parse_int(v, line, key);
    }
    void boolean(const std::string& key, bool& dst) {
        std::string v;
        int line = 0;
        if (raw.take(key, v, line)) dst = parse_bool(v, line, key);
    }
    void text(const std::string& key, std::string& dst) {
        std::string v;
        int line = 0;
        if (raw.take(key, v, line)) dst = v;
    }
    template <typename Enum>
    void choice(const std::string& key, Enum& dst,
                std::initializer_list<std::pair<const char*, Enum>> options) {
        std::string v;
        int line = 0;
        if (!raw.take(key, v, line)) return;
        for (const auto& [name, val] : options) {
            if (v == name) {
                dst = val;
                return;
            }
        }
        throw ParseError(line, v, "unrecognized value for " + key);
    }
};

}  // namespace

void ExperimentConfig::validate() const {
    slits.validate();
    grid.validate();
    trajectories.validate();
    lattice.validate();
    if (!(lattice_t_end > 0.0) || !std::isfinite(lattice_t_end))
        throw ValidationError("lattice_t_end_positive", "lattice.t_end must be positive");
    if (output_dir.empty())
        throw ValidationError("output_dir_nonempty", "output.directory must not be empty");
}

ExperimentConfig parse_config(std::string_view text) {
    RawConfig raw = tokenize(text);
    Reader rd{raw};
    ExperimentConfig cfg;

    rd.number("constants.hbar", cfg.slits.constants.hbar);
    rd.number("constants.mass", cfg.slits.constants.mass);

    rd.number("slits.sigma0", cfg.slits.sigma0);
    rd.number("slits.half_separation", cfg.slits.half_separation);
    rd.number("slits.v_x", cfg.slits.v_x);
    rd.number("slits.v_y", cfg.slits.v_y);
    rd.number("slits.weight1", cfg.slits.weight1);
    rd.number("slits.weight2", cfg.slits.weight2);
    rd.boolean("slits.flip_channels", cfg.slits.flip_channels);
    rd.number("slits.density_floor", cfg.slits.density_floor);
    rd.number("slits.tail_threshold", cfg.slits.tail_rel_threshold);

    bool ramp_enabled = false;
    rd.boolean("ramp.enabled", ramp_enabled);
    PhaseRamp ramp;
    rd.number("ramp.delta_phi", ramp.delta_phi_total);
    rd.number("ramp.t1", ramp.t1);
    rd.number("ramp.t2", ramp.t2);
    rd.choice("ramp.shape", ramp.shape, {{"linear", RampShape::linear}});
    if (ramp_enabled) cfg.slits.ramp = ramp;

    rd.number("grid.x_min", cfg.grid.x_min);
    rd.number("grid.x_max", cfg.grid.x_max);
    rd.integer("grid.n_x", cfg.grid.n_x);
    rd.number("grid.t_min", cfg.grid.t_min);
    rd.number("grid.t_max", cfg.grid.t_max);
    rd.integer("grid.n_t", cfg.grid.n_t);

    rd.integer("trajectories.count", cfg.trajectories.n_trajectories);
    rd.choice("trajectories.seeding", cfg.trajectories.seeding,
              {{"quantiles", Seeding::equal_probability_quantiles},
               {"uniform", Seeding::uniform_in_x}});
    rd.number("trajectories.x_min", cfg.trajectories.x_min);
    rd.number("trajectories.x_max", cfg.trajectories.x_max);
    rd.number("trajectories.t_start", cfg.trajectories.t_start);
    rd.number("trajectories.t_end", cfg.trajectories.t_end);
    const bool have_dt = rd.number_present("trajectories.dt", cfg.trajectories.dt);
    rd.choice("trajectories.integrator", cfg.trajectories.integrator,
              {{"rk4", Integrator::rk4}, {"euler", Integrator::euler}});
    rd.integer("trajectories.record_stride", cfg.trajectories.record_stride);

    rd.integer("lattice.cells", cfg.lattice.n_cells);
    const bool have_dx = rd.number_present("lattice.dx", cfg.lattice.dx);
    rd.number("lattice.dt", cfg.lattice.dt);
    rd.choice("lattice.boundary", cfg.lattice.boundary,
              {{"reflecting", Boundary::reflecting}, {"absorbing", Boundary::absorbing}});
    rd.number("lattice.t_end", cfg.lattice_t_end);

    rd.text("output.directory", cfg.output_dir);
    rd.choice("output.format", cfg.format,
              {{"csv", OutputFormat::csv},
               {"pgm", OutputFormat::pgm},
               {"both", OutputFormat::both}});

    for (const auto& [key, entry] : raw.entries)
        if (!entry.used) throw ParseError(entry.line, key, "unknown key");

    // Resolution defaults scale with the packet: dt tracks the spreading time
    // sigma0/u0, dx keeps 50 cells per initial width.
    if (!have_dt && cfg.slits.sigma0 > 0.0 && cfg.slits.constants.hbar > 0.0 &&
        cfg.slits.constants.mass > 0.0)
        cfg.trajectories.dt = 1e-3 * cfg.slits.sigma0 / cfg.slits.u0();
    if (!have_dx && cfg.slits.sigma0 > 0.0) cfg.lattice.dx = cfg.slits.sigma0 / 50.0;

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failure on config file: " + path);
    return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& cfg) {
    std::string out;
    out.reserve(1024);
    auto put = [&out](const std::string& key, const std::string& value) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    };
    auto num = [&put](const std::string& key, double v) { put(key, format_double(v)); };
    auto integer = [&put](const std::string& key, long long v) { put(key, format_int(v)); };
    auto boolean = [&put](const std::string& key, bool v) { put(key, v ? "true" : "false"); };

    num("constants.hbar", cfg.slits.constants.hbar);
    num("constants.mass", cfg.slits.constants.mass);
    num("slits.sigma0", cfg.slits.sigma0);
    num("slits.half_separation", cfg.slits.half_separation);
    num("slits.v_x", cfg.slits.v_x);
    num("slits.v_y", cfg.slits.v_y);
    num("slits.weight1", cfg.slits.weight1);
    num("slits.weight2", cfg.slits.weight2);
    boolean("slits.flip_channels", cfg.slits.flip_channels);
    num("slits.density_floor", cfg.slits.density_floor);
    num("slits.tail_threshold", cfg.slits.tail_rel_threshold);
    boolean("ramp.enabled", cfg.slits.ramp.has_value());
    const PhaseRamp ramp = cfg.slits.ramp.value_or(PhaseRamp{});
    num("ramp.delta_phi", ramp.delta_phi_total);
    num("ramp.t1", ramp.t1);
    num("ramp.t2", ramp.t2);
    put("ramp.shape", "linear");
    num("grid.x_min", cfg.grid.x_min);
    num("grid.x_max", cfg.grid.x_max);
    integer("grid.n_x", cfg.grid.n_x);
    num("grid.t_min", cfg.grid.t_min);
    num("grid.t_max", cfg.grid.t_max);
    integer("grid.n_t", cfg.grid.n_t);
    integer("trajectories.count", cfg.trajectories.n_trajectories);
    put("trajectories.seeding",
        cfg.trajectories.seeding == Seeding::equal_probability_quantiles ? "quantiles"
                                                                         : "uniform");
    num("trajectories.x_min", cfg.trajectories.x_min);
    num("trajectories.x_max", cfg.trajectories.x_max);
    num("trajectories.t_start", cfg.trajectories.t_start);
    num("trajectories.t_end", cfg.trajectories.t_end);
    num("trajectories.dt", cfg.trajectories.dt);
    put("trajectories.integrator",
        cfg.trajectories.integrator == Integrator::rk4 ? "rk4" : "euler");
    integer("trajectories.record_stride", cfg.trajectories.record_stride);
    integer("lattice.cells", cfg.lattice.n_cells);
    num("lattice.dx", cfg.lattice.dx);
    num("lattice.dt", cfg.lattice.dt);
    put("lattice.boundary",
        cfg.lattice.boundary == Boundary::reflecting ? "reflecting" : "absorbing");
    num("lattice.t_end", cfg.lattice_t_end);
    put("output.directory", cfg.output_dir);
    put("output.format", cfg.format == OutputFormat::csv   ? "csv"
                         : cfg.format == OutputFormat::pgm ? "pgm"
                                                           : "both");
    return out;
}

std::string config_hash(const ExperimentConfig& cfg) {
    const std::string text = serialize_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[size_t(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

}  // namespace dslit
