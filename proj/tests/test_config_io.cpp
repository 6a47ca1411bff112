#include <cctype>
#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "doctest.h"

#include "dslit/config.hpp"
#include "dslit/gridio.hpp"

using namespace dslit;

namespace {

unsigned sample_at(const std::string& pgm, const PgmHeader& h, size_t i) {
    const auto hi = static_cast<unsigned char>(pgm[h.data_offset + 2 * i]);
    const auto lo = static_cast<unsigned char>(pgm[h.data_offset + 2 * i + 1]);
    return (unsigned(hi) << 8) | lo;
}

FieldGridFile tiny_grid() {
    FieldGridFile g;
    g.field = "P_tot";
    g.units = "1/length";
    g.config = "0123456789abcdef";
    g.spec.x_min = -1.0;
    g.spec.x_max = 1.0;
    g.spec.n_x = 3;
    g.spec.t_min = 0.0;
    g.spec.t_max = 1.0;
    g.spec.n_t = 2;
    g.values = {1e-300, 0.1 + 0.2, -0.0, 3.141592653589793, 1.0, 6.02214076e23};
    return g;
}

}  // namespace

TEST_CASE("empty config text yields the default experiment") {
    const ExperimentConfig cfg = parse_config("");
    CHECK(cfg.slits.constants.hbar == 1.0);
    CHECK(cfg.slits.constants.mass == 1.0);
    CHECK(cfg.slits.sigma0 == 1.0);
    CHECK(cfg.slits.half_separation == 1.0);
    CHECK(cfg.slits.v_x == 0.0);
    CHECK(cfg.slits.v_y == 1.0);
    CHECK(!cfg.slits.ramp.has_value());
    CHECK(cfg.grid.n_x == 512);
    CHECK(cfg.grid.n_t == 256);
    CHECK(cfg.trajectories.dt == 2e-3);
    CHECK(cfg.lattice.dx == 0.02);
    CHECK(cfg.format == OutputFormat::csv);
}

TEST_CASE("resolution defaults follow the packet width") {
    const ExperimentConfig cfg = parse_config("slits.sigma0 = 2\n");
    // dt = 1e-3 sigma0/u0, dx = sigma0/50
    CHECK(cfg.trajectories.dt == 8e-3);
    CHECK(cfg.lattice.dx == 0.04);

    const ExperimentConfig pinned =
        parse_config("slits.sigma0 = 2\ntrajectories.dt = 0.5\nlattice.dx = 0.1\n");
    CHECK(pinned.trajectories.dt == 0.5);
    CHECK(pinned.lattice.dx == 0.1);
}

TEST_CASE("comments, blank lines and inline comments are ignored") {
    const ExperimentConfig cfg = parse_config(
        "# leading comment\n"
        "\n"
        "  slits.v_y = 2.5   # trailing note\n"
        "\t\n"
        "grid.n_x = 64\n");
    CHECK(cfg.slits.v_y == 2.5);
    CHECK(cfg.grid.n_x == 64);
}

TEST_CASE("ramp keys only take effect when the ramp is enabled") {
    const ExperimentConfig on = parse_config(
        "ramp.enabled = true\n"
        "ramp.delta_phi = 15.707963267948966\n"
        "ramp.t1 = 4\n"
        "ramp.t2 = 6\n");
    REQUIRE(on.slits.ramp.has_value());
    CHECK(on.slits.ramp->delta_phi_total == 15.707963267948966);
    CHECK(on.slits.ramp->t1 == 4.0);
    CHECK(on.slits.ramp->t2 == 6.0);

    const ExperimentConfig off = parse_config("ramp.delta_phi = 3\nramp.t1 = 1\nramp.t2 = 2\n");
    CHECK(!off.slits.ramp.has_value());
}

TEST_CASE("malformed config lines carry their location") {
    try {
        parse_config("slits.sigma0 = 1\nbogus.key = 3\n");
        FAIL("unknown key accepted");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.token == "bogus.key");
    }

    try {
        parse_config("slits.v_x = 1\nslits.v_x = 2\n");
        FAIL("duplicate key accepted");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.token == "slits.v_x");
    }

    CHECK_THROWS_AS(parse_config("no equals sign here\n"), ParseError);
    CHECK_THROWS_AS(parse_config("= 3\n"), ParseError);
    CHECK_THROWS_AS(parse_config("slits.sigma0 =\n"), ParseError);
    CHECK_THROWS_AS(parse_config("slits.sigma0 = abc\n"), ParseError);
    CHECK_THROWS_AS(parse_config("grid.n_x = 3.5\n"), ParseError);
    CHECK_THROWS_AS(parse_config("slits.flip_channels = yes\n"), ParseError);
    CHECK_THROWS_AS(parse_config("output.format = tiff\n"), ParseError);
    CHECK_THROWS_AS(parse_config("ramp.shape = quadratic\n"), ParseError);
}

TEST_CASE("invalid physics in a parsed config is rejected after reading") {
    CHECK_THROWS_AS(parse_config("slits.sigma0 = -1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("grid.n_x = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("lattice.t_end = 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("output.directory =   # empty after trim\n"), ParseError);
}

TEST_CASE("serialization round-trips the default and a dressed configuration") {
    const ExperimentConfig base;
    const std::string text = serialize_config(base);
    const ExperimentConfig back = parse_config(text);
    CHECK(serialize_config(back) == text);
    CHECK(config_hash(back) == config_hash(base));

    ExperimentConfig dressed;
    dressed.slits.weight1 = 1.5;
    dressed.slits.weight2 = 0.5;
    dressed.slits.flip_channels = true;
    dressed.slits.ramp = PhaseRamp{15.707963267948966, 4.0, 6.0, RampShape::linear};
    dressed.slits.v_x = 0.3;
    dressed.grid.n_x = 64;
    dressed.trajectories.seeding = Seeding::uniform_in_x;
    dressed.trajectories.integrator = Integrator::euler;
    dressed.lattice.boundary = Boundary::absorbing;
    dressed.format = OutputFormat::both;
    dressed.output_dir = "runs/dressed";

    const std::string dressed_text = serialize_config(dressed);
    const ExperimentConfig dressed_back = parse_config(dressed_text);
    CHECK(serialize_config(dressed_back) == dressed_text);
    REQUIRE(dressed_back.slits.ramp.has_value());
    CHECK(dressed_back.slits.ramp->delta_phi_total == 15.707963267948966);
    CHECK(dressed_back.slits.flip_channels);
    CHECK(dressed_back.slits.weight1 == 1.5);
    CHECK(dressed_back.trajectories.integrator == Integrator::euler);
    CHECK(dressed_back.lattice.boundary == Boundary::absorbing);
    CHECK(dressed_back.format == OutputFormat::both);
    CHECK(dressed_back.output_dir == "runs/dressed");

    CHECK(config_hash(dressed) != config_hash(base));
}

TEST_CASE("config hashes are sixteen lowercase hex digits") {
    const std::string h = config_hash(ExperimentConfig{});
    REQUIRE(h.size() == 16);
    for (char c : h) CHECK((std::isdigit(static_cast<unsigned char>(c)) || (c >= 'a' && c <= 'f')));
}

TEST_CASE("missing config files raise an io error") {
    CHECK_THROWS_AS(load_config("/nonexistent/dir/experiment.cfg"), IoError);
}

TEST_CASE("grid files survive a serialize-parse cycle bit for bit") {
    const FieldGridFile g = tiny_grid();
    const std::string text = serialize_grid_csv(g);
    const FieldGridFile back = parse_grid_csv(text);
    CHECK(back.field == g.field);
    CHECK(back.units == g.units);
    CHECK(back.config == g.config);
    CHECK(back.spec.x_min == g.spec.x_min);
    CHECK(back.spec.x_max == g.spec.x_max);
    CHECK(back.spec.n_x == g.spec.n_x);
    CHECK(back.spec.n_t == g.spec.n_t);
    REQUIRE(back.values.size() == g.values.size());
    for (size_t i = 0; i < g.values.size(); ++i) CHECK(back.values[i] == g.values[i]);
    CHECK(serialize_grid_csv(back) == text);
}

TEST_CASE("grid parsing rejects structural damage") {
    const std::string text = serialize_grid_csv(tiny_grid());

    CHECK_THROWS_AS(parse_grid_csv("# not the magic\n"), ParseError);
    CHECK_THROWS_AS(parse_grid_csv(text + "trailing\n"), ParseError);

    const size_t last_row = text.rfind("\n", text.size() - 2);
    CHECK_THROWS_AS(parse_grid_csv(text.substr(0, last_row + 1)), ParseError);

    std::string extra_cell = text;
    extra_cell.insert(extra_cell.size() - 1, ",7");
    CHECK_THROWS_AS(parse_grid_csv(extra_cell), ParseError);

    std::string bad_cell = text;
    bad_cell.replace(bad_cell.rfind("1e-300"), 6, "1e--30");
    CHECK_THROWS_AS(parse_grid_csv(bad_cell), ParseError);

    std::string no_units = text;
    const size_t units_at = no_units.find("# units");
    no_units.erase(units_at, no_units.find('\n', units_at) - units_at + 1);
    CHECK_THROWS_AS(parse_grid_csv(no_units), ParseError);
}

TEST_CASE("tables serialize with comment headers and labeled columns") {
    CsvTable t;
    t.header = {{"config", "feedfacefeedface"}, {"note", "demo"}};
    t.columns = {"a", "b"};
    t.rows = {{"1", "2.5"}, {"3", "4.5"}};
    CHECK(serialize_csv(t) ==
          "# config = feedfacefeedface\n# note = demo\na,b\n1,2.5\n3,4.5\n");
}

TEST_CASE("heatmaps render deterministic sixteen-bit samples") {
    const std::string flat = render_pgm({2.5, 2.5, 2.5, 2.5}, 2, HeatmapScaling::linear);
    const PgmHeader hf = parse_pgm_header(flat);
    CHECK(hf.width == 2);
    CHECK(hf.height == 2);
    CHECK(hf.max_value == 65535);
    for (size_t i = 0; i < 4; ++i) CHECK(sample_at(flat, hf, i) == 65535u);

    const std::string pos = render_pgm({0.0, 1.0, 3.0}, 3, HeatmapScaling::linear);
    const PgmHeader hp = parse_pgm_header(pos);
    CHECK(sample_at(pos, hp, 0) == 0u);
    CHECK(sample_at(pos, hp, 1) == 21845u);  // 65535/3
    CHECK(sample_at(pos, hp, 2) == 65535u);

    const std::string signed_map = render_pgm({-1.0, 0.0, 1.0}, 3, HeatmapScaling::linear);
    const PgmHeader hs = parse_pgm_header(signed_map);
    CHECK(sample_at(signed_map, hs, 0) == 0u);
    CHECK(sample_at(signed_map, hs, 1) == 32768u);
    CHECK(sample_at(signed_map, hs, 2) == 65535u);

    const std::string log_map = render_pgm({0.0, 1e-4, 1.0}, 3, HeatmapScaling::log);
    const PgmHeader hl = parse_pgm_header(log_map);
    CHECK(sample_at(log_map, hl, 0) == 0u);       // nonpositive: black
    CHECK(sample_at(log_map, hl, 1) == 43690u);   // 8 of 12 decades up
    CHECK(sample_at(log_map, hl, 2) == 65535u);
}

TEST_CASE("mirrored data renders mirrored pixels") {
    const std::vector<double> fwd = {0.0, 0.25, 0.5, 1.0};
    std::vector<double> rev(fwd.rbegin(), fwd.rend());
    const std::string a = render_pgm(fwd, 4, HeatmapScaling::linear);
    const std::string b = render_pgm(rev, 4, HeatmapScaling::linear);
    const PgmHeader ha = parse_pgm_header(a);
    const PgmHeader hb = parse_pgm_header(b);
    for (size_t i = 0; i < 4; ++i) CHECK(sample_at(a, ha, i) == sample_at(b, hb, 3 - i));
}

TEST_CASE("damaged heatmap bytes are rejected") {
    std::string pgm = render_pgm({0.0, 1.0}, 2, HeatmapScaling::linear);
    CHECK_THROWS_AS(parse_pgm_header(pgm.substr(0, pgm.size() - 1)), ParseError);
    CHECK_THROWS_AS(parse_pgm_header(std::string("P6\n1 1\n255\nx")), ParseError);
    CHECK_THROWS_AS(render_pgm({1.0, 2.0, 3.0}, 2, HeatmapScaling::linear), ValidationError);
    std::vector<double> with_nan = {0.0, std::nan("")};
    CHECK_THROWS_AS(render_pgm(with_nan, 2, HeatmapScaling::linear), ValidationError);
}

TEST_CASE("binary files round-trip raw bytes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dslit_io_test" / "nested";
    ensure_directory(dir.string());
    const std::string path = (dir / "blob.bin").string();
    std::string payload = "header\n";
    payload.push_back('\0');
    payload += "\r\nbinary tail";
    write_binary_file(path, payload);
    CHECK(read_binary_file(path) == payload);
    CHECK_THROWS_AS(read_binary_file((dir / "missing.bin").string()), IoError);
    fs::remove_all(fs::temp_directory_path() / "dslit_io_test");
}
