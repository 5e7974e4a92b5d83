#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "twmr/config.hpp"
#include "twmr/errors.hpp"
#include "twmr/result_table.hpp"

using namespace twmr;

TEST_CASE("csv layout") {
    SUBCASE("one row, two real columns, no metadata: exactly two lines") {
        io::ResultTable table;
        table.columns.push_back(io::Column::real("x", {1.0}));
        table.columns.push_back(io::Column::real("y", {2.5}));
        std::ostringstream out;
        io::write_csv(table, out);
        CHECK_EQ(out.str(), "x,y\n1,2.5\n");
    }
    SUBCASE("complex columns split into _re/_im pairs") {
        io::ResultTable table;
        table.columns.push_back(io::Column::complex("a_k", {{1.0, -2.0}}));
        std::ostringstream out;
        io::write_csv(table, out);
        CHECK_EQ(out.str(), "a_k_re,a_k_im\n1,-2\n");
    }
    SUBCASE("metadata rides in comment lines") {
        io::ResultTable table;
        table.columns.push_back(io::Column::real("x", {0.001}));
        table.add_meta("param.kappa", 15.0);
        std::ostringstream out;
        io::write_csv(table, out);
        CHECK_EQ(out.str(), "# param.kappa = 15\nx\n0.001\n");
    }
    SUBCASE("mismatched column lengths are rejected") {
        io::ResultTable table;
        table.columns.push_back(io::Column::real("x", {1.0, 2.0}));
        table.columns.push_back(io::Column::real("y", {1.0}));
        std::ostringstream out;
        CHECK_THROWS_AS(io::write_csv(table, out), ValidationError);
    }
}

TEST_CASE("deterministic formatting") {
    CHECK_EQ(io::format_double(0.5), "0.5");
    CHECK_EQ(io::format_double(1e-3), "0.001");
    CHECK_EQ(io::format_double(-0.1), "-0.1");
    // shortest round-trip representation survives parsing
    const double value = 0.1 + 0.2;
    CHECK_EQ(std::stod(io::format_double(value)), value);
}

TEST_CASE("json round trip") {
    io::ResultTable table;
    table.columns.push_back(io::Column::real("delta", {-0.1, 0.0, 0.1}));
    table.columns.push_back(io::Column::complex("a_k", {{1.0, 2.0}, {3.0, 4.0}, {5e-17, -1.25}}));
    table.add_meta("device", "ptsym");
    table.add_meta("param.J", 0.016);

    std::ostringstream out;
    io::write_json(table, out);
    std::istringstream in(out.str());
    const auto parsed = io::read_json(in);

    REQUIRE_EQ(parsed.columns.size(), table.columns.size());
    CHECK_EQ(parsed.metadata, table.metadata);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        CHECK_EQ(parsed.columns[c].name, table.columns[c].name);
        CHECK_EQ(parsed.columns[c].is_complex, table.columns[c].is_complex);
        REQUIRE_EQ(parsed.columns[c].re.size(), table.columns[c].re.size());
        for (std::size_t r = 0; r < table.columns[c].re.size(); ++r) {
            CHECK_EQ(parsed.columns[c].re[r], table.columns[c].re[r]);
            if (table.columns[c].is_complex) {
                CHECK_EQ(parsed.columns[c].im[r], table.columns[c].im[r]);
            }
        }
    }

    // byte-identical re-serialization
    std::ostringstream again;
    io::write_json(parsed, again);
    CHECK_EQ(out.str(), again.str());
}

TEST_CASE("emit failures map to IoError") {
    io::ResultTable table;
    table.columns.push_back(io::Column::real("x", {1.0}));
    CHECK_THROWS_AS(io::emit(table, io::Format::csv, "/nonexistent-dir/out.csv"), IoError);
}

TEST_CASE("config parsing") {
    const auto config = io::parse_config(
        "# a comment\n"
        "kappa = 15.0\n"
        "optical = 12 193000 15\n"
        "optical = -12 193000 15  # repeated key\n"
        "label = fig2b\n"
        "kappa = 16.5\n");
    CHECK_EQ(config.require_double("kappa"), 16.5); // last assignment wins
    CHECK_EQ(config.get_all("optical").size(), 2);
    CHECK_EQ(config.get_string("label", ""), "fig2b");
    CHECK_EQ(config.get_double("absent", -1.0), -1.0);
    CHECK_THROWS_AS(config.require_double("absent"), ValidationError);
    CHECK_THROWS_AS(config.require_double("label"), ValidationError);
    CHECK_THROWS_AS(io::parse_config("not a pair\n"), ValidationError);
}

TEST_CASE("config overrides") {
    io::Config config = io::parse_config("kappa = 15\n");
    const std::vector<std::string> overrides = {"kappa=12", "n_th=0.2"};
    io::apply_overrides(config, overrides);
    CHECK_EQ(config.require_double("kappa"), 12.0);
    CHECK_EQ(config.require_double("n_th"), 0.2);
    const std::vector<std::string> bad = {"nonsense"};
    CHECK_THROWS_AS(io::apply_overrides(config, bad), ValidationError);
}

TEST_CASE("load_config missing file") {
    CHECK_THROWS_AS(io::load_config("/nonexistent-dir/run.cfg"), IoError);
}
