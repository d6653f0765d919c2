#include "zonal/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

using zonal::cli::cmd_closed_form;
using zonal::cli::cmd_limit;
using zonal::cli::cmd_table;
using zonal::cli::cmd_verify;
using zonal::cli::GridSpec;
using zonal::cli::OutputFormat;
using zonal::cli::Spacing;
using zonal::cli::VerifyLevel;

namespace {

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string field;
        if (first) {
            while (std::getline(fields, field, ',')) table.header.push_back(field);
            first = false;
        } else {
            std::vector<double> row;
            while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

GridSpec single_point(int n, double rho) {
    GridSpec g;
    g.n_values = {n};
    g.rho_min = rho;
    g.rho_max = rho;
    g.rho_points = 1;
    return g;
}

} // namespace

TEST_CASE("invalid grids exit with code 2") {
    std::ostringstream out, err;
    GridSpec g = single_point(2, 0.5);
    g.rho_min = 0.0;
    g.rho_max = 0.0;
    CHECK(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 2);
    g = single_point(1, 0.5);
    CHECK(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 2);
    g = single_point(2, 0.5);
    g.rho_points = 0;
    CHECK(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 2);
    g = single_point(2, 0.5);
    g.rho_max = 0.1; // min > max
    CHECK(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 2);
    g = single_point(2, 0.5);
    g.n_values.clear();
    CHECK(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 2);
}

TEST_CASE("csv table carries the exact momentum variance") {
    std::ostringstream out, err;
    const int rc = cmd_table(single_point(2, std::log(2.0) / 2.0), OutputFormat::csv,
                             1e-12, out, err);
    REQUIRE(rc == 0);
    const CsvTable table = parse_csv(out.str());
    REQUIRE(table.header ==
            std::vector<std::string>{"n", "rho", "var_space", "var_momentum",
                                     "uncertainty", "limit_uncertainty",
                                     "margin_over_half_n"});
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0][3] == Catch::Approx(192.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("single-point grid emits exactly one data row") {
    std::ostringstream out, err;
    REQUIRE(cmd_table(single_point(3, 0.4), OutputFormat::csv, 1e-12, out, err) == 0);
    CHECK(parse_csv(out.str()).rows.size() == 1);
}

TEST_CASE("small-scale uncertainty lands within 1% of the limit") {
    std::ostringstream out, err;
    REQUIRE(cmd_table(single_point(2, 1e-3), OutputFormat::csv, 1e-12, out, err) == 0);
    const CsvTable table = parse_csv(out.str());
    CHECK(std::abs(table.rows[0][4] - 1.224745) / 1.224745 < 0.01);
}

TEST_CASE("csv rows round-trip and satisfy the product identity") {
    GridSpec g;
    g.n_values = {2, 3};
    g.rho_min = 0.05;
    g.rho_max = 1.0;
    g.rho_points = 5;
    g.spacing = Spacing::log;
    std::ostringstream out, err;
    REQUIRE(cmd_table(g, OutputFormat::csv, 1e-12, out, err) == 0);
    const CsvTable table = parse_csv(out.str());
    REQUIRE(table.rows.size() == 10);
    for (const auto& row : table.rows) {
        const double recomputed = std::sqrt(row[2] * row[3]);
        CHECK(std::abs(recomputed - row[4]) <= 1e-12 * row[4]);
        CHECK(row[4] >= 0.5 * row[0]); // margin column is consistent
        CHECK(row[6] == Catch::Approx(row[4] - 0.5 * row[0]).margin(1e-15));
    }
}

TEST_CASE("parallel grid output is deterministic") {
    GridSpec g;
    g.n_values = {2, 3, 4, 5, 6};
    g.rho_min = 0.05;
    g.rho_max = 2.0;
    g.rho_points = 8;
    g.spacing = Spacing::log;
    std::ostringstream out1, out2, err;
    REQUIRE(cmd_table(g, OutputFormat::csv, 1e-12, out1, err) == 0);
    REQUIRE(cmd_table(g, OutputFormat::csv, 1e-12, out2, err) == 0);
    CHECK(out1.str() == out2.str());
}

TEST_CASE("json table matches the csv values") {
    const GridSpec g = single_point(2, 0.7);
    std::ostringstream csv_out, json_out, err;
    REQUIRE(cmd_table(g, OutputFormat::csv, 1e-12, csv_out, err) == 0);
    REQUIRE(cmd_table(g, OutputFormat::json, 1e-12, json_out, err) == 0);
    const CsvTable table = parse_csv(csv_out.str());
    const auto parsed = nlohmann::json::parse(json_out.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0]["n"].get<int>() == 2);
    CHECK(parsed[0]["rho"].get<double>() == table.rows[0][1]);
    CHECK(parsed[0]["var_space"].get<double>() == table.rows[0][2]);
    CHECK(parsed[0]["var_momentum"].get<double>() == table.rows[0][3]);
    CHECK(parsed[0]["uncertainty"].get<double>() == table.rows[0][4]);
    CHECK(parsed[0]["limit_uncertainty"].get<double>() == table.rows[0][5]);
    CHECK(parsed[0]["margin_over_half_n"].get<double>() == table.rows[0][6]);
}

TEST_CASE("closed-form printing") {
    {
        std::ostringstream out, err;
        CHECK(cmd_closed_form(2, 0, out, err) == 0);
        CHECK(out.str() == "q / (1-q)^1\n");
    }
    {
        std::ostringstream out, err;
        CHECK(cmd_closed_form(2, 1, out, err) == 0);
        CHECK(out.str() == "q / (1-q)^2\n");
    }
    {
        std::ostringstream out, err;
        CHECK(cmd_closed_form(3, 0, out, err) == 0);
        CHECK(out.str() == "(2q - q^2) / (1-q)^2\n");
    }
    {
        std::ostringstream out, err;
        CHECK(cmd_closed_form(1, 0, out, err) == 2);
        CHECK(cmd_closed_form(2, -1, out, err) == 2);
        CHECK(cmd_closed_form(2, 13, out, err) == 2);
        CHECK(cmd_closed_form(2, 12, out, err) == 0);
    }
}

TEST_CASE("limit table") {
    {
        std::ostringstream out, err;
        REQUIRE(cmd_limit(3, out, err) == 0);
        const CsvTable table = parse_csv(out.str());
        REQUIRE(table.rows.size() == 2);
        CHECK(table.rows[0][0] == 2.0);
        CHECK(table.rows[0][1] == Catch::Approx(1.2247448713915890).epsilon(1e-15));
        CHECK(table.rows[0][2] == 1.0);
        CHECK(table.rows[0][3] == Catch::Approx(0.2247448713915890).epsilon(1e-13));
        CHECK(table.rows[1][1] == Catch::Approx(1.5811388300841897).epsilon(1e-15));
        CHECK(table.rows[1][2] == 1.5);
        CHECK(table.rows[1][3] == Catch::Approx(0.0811388300841897).epsilon(1e-12));
    }
    {
        std::ostringstream out, err;
        REQUIRE(cmd_limit(2, out, err) == 0);
        CHECK(parse_csv(out.str()).rows.size() == 1);
    }
    {
        std::ostringstream out, err;
        REQUIRE(cmd_limit(50, out, err) == 0);
        for (const auto& row : parse_csv(out.str()).rows) {
            CHECK(row[3] > 0.0);
        }
    }
    {
        std::ostringstream out, err;
        CHECK(cmd_limit(1, out, err) == 2);
    }
}

TEST_CASE("fast verification passes and detects injected faults") {
    {
        std::ostringstream out;
        CHECK(cmd_verify(1e-12, VerifyLevel::fast, OutputFormat::csv, out) == 0);
        CHECK(out.str().find("[FAIL]") == std::string::npos);
    }
    {
        std::ostringstream out;
        CHECK(cmd_verify(1e-12, VerifyLevel::fast, OutputFormat::csv, out, 1e-3) == 1);
        CHECK(out.str().find("[FAIL]") != std::string::npos);
    }
}
