#include <catch2/catch_amalgamated.hpp>

#include "adceq/table_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace adceq;

namespace {

Table sample_table() {
    Table t;
    t.meta.emplace_back("tool", "demo");
    t.meta.emplace_back("run", "7");
    t.columns = {{"name", ColKind::text},
                 {"count", ColKind::integer},
                 {"ratio", ColKind::real},
                 {"level_db", ColKind::decibel}};
    t.rows.push_back({Cell{std::string("alpha")}, Cell{static_cast<long long>(3)},
                      Cell{0.125}, Cell{-3.04}});
    t.rows.push_back({Cell{std::string("beta")}, Cell{static_cast<long long>(-1)},
                      Cell{1.5e-7}, Cell{}});
    return t;
}

}  // namespace

TEST_CASE("csv output carries metadata, header, and typed cells") {
    std::ostringstream os;
    write_csv(os, sample_table());
    const std::string expect =
        "# tool=demo\n"
        "# run=7\n"
        "name,count,ratio,level_db\n"
        "alpha,3,1.2500000000e-01,-3.0400\n"
        "beta,-1,1.5000000000e-07,\n";
    CHECK(os.str() == expect);
}

TEST_CASE("json output mirrors the csv cells with null for empties") {
    std::ostringstream os;
    write_json(os, sample_table());
    const std::string expect =
        "{\n"
        "  \"meta\": {\"tool\": \"demo\", \"run\": \"7\"},\n"
        "  \"rows\": [\n"
        "    {\"name\": \"alpha\", \"count\": 3, \"ratio\": 1.2500000000e-01, "
        "\"level_db\": -3.0400},\n"
        "    {\"name\": \"beta\", \"count\": -1, \"ratio\": 1.5000000000e-07, "
        "\"level_db\": null}\n"
        "  ]\n"
        "}\n";
    CHECK(os.str() == expect);
}

TEST_CASE("json strings are escaped") {
    Table t;
    t.meta.emplace_back("note", "say \"hi\"\\\n");
    t.columns = {{"v", ColKind::text}};
    t.rows.push_back({Cell{std::string("a\tb")}});
    std::ostringstream os;
    write_json(os, t);
    const std::string s = os.str();
    CHECK(s.find("say \\\"hi\\\"\\\\\\u000a") != std::string::npos);
    CHECK(s.find("a\\u0009b") != std::string::npos);
}

TEST_CASE("file writer dispatches on format and reports open failures") {
    const std::string base = "adceq_table_io_test";
    const std::string csv_path = base + ".csv";
    const std::string json_path = base + ".json";
    write_table_file(csv_path, TableFormat::csv, sample_table());
    write_table_file(json_path, TableFormat::json, sample_table());
    std::ifstream c(csv_path), j(json_path);
    std::string line;
    REQUIRE(std::getline(c, line));
    CHECK(line == "# tool=demo");
    REQUIRE(std::getline(j, line));
    CHECK(line == "{");
    c.close();
    j.close();
    std::remove(csv_path.c_str());
    std::remove(json_path.c_str());
    CHECK_THROWS(write_table_file("no_such_dir_xyz/file.csv", TableFormat::csv,
                                  sample_table()));
}

TEST_CASE("missing trailing cells render as empty columns") {
    Table t;
    t.columns = {{"a", ColKind::integer}, {"b", ColKind::integer}};
    t.rows.push_back({Cell{static_cast<long long>(1)}});  // short row
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str() == "a,b\n1,\n");
}
