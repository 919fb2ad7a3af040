#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blockstein/cli.hpp"

using namespace blockstein;
using json = nlohmann::json;

namespace {

std::pair<int, std::string> run(const std::vector<std::string>& args) {
    std::ostringstream out;
    int code = run_cli(args, out);
    return {code, out.str()};
}

}  // namespace

TEST_CASE("cmd_cohomology") {
    SUBCASE("C2 at p=2, deg 3: dims 1,1,1,1") {
        auto [code, text] = run({"cohomology", "--group", "C2", "--p", "2", "--deg", "3"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["schema"] == "blockstein/1");
        CHECK(j["results"]["dims"] == json({1, 1, 1, 1}));
        // beta from degree 1 to 2 is an isomorphism here
        CHECK(j["results"]["bockstein_matrices"][1] == json({{1}}));
    }
    SUBCASE("deg 0") {
        auto [code, text] = run({"cohomology", "--group", "S3", "--p", "3", "--deg", "0"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["dims"] == json({1}));
    }
    SUBCASE("bad group name exits 2") {
        auto [code, text] = run({"cohomology", "--group", "X9", "--p", "2"});
        CHECK(code == 2);
    }
    SUBCASE("budget error exits 3") {
        auto [code, text] = run({"cohomology", "--group", "S4", "--p", "2", "--deg", "3",
                                 "--budget", "50"});
        CHECK(code == 3);
    }
}

TEST_CASE("cmd_hochschild") {
    SUBCASE("S3 at p=3: three centralizer rows") {
        auto [code, text] = run({"hochschild", "--group", "S3", "--p", "3", "--deg", "2"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["centralizers"].size() == 3);
        CHECK(j["results"]["hochschild_dims"] == json({3, 1, 1}));
    }
    SUBCASE("abelian group: |G| rows") {
        auto [code, text] = run({"hochschild", "--group", "C2xC2", "--p", "2", "--deg", "1"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["centralizers"].size() == 4);
    }
    SUBCASE("--verify on C2 passes all checks") {
        auto [code, text] = run({"hochschild", "--group", "C2", "--p", "2", "--deg", "2",
                                 "--verify"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["status"] == "ok");
        CHECK(!j["checks"].empty());
        for (auto& c : j["checks"]) CHECK(c["pass"] == true);
    }
}

TEST_CASE("cmd_blocks") {
    SUBCASE("S3 at p=3: one block (normal Sylow), defect order 3") {
        auto [code, text] = run({"blocks", "--group", "S3", "--p", "3", "--deg", "1"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["block_count"] == 1);
        CHECK(j["results"]["blocks"][0]["defect_order"] == 3);
        CHECK(j["results"]["blocks"][0]["principal"] == true);
    }
    SUBCASE("S3 at p=2: defect-0 block flagged") {
        auto [code, text] = run({"blocks", "--group", "S3", "--p", "2", "--deg", "1"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["block_count"] == 2);
        bool has_defect0 = false;
        for (auto& b : j["results"]["blocks"])
            if (b["defect_order"] == 1) has_defect0 = true;
        CHECK(has_defect0);
    }
    SUBCASE("C3 at p=3: one block, defect the whole group") {
        auto [code, text] = run({"blocks", "--group", "C3", "--p", "3", "--deg", "1"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["block_count"] == 1);
        CHECK(j["results"]["blocks"][0]["defect_order"] == 3);
    }
    SUBCASE("out-of-range block index exits 2") {
        auto [code, text] = run({"blocks", "--group", "C2", "--p", "2", "--block", "5"});
        CHECK(code == 2);
    }
    SUBCASE("verify") {
        auto [code, text] = run({"blocks", "--group", "S3", "--p", "2", "--deg", "1",
                                 "--verify"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["status"] == "ok");
    }
}

TEST_CASE("cmd_source") {
    SUBCASE("C_p: Y = [1] with p summands per degree") {
        auto [code, text] = run({"source", "--group", "C3", "--p", "3", "--deg", "2"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["Y"].size() == 1);
        CHECK(j["results"]["Y"][0]["mackey_labels"] == 3);
        CHECK(j["results"]["source_cohomology_dims"] == json({3, 3, 3}));
    }
    SUBCASE("S3 p=2 principal: A = kC2") {
        auto [code, text] = run({"source", "--group", "S3", "--p", "2", "--deg", "2"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["results"]["source_algebra_dim"] == 2);
        CHECK(j["results"]["Y"].size() == 1);
        CHECK(j["results"]["defect_order"] == 2);
    }
    SUBCASE("missing block index exits 2") {
        auto [code, text] = run({"source", "--group", "C2", "--p", "2", "--block", "7"});
        CHECK(code == 2);
    }
    SUBCASE("verify on S3 p=2") {
        auto [code, text] = run({"source", "--group", "S3", "--p", "2", "--deg", "2",
                                 "--verify"});
        REQUIRE(code == 0);
        json j = json::parse(text);
        CHECK(j["status"] == "ok");
    }
}

TEST_CASE("determinism of reports") {
    SUBCASE("identical invocations produce byte-identical reports") {
        auto r1 = run({"hochschild", "--group", "S3", "--p", "3", "--deg", "2", "--verify"});
        auto r2 = run({"hochschild", "--group", "S3", "--p", "3", "--deg", "2", "--verify"});
        CHECK(r1.second == r2.second);
    }
    SUBCASE("seed does not change the report") {
        auto r1 = run({"source", "--group", "S3", "--p", "2", "--deg", "2", "--seed", "1"});
        auto r2 = run({"source", "--group", "S3", "--p", "2", "--deg", "2", "--seed", "999"});
        CHECK(r1.second == r2.second);
    }
}

TEST_CASE("cache is a pure memo") {
    auto dir = std::filesystem::temp_directory_path() / "blockstein_cache_test";
    std::filesystem::remove_all(dir);
    auto fresh = run({"cohomology", "--group", "C4", "--p", "2", "--deg", "2"});
    auto first = run({"cohomology", "--group", "C4", "--p", "2", "--deg", "2",
                      "--cache", dir.string()});
    auto second = run({"cohomology", "--group", "C4", "--p", "2", "--deg", "2",
                       "--cache", dir.string()});
    CHECK(fresh.second == first.second);
    CHECK(first.second == second.second);
    CHECK(!std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
}

TEST_CASE("config file and group JSON input") {
    auto tmp = std::filesystem::temp_directory_path();
    auto cfgpath = tmp / "blockstein_test.ini";
    {
        std::ofstream out(cfgpath);
        out << "# comment\nbudget = 150000\nmax_degree = 3\n";
    }
    Config cfg = load_config_file(cfgpath.string());
    CHECK(cfg.budget == 150000);
    CHECK(cfg.max_degree == 3);
    std::filesystem::remove(cfgpath);

    auto gpath = tmp / "blockstein_group.json";
    {
        std::ofstream out(gpath);
        out << R"({"order": 2, "table": [[0,1],[1,0]]})";
    }
    GroupPtr G = load_group(gpath.string());
    CHECK(G->n == 2);
    auto [code, text] = run({"cohomology", "--group", gpath.string(), "--p", "2", "--deg", "2"});
    CHECK(code == 0);
    std::filesystem::remove(gpath);
}

TEST_CASE("BLOCKSTEIN_CACHE environment override") {
    auto dir = std::filesystem::temp_directory_path() / "blockstein_env_cache";
    std::filesystem::remove_all(dir);
    setenv("BLOCKSTEIN_CACHE", dir.string().c_str(), 1);
    auto r1 = run({"cohomology", "--group", "C2", "--p", "2", "--deg", "1"});
    unsetenv("BLOCKSTEIN_CACHE");
    auto r2 = run({"cohomology", "--group", "C2", "--p", "2", "--deg", "1"});
    CHECK(r1.first == 0);
    CHECK(r1.second == r2.second);
    CHECK(std::filesystem::exists(dir));
    CHECK(!std::filesystem::is_empty(dir));
    std::filesystem::remove_all(dir);
}
