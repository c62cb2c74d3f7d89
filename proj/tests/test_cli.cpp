#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "grassnest/cli.hpp"

using grassnest::cli::dispatch;
using json = nlohmann::json;

namespace
{

struct Run
{
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("grassmann count")
{
    const auto r = run({"grassmann", "count", "-q", "2", "-n", "4", "-i", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "15\n");
    const auto big = run({"grassmann", "count", "-q", "3", "-n", "40", "-i", "20", "--format", "json"});
    CHECK(big.code == 0);
    CHECK(json::parse(big.out)["count"].is_string());
    const auto csv = run({"grassmann", "count", "-p", "2", "-k", "2", "-n", "3", "-i", "1", "--format", "csv"});
    CHECK(csv.out == "q,n,i,count\n4,3,1,21\n");
}

TEST_CASE("classification json")
{
    const auto r = run({"schw", "classify", "-n", "6", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["survivorJs"] == json::array({2, 5}));
    std::size_t survivors = 0;
    for (const auto& e : j["entries"])
        survivors += e["survivor"].get<bool>();
    CHECK(survivors == 2);
}

TEST_CASE("nest match report and export")
{
    const auto dir = std::filesystem::temp_directory_path() / "grassnest_cli_test";
    std::filesystem::create_directories(dir);
    const auto tsv = (dir / "pairs.tsv").string();
    const auto r = run({"nest", "match", "-q", "2", "-n", "4", "-i", "1", "-j", "3", "--format", "json", "--export", tsv});
    CHECK(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["perfect"] == true);
    CHECK(j["verifiedNesting"] == true);
    CHECK(j["size"] == 15);
    const auto text = slurp(tsv);
    CHECK(std::count(text.begin(), text.end(), '\n') == 15);
    CHECK(text.rfind("0\t", 0) == 0);
}

TEST_CASE("output directory override")
{
    const auto dir = std::filesystem::temp_directory_path() / "grassnest_out_dir";
    std::filesystem::create_directories(dir);
    std::filesystem::remove(dir / "count.txt");
    setenv("GRASSNEST_OUT_DIR", dir.c_str(), 1);
    const auto r = run({"grassmann", "count", "-n", "3", "-i", "1", "-o", "count.txt"});
    unsetenv("GRASSNEST_OUT_DIR");
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(dir / "count.txt") == "7\n");
}

TEST_CASE("exit codes")
{
    CHECK(run({"schw", "check", "--poly", "1,0,-1", "-m", "5"}).code == 0);
    CHECK(run({"schw", "check", "--poly", "1,1,1", "-m", "4"}).code == 1);
    CHECK(run({"nest", "linear-check", "-q", "2", "-n", "2", "--gram", "0,1,1,0"}).code == 0);
    CHECK(run({"chern", "obstruction", "-n", "5", "-i", "2", "-j", "3"}).code == 0);

    const auto bad_field = run({"grassmann", "count", "-q", "6", "-n", "4", "-i", "1"});
    CHECK(bad_field.code == 2);
    CHECK(bad_field.err.find("NotPrime") != std::string::npos);
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"grassmann", "count", "-n", "4"}).code == 2);
    CHECK(run({"nest", "hall", "-n", "4", "-i", "1", "-j", "2"}).code == 2);
    CHECK(run({"schw", "trace", "--poly", "1,2,1", "-m", "4"}).code == 2);
    CHECK(run({"nest", "perp", "-n", "4", "--format", "csv"}).code == 2);
    CHECK(run({"schw", "check", "--poly", "2,1", "-m", "3"}).code == 2);
    CHECK(run({"grassmann", "count", "-q", "4", "-p", "2", "-n", "3", "-i", "1"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("output is byte-identical across runs")
{
    const std::vector<std::vector<std::string>> cmds{
        {"nest", "hall", "-q", "2", "-n", "5", "-i", "2", "-j", "3", "--samples", "200", "--seed", "9", "--format", "json"},
        {"nest", "perp", "-q", "3", "-n", "4", "--format", "json"},
        {"chern", "certificate", "--d-max", "20", "--format", "json"},
        {"schw", "classify", "-n", "12", "--format", "csv"},
        {"grassmann", "enum", "-q", "4", "-n", "3", "-i", "2"},
    };
    for (const auto& c : cmds) {
        const auto a = run(c);
        const auto b = run(c);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
    const auto s0 = run({"nest", "hall", "-q", "2", "-n", "5", "-i", "2", "-j", "3", "--samples", "50", "--format", "json"});
    const auto s1 =
        run({"nest", "hall", "-q", "2", "-n", "5", "-i", "2", "-j", "3", "--samples", "50", "--seed", "0", "--format", "json"});
    CHECK(s0.out == s1.out);
}

TEST_CASE("certificate json shape")
{
    const auto j = json::parse(run({"chern", "certificate", "--d-max", "5", "--format", "json"}).out);
    CHECK(j["dMax"] == 5);
    CHECK(j["pass"] == true);
    REQUIRE(j["entries"].size() == 4);
    CHECK(j["entries"][0]["d"] == 2);
    CHECK(j["entries"][0]["gcdDegree"] == 0);
}
