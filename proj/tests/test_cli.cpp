#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "gapcluster/dataset.hpp"
#include "gapcluster/rng.hpp"
#include "gapcluster/simharness.hpp"

namespace {

const std::string kCli = GAPCLUSTER_CLI_PATH;

struct CommandResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CommandResult run_cli(const std::string& args) {
    const auto out_path = std::filesystem::temp_directory_path() / "cli_stdout.txt";
    const std::string cmd = kCli + " " + args + " > " + out_path.string() + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    CommandResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    return result;
}

std::filesystem::path write_points_csv(const std::string& name, const std::string& body) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << body;
    return path;
}

} // namespace

TEST_CASE("cluster subcommand labels 1D {0,1,5}") {
    const auto csv = write_points_csv("cli_linkage.csv", "0\n1\n5\n");
    const auto res = run_cli("cluster --input " + csv.string() + " --k 2");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "row,label\n0,0\n1,0\n2,1\n");

    const auto all_one = run_cli("cluster --input " + csv.string() + " --k 1");
    CHECK(all_one.exit_code == 0);
    CHECK(all_one.out == "row,label\n0,0\n1,0\n2,0\n");
}

TEST_CASE("cluster rejects invalid k and missing input") {
    const auto csv = write_points_csv("cli_linkage.csv", "0\n1\n5\n");
    CHECK(run_cli("cluster --input " + csv.string() + " --k 0").exit_code == 2);
    CHECK(run_cli("cluster --input " + csv.string() + " --k 9").exit_code == 2);
    CHECK(run_cli("cluster --input /nonexistent.csv --k 2").exit_code == 2);
}

TEST_CASE("run produces a stable report and selection") {
    // two clearly separated 2D blobs
    gapcluster::RngStream stream(1);
    std::ostringstream body;
    for (int i = 0; i < 15; ++i)
        body << stream.normal(0.0, 0.3) << ',' << stream.normal(0.0, 0.3) << '\n';
    for (int i = 0; i < 15; ++i)
        body << stream.normal(8.0, 0.3) << ',' << stream.normal(8.0, 0.3) << '\n';
    const auto csv = write_points_csv("cli_blobs.csv", body.str());

    const auto report1 = std::filesystem::temp_directory_path() / "cli_report1.json";
    const auto report2 = std::filesystem::temp_directory_path() / "cli_report2.json";
    const std::string flags = " --variant log-pooled --kmax 6 --b 12 --seed 9 --threads 2";
    const auto res1 =
        run_cli("run --input " + csv.string() + flags + " --out " + report1.string());
    CHECK(res1.exit_code == 0);
    CHECK(res1.out == "2\n");

    const auto res2 =
        run_cli("run --input " + csv.string() + flags + " --out " + report2.string());
    CHECK(res2.exit_code == 0);
    CHECK(slurp(report1) == slurp(report2)); // byte-identical rerun

    const auto doc = nlohmann::json::parse(slurp(report1));
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["selected_k"] == 2);
    CHECK(doc["per_k"]["w"].size() == 6);
    CHECK(doc["labels"].size() == 30);
}

TEST_CASE("run selects three clusters on iris with both pooled variants") {
    const std::string iris = std::string(GAPCLUSTER_DATA_DIR) + "/iris.csv";
    const std::string base = "run --input " + iris + " --has-header --label-column 4 "
                             "--kmax 10 --b 50 --seed 42 --threads 2 --variant ";
    const auto log_res = run_cli(base + "log-pooled");
    CHECK(log_res.exit_code == 0);
    CHECK(log_res.out == "3\n");
    const auto direct_res = run_cli(base + "direct-pooled");
    CHECK(direct_res.exit_code == 0);
    CHECK(direct_res.out == "3\n");
}

TEST_CASE("run reports nd with exit 0 on increasing-gap data") {
    gapcluster::RngStream stream(gapcluster::derive_seed(2027, 0));
    const gapcluster::Dataset data = gapcluster::gen_degenerate(100, stream);
    const auto csv = std::filesystem::temp_directory_path() / "cli_degenerate.csv";
    gapcluster::write_csv(data, csv);

    const auto res =
        run_cli("run --input " + csv.string() + " --variant log-pooled --kmax 8 --b 20 --seed 4");
    CHECK(res.exit_code == 0);
    CHECK(res.out == "nd\n");
}

TEST_CASE("run distinguishes usage errors from numerical failures") {
    CHECK(run_cli("run --input /missing.csv --variant log-pooled").exit_code == 2);
    CHECK(run_cli("run").exit_code == 2);
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("run --input x.csv --variant bogus").exit_code == 2);

    // duplicate points: DegenerateDispersion is a numerical failure -> exit 1
    const auto dup = write_points_csv("cli_dup.csv", "2\n2\n2\n2\n");
    const auto res =
        run_cli("run --input " + dup.string() + " --variant log-pooled --kmax 2 --b 4");
    CHECK(res.exit_code == 1);
}

TEST_CASE("simulate validates family and parameters") {
    const auto prefix = (std::filesystem::temp_directory_path() / "cli_sim").string();
    CHECK(run_cli("simulate --family overlap --param -1 --reps 2 --out " + prefix).exit_code
          == 2);
    CHECK(run_cli("simulate --family spiral --param 1 --reps 2 --out " + prefix).exit_code == 2);
    CHECK(run_cli("simulate --family unequal --param 9 --reps 2 --out " + prefix).exit_code == 2);
}

TEST_CASE("simulate writes a frequency table and a trace") {
    const auto prefix = (std::filesystem::temp_directory_path() / "cli_sim_ok").string();
    const std::string cmd = "simulate --family overlap --param 5 --reps 3 --kmax 6 --b 10 "
                            "--variants log-pooled,direct-pooled --seed 12 --threads 2 --out "
                            + prefix;
    CHECK(run_cli(cmd).exit_code == 0);

    const std::string freq = slurp(prefix + "_freq.csv");
    CHECK(freq.find("family,param,variant") != std::string::npos);
    CHECK(freq.find("overlap,5,log-pooled,3") != std::string::npos);

    const auto trace = nlohmann::json::parse(slurp(prefix + "_trace.json"));
    CHECK(trace["repetitions"] == 3);
    CHECK(trace["traces"].size() == 3);

    // rerun is byte-identical
    const std::string before = slurp(prefix + "_freq.csv");
    CHECK(run_cli(cmd).exit_code == 0);
    CHECK(slurp(prefix + "_freq.csv") == before);
}

TEST_CASE("analyze rect-distance") {
    const auto res = run_cli("analyze rect-distance --a 1 --b 1");
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(std::abs(doc["expected_distance"].get<double>() - 0.521405) < 1e-5);

    const auto wide = run_cli("analyze rect-distance --a 11 --b 6");
    const auto wide_doc = nlohmann::json::parse(wide.out);
    CHECK(std::abs(wide_doc["expected_distance"].get<double>() - 4.53) < 0.01);

    CHECK(run_cli("analyze rect-distance --a 0 --b 1").exit_code == 2);
}

TEST_CASE("analyze predict-m at the case-study constants") {
    const auto res =
        run_cli("analyze predict-m --sigma 1 --delta 5 --davg 3.48 --variant log");
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["max_m"] == 4);
    CHECK(doc["holds_at_m"] == true);

    const auto direct =
        run_cli("analyze predict-m --sigma 1 --delta 5 --davg 3.48 --variant direct");
    CHECK(nlohmann::json::parse(direct.out)["max_m"] == 2);
}

TEST_CASE("analyze concentration") {
    const auto res = run_cli("analyze concentration --p 2 --n 50 --seed 3");
    CHECK(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    CHECK(doc["spread_ratio"].get<double>() > 0.0);

    const auto hi = run_cli("analyze concentration --p 100 --n 50 --seed 3");
    CHECK(nlohmann::json::parse(hi.out)["spread_ratio"].get<double>()
          < doc["spread_ratio"].get<double>());
}
