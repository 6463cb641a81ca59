#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"
#include "json.hpp"

using heat::app::run;

namespace {
std::vector<std::string> with(std::vector<std::string> base, const std::vector<std::string>& more) {
    base.insert(base.end(), more.begin(), more.end());
    return base;
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}
}  // namespace

TEST(Cli, Heat1dCauchyRowsPass) {
    const auto r = run({"heat1d", "--alpha", "1", "--t", "1e-4,1e-2"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_FALSE(ls.empty());
    std::size_t header = 0;
    while (header < ls.size() && ls[header].starts_with("#")) ++header;
    ASSERT_LT(header, ls.size());
    EXPECT_EQ(ls[header], "alpha,domain,t,quantity,method,value,err,reference,pass,seed,n_steps,level");
    EXPECT_EQ(ls.size(), header + 3);
    EXPECT_NE(ls[header + 1].find("PASS"), std::string::npos);
}

TEST(Cli, ProvenanceEchoesResolvedValues) {
    const auto r = run({"--seed", "42", "heat1d", "--alpha", "1.5", "--t", "1e-3"});
    EXPECT_NE(r.out.find("# seed=42"), std::string::npos);
    EXPECT_NE(r.out.find("# command=heat1d"), std::string::npos);
    EXPECT_NE(r.out.find("# alpha=1.5"), std::string::npos);
}

TEST(Cli, JsonMirrorsCsv) {
    const std::vector<std::string> cmd{"heatnd", "--alpha", "1.5", "--t", "1e-4,1e-3", "--method", "quad"};
    const auto csv = run(with({"--format", "csv"}, cmd));
    const auto json = run(with({"--format", "json"}, cmd));
    ASSERT_EQ(csv.exit_code, 0) << csv.err;
    ASSERT_EQ(json.exit_code, 0) << json.err;
    std::size_t rows = 0;
    for (const auto& l : lines(csv.out))
        if (!l.starts_with("#")) ++rows;
    const auto js = lines(json.out);
    ASSERT_EQ(js.size(), rows);  // provenance object plus one per record; CSV has a header line
    const auto prov = nlohmann::json::parse(js[0]);
    EXPECT_EQ(prov["provenance"]["command"], "heatnd");
    const auto rec = nlohmann::json::parse(js[1]);
    for (const char* col : heat::app::kColumns) EXPECT_TRUE(rec.contains(col)) << col;
}

TEST(Cli, ByteIdenticalAcrossThreads) {
    const std::vector<std::string> cmd{"heatnd", "--alpha", "1.5", "--t", "1e-3", "--method", "mc", "--samples",
                                       "100000"};
    for (const char* format : {"csv", "json"}) {
        const auto a = run(with({"--format", format, "--seed", "9", "--threads", "1"}, cmd));
        const auto b = run(with({"--format", format, "--seed", "9", "--threads", "4"}, cmd));
        const auto c = run(with({"--format", format, "--seed", "10", "--threads", "4"}, cmd));
        EXPECT_EQ(a.out, b.out) << format;
        EXPECT_NE(a.out, c.out) << format;
    }
}

TEST(Cli, ConfigFileBelowFlags) {
    const auto path = std::filesystem::temp_directory_path() / "heatcontent_cli_test.ini";
    {
        std::ofstream f(path);
        f << "seed=5\n";
    }
    const auto from_file = run({"--config", path.string(), "heat1d", "--alpha", "1", "--t", "1e-3"});
    EXPECT_NE(from_file.out.find("# seed=5"), std::string::npos) << from_file.err;
    const auto flag_wins = run({"--config", path.string(), "--seed", "6", "heat1d", "--alpha", "1", "--t", "1e-3"});
    EXPECT_NE(flag_wins.out.find("# seed=6"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, OutputFile) {
    const auto path = std::filesystem::temp_directory_path() / "heatcontent_cli_out.csv";
    const auto r = run({"--out", path.string(), "perimeter", "--alpha", "0.5", "--domain", "interval:0:1"});
    ASSERT_EQ(r.exit_code, 0) << r.err;
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_NE(ss.str().find("perimeter"), std::string::npos);
    std::filesystem::remove(path);
}

TEST(Cli, FailedCheckGivesNonZeroExit) {
    // A deliberately tiny tolerance on a fit that is only accurate to about 1e-4.
    const auto r = run({"heatnd", "--alpha", "0.5", "--t", "1e-4", "--fit", "linear", "--fit-grid",
                        "log:1e-5:1e-3:7", "--tol", "1e-9"});
    EXPECT_EQ(r.exit_code, 1) << r.err;
    EXPECT_NE(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ModuleErrorsAreReported) {
    const auto r = run({"heatnd", "--alpha", "3"});
    EXPECT_EQ(r.exit_code, 2);
    EXPECT_FALSE(r.err.empty());
    const auto bad_grid = run({"heat1d", "--t", "1e-2,1e-3"});
    EXPECT_EQ(bad_grid.exit_code, 2);
}

TEST(Cli, DensityNormCheck) {
    const auto r = run({"density", "--alpha", "0.8,1.5", "--d", "2", "--t", "1", "--r", "0.5,2", "--normcheck"});
    EXPECT_EQ(r.exit_code, 0) << r.err << r.out;
}

TEST(Cli, DomainFile) {
    const auto path = std::filesystem::temp_directory_path() / "heatcontent_domain.cfg";
    {
        std::ofstream f(path);
        f << "# unit disk\nkind=ball\ndim=2\nradius=1\n";
    }
    const auto from_file = run({"heatnd", "--alpha", "1.5", "--t", "1e-3", "--domain", path.string()});
    const auto shorthand = run({"heatnd", "--alpha", "1.5", "--t", "1e-3", "--domain", "ball:2:1"});
    ASSERT_EQ(from_file.exit_code, 0) << from_file.err;
    const auto a = lines(from_file.out), b = lines(shorthand.out);
    EXPECT_EQ(a.back(), b.back());
    std::filesystem::remove(path);
}
