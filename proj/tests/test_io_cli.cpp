#include <gtest/gtest.h>

#include <array>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "choreo/cli.hpp"
#include "support.hpp"

using namespace choreo;
namespace fs = std::filesystem;
namespace ct = choreo::testing;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "choreo");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
  protected:
    void SetUp() override {
        std::random_device rd;
        dir_ = fs::temp_directory_path() / ("choreo_test_" + std::to_string(rd()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

using TrajectoryIo = TempDir;
using Cli = TempDir;

TEST_F(TrajectoryIo, RoundTripIsBitExact) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        const int n = std::array{2, 4, 5, 6, 7}[static_cast<std::size_t>(trial % 5)];
        const auto omega = ct::random_word(n, rng);
        const auto arc = ct::random_feasible_arc(n, omega, 16, rng);
        Trajectory t{reconstruct_full_loop(SymmetrySpec(n), arc), omega, {{"seed", trial}}, std::nullopt};
        if (trial % 2) t.certificate = to_json(certify(t.loop, omega));
        write_trajectory(path("a.traj"), t);
        const auto back = read_trajectory(path("a.traj"));
        EXPECT_EQ(back.loop, t.loop);
        ASSERT_TRUE(back.omega.has_value());
        EXPECT_EQ(*back.omega, omega);
        EXPECT_EQ(back.metadata, t.metadata);
        EXPECT_EQ(back.certificate.has_value(), t.certificate.has_value());
        if (back.certificate) {
            EXPECT_EQ(certificate_from_json(*back.certificate).report(), certify(t.loop, omega).report());
        }
    }
}

TEST_F(TrajectoryIo, LoopWithoutWord) {
    const auto loop = ct::circular_two_body(1.0, 1.5, 32);
    write_trajectory(path("c.traj"), {loop, std::nullopt, nlohmann::json::object(), std::nullopt});
    const auto back = read_trajectory(path("c.traj"));
    EXPECT_EQ(back.loop, loop);
    EXPECT_FALSE(back.omega.has_value());
}

TEST_F(TrajectoryIo, MalformedDocuments) {
    EXPECT_THROW(read_trajectory(path("missing.traj")), Error);
    std::ofstream(path("junk.traj")) << "not json";
    EXPECT_THROW(read_trajectory(path("junk.traj")), Error);
    std::ofstream(path("tag.traj")) << R"({"format": "other/1"})";
    EXPECT_THROW(read_trajectory(path("tag.traj")), Error);
    nlohmann::json j = to_json(Trajectory{ct::circular_two_body(1.0, 1.5, 16), std::nullopt,
                                          nlohmann::json::object(), std::nullopt});
    j["positions"].erase(0);
    EXPECT_THROW(trajectory_from_json(j), Error);
    j = to_json(Trajectory{ct::circular_two_body(1.0, 1.5, 16), std::nullopt, nlohmann::json::object(),
                           std::nullopt});
    j.erase("period");
    EXPECT_THROW(trajectory_from_json(j), Error);
}

TEST(Csv, HeaderAndRows) {
    const auto loop = ct::circular_two_body(2.0, 1.0, 8);
    std::ostringstream os;
    write_csv(os, loop);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "time,body,x,y,z");
    int rows = 0;
    while (std::getline(is, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> v;
        while (std::getline(ls, cell, ',')) v.push_back(std::stod(cell));
        ASSERT_EQ(v.size(), 5u);
        const int s = rows / 2, i = rows % 2;
        EXPECT_EQ(v[0], loop.time(s));
        EXPECT_EQ(static_cast<int>(v[1]), i);
        EXPECT_EQ(v[2], loop.at(s, i).x);
        EXPECT_EQ(v[3], loop.at(s, i).y);
        ++rows;
    }
    EXPECT_EQ(rows, 16);
}

TEST(Svg, DrawsEveryTrack) {
    const auto loop = ct::circular_two_body(2.0, 1.0, 16);
    for (const char* p : {"xy", "xz", "yz", "3d-oblique"}) {
        std::ostringstream os;
        PlotOptions opt;
        opt.projection = parse_projection(p);
        opt.title = "t";
        write_svg(os, loop, opt);
        const std::string s = os.str();
        EXPECT_EQ(s.rfind("<?xml", 0), 0u);
        EXPECT_NE(s.find("</svg>"), std::string::npos);
        std::size_t count = 0;
        for (auto k = s.find("<polyline"); k != std::string::npos; k = s.find("<polyline", k + 1)) ++count;
        EXPECT_EQ(count, 2u) << p;
    }
    EXPECT_THROW(parse_projection("zz"), Error);
}

TEST(CliFlags, FlagErrorsExitTwo) {
    EXPECT_EQ(run_cli({}).code, 2);
    EXPECT_EQ(run_cli({"solve", "--n", "4"}).code, 2);
    EXPECT_EQ(run_cli({"solve", "--n", "4", "--omega", "+,-"}).code, 2);
    EXPECT_EQ(run_cli({"solve", "--n", "1", "--omega", "+"}).code, 2);
    EXPECT_EQ(run_cli({"bogus"}).code, 2);
    EXPECT_EQ(run_cli({"verify", "/nonexistent/file.traj"}).code, 2);
}

TEST(CliFlags, HelpAndVersionExitZero) {
    EXPECT_EQ(run_cli({"--help"}).code, 0);
    EXPECT_EQ(run_cli({"--version"}).code, 0);
    const auto h = run_cli({"solve", "--help"});
    EXPECT_EQ(h.code, 0);
    EXPECT_NE((h.out + h.err).find("--omega"), std::string::npos);
}

TEST_F(Cli, InadmissibleWordExitsThree) {
    const auto r = run_cli({"solve", "--n", "4", "--omega", "+,+,+", "--out", path("x.traj")});
    EXPECT_EQ(r.code, 3);
    EXPECT_FALSE(fs::exists(path("x.traj")));
}

TEST_F(Cli, NThreeCitesTheRule) {
    const auto r = run_cli({"sweep", "--n", "3", "--out", path("s3")});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("no admissible omega for n = 3"), std::string::npos);
    const auto s = run_cli({"solve", "--n", "3", "--omega", "+,-"});
    EXPECT_EQ(s.code, 3);
}

TEST_F(Cli, SolveVerifyPlot) {
    const auto traj = path("run.traj");
    const auto s = run_cli({"solve", "--n", "2", "--omega", "+,-", "--nodes", "512", "--out", traj, "--csv",
                            path("run.csv")});
    ASSERT_EQ(s.code, 0) << s.err;
    EXPECT_NE(s.out.find("status converged"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("run.csv")));

    const auto v = run_cli({"verify", traj});
    EXPECT_EQ(v.code, 0) << v.out;
    EXPECT_NE(v.out.find("embedded certificate: agrees"), std::string::npos);

    const auto strict = run_cli({"verify", traj, "--el-tol", "1e-9"});
    EXPECT_EQ(strict.code, 4);

    const auto p = run_cli({"plot", traj, "--proj", "xz", "--out", path("run.svg"), "--samples", "256"});
    ASSERT_EQ(p.code, 0) << p.err;
    const std::string svg = slurp(path("run.svg"));
    EXPECT_NE(svg.find("<svg"), std::string::npos);
    EXPECT_TRUE(fs::exists(path("run.csv")));
    EXPECT_EQ(run_cli({"plot", traj, "--proj", "diagonal"}).code, 2);
}

TEST_F(Cli, CoarseSolveFailsVerification) {
    const auto traj = path("coarse.traj");
    ASSERT_EQ(run_cli({"solve", "--n", "2", "--omega", "+,-", "--nodes", "128", "--out", traj}).code, 0);
    const auto v = run_cli({"verify", traj});
    EXPECT_EQ(v.code, 4);
    EXPECT_NE(v.out.find("[FAIL] el_residual"), std::string::npos);
    EXPECT_NE(v.out.find("agrees"), std::string::npos);
}

TEST_F(Cli, VerifyWithoutWord) {
    write_trajectory(path("w.traj"), {ct::circular_two_body(1.0, 1.5, 16), std::nullopt,
                                      nlohmann::json::object(), std::nullopt});
    EXPECT_EQ(run_cli({"verify", path("w.traj")}).code, 1);
}

TEST_F(Cli, SweepWritesSortedSummary) {
    const auto dir = path("s2");
    const auto r = run_cli({"sweep", "--n", "2", "--nodes", "64", "--out", dir, "--jobs", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream is(slurp(dir + "/summary.tsv"));
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line, "omega\taction\tmin_distance\tstatus\tcertificate\tfile");
    std::vector<std::string> words;
    while (std::getline(is, line)) {
        words.push_back(line.substr(0, line.find('\t')));
        const auto file = line.substr(line.rfind('\t') + 1);
        EXPECT_TRUE(fs::exists(dir + "/" + file)) << file;
    }
    ASSERT_EQ(words.size(), 2u);
    std::vector<OmegaSequence> parsed;
    for (const auto& w : words) parsed.push_back(OmegaSequence::parse(2, w));
    EXPECT_TRUE(std::is_sorted(parsed.begin(), parsed.end()));
}
