#include <gtest/gtest.h>

#include <json.hpp>

#include "lfiqa/feature_table.hpp"
#include "lfiqa/lfio.hpp"
#include "lfiqa_cli/cli.hpp"
#include "support/test_support.hpp"

namespace lfiqa {
namespace {

using testing::read_bytes;
using testing::TempDir;

int run_cli(const std::vector<std::string>& args) { return cli::run(args); }

// Small synthetic dataset shared by the tests in this file.
class CliDataset : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        dir_ = new TempDir();
        ASSERT_EQ(run_cli({"synth", "--out", (*dir_ / "data").string(), "--scenes", "8", "--angular", "5", "--spatial",
                           "32", "--disparity", "0.5", "--kinds", "blur,quantize,nn_view", "--seed", "3"}),
                  0);
        ASSERT_EQ(run_cli({"extract", "--manifest", (*dir_ / "data" / "manifest.json").string(), "--out",
                           (*dir_ / "features.csv").string()}),
                  0);
    }
    static void TearDownTestSuite() {
        delete dir_;
        dir_ = nullptr;
    }
    static std::filesystem::path path(const std::string& name) { return *dir_ / name; }
    static TempDir* dir_;
};
TempDir* CliDataset::dir_ = nullptr;

TEST_F(CliDataset, ExtractWritesOneRowPerEntry) {
    const FeatureTable t = read_feature_table(path("features.csv"));
    EXPECT_EQ(t.rows(), 120u);
    EXPECT_EQ(t.x.cols(), 59);
    EXPECT_TRUE(t.all_labelled());
    EXPECT_TRUE(std::filesystem::exists(orientation_path(path("features.csv"))));
    EXPECT_TRUE(std::filesystem::exists(sidecar_path(path("features.csv"))));
}

TEST_F(CliDataset, EvalReportsMedians) {
    const auto out = path("eval.json");
    ASSERT_EQ(run_cli({"eval", "--input", path("features.csv").string(), "--out", out.string(), "--iterations", "3",
                       "--seed", "7"}),
              0);
    const auto doc = nlohmann::json::parse(read_bytes(out));
    for (const char* key : {"srcc", "lcc", "rmse", "or"}) {
        ASSERT_TRUE(doc.contains(key)) << key;
        EXPECT_TRUE(doc[key].is_number()) << key;
    }
    EXPECT_EQ(doc["iterations"], 3);
    EXPECT_EQ(doc["split"], "scene");
    EXPECT_EQ(doc["seed"], 7);
    EXPECT_EQ(doc["items"], 120);
    EXPECT_GT(doc["srcc"].get<double>(), 0.5);
    std::filesystem::path log = out;
    log.replace_extension(".iterations.csv");
    const std::string text = read_bytes(log);
    EXPECT_EQ(text.substr(0, text.find('\n')), "iteration,srcc,lcc,rmse,or,n_train,n_test,c,g,logistic,resamples");
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
}

TEST_F(CliDataset, EvalIsRepeatable) {
    const std::vector<std::string> base{"eval", "--input", path("features.csv").string(), "--iterations", "2",
                                        "--seed", "11"};
    auto a = base;
    a.insert(a.end(), {"--out", path("r1.json").string()});
    auto b = base;
    b.insert(b.end(), {"--out", path("r2.json").string(), "--threads", "4"});
    ASSERT_EQ(run_cli(a), 0);
    ASSERT_EQ(run_cli(b), 0);
    EXPECT_EQ(read_bytes(path("r1.json")), read_bytes(path("r2.json")));
    EXPECT_EQ(read_bytes(path("r1.iterations.csv")), read_bytes(path("r2.iterations.csv")));
}

TEST_F(CliDataset, TrainPredictAndMismatch) {
    ASSERT_EQ(run_cli({"train", "--input", path("features.csv").string(), "--out", path("model.json").string()}), 0);
    ASSERT_EQ(run_cli({"predict", "--input", path("features.csv").string(), "--model", path("model.json").string(),
                       "--out", path("pred.csv").string(), "--mapped"}),
              0);
    const std::string pred = read_bytes(path("pred.csv"));
    EXPECT_EQ(std::count(pred.begin(), pred.end(), '\n'), 121);

    ASSERT_EQ(run_cli({"train", "--input", path("features.csv").string(), "--out", path("pcsc.json").string(),
                       "--features", "pcsc"}),
              0);
    ::testing::internal::CaptureStderr();
    const int rc = run_cli({"predict", "--input", path("features.csv").string(), "--model", path("pcsc.json").string(),
                            "--out", path("bad.csv").string()});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(rc, 1);
    EXPECT_NE(err.find("59"), std::string::npos) << err;
    EXPECT_NE(err.find("38"), std::string::npos) << err;
}

TEST_F(CliDataset, ChannelAndWeightSubsets) {
    ASSERT_EQ(run_cli({"eval", "--input", path("features.csv").string(), "--out", path("lum.json").string(),
                       "--iterations", "1", "--channels", "L", "--weights", "1,0,0,0"}),
              0);
    const auto doc = nlohmann::json::parse(read_bytes(path("lum.json")));
    EXPECT_EQ(doc["features"], 18);
}

TEST_F(CliDataset, Reports) {
    ASSERT_EQ(run_cli({"report", "--kind", "energies", "--lightfield", (path("data") / "scene01_blur_1").string(),
                       "--out", path("energies.csv").string()}),
              0);
    EXPECT_EQ(read_bytes(path("energies.csv")).rfind("orientation,stack,length,component,energy_fraction\n", 0), 0u);
    ASSERT_EQ(run_cli({"report", "--kind", "sscurve", "--lightfield", (path("data") / "scene01_blur_1").string(),
                       "--out", path("ss.csv").string()}),
              0);
    EXPECT_EQ(read_bytes(path("ss.csv")).rfind("orientation,stack,view,position,ssim\n", 0), 0u);
}

TEST(Cli, ExtractSkipsUnreadableEntryAndIsRepeatable) {
    TempDir tmp;
    ASSERT_EQ(run_cli({"synth", "--out", (tmp / "data").string(), "--scenes", "1", "--angular", "3", "--spatial", "24",
                       "--kinds", "blur", "--severities", "1,2"}),
              0);
    const auto manifest = tmp / "data" / "manifest.json";
    ASSERT_EQ(run_cli({"extract", "--manifest", manifest.string(), "--out", (tmp / "ok.csv").string()}), 0);
    const FeatureTable ok = read_feature_table(tmp / "ok.csv");
    EXPECT_EQ(ok.rows(), 2u);
    EXPECT_EQ(ok.x.cols(), 59);

    ASSERT_EQ(run_cli({"extract", "--manifest", manifest.string(), "--out", (tmp / "again.csv").string(), "--threads",
                       "4"}),
              0);
    EXPECT_EQ(read_bytes(tmp / "ok.csv"), read_bytes(tmp / "again.csv"));
    EXPECT_EQ(read_bytes(orientation_path(tmp / "ok.csv")), read_bytes(orientation_path(tmp / "again.csv")));

    std::filesystem::remove(tmp / "data" / "scene01_blur_2" / "v_2_2.png");
    ::testing::internal::CaptureStderr();
    const int rc = run_cli({"extract", "--manifest", manifest.string(), "--out", (tmp / "partial.csv").string()});
    const std::string err = ::testing::internal::GetCapturedStderr();
    EXPECT_EQ(rc, 1);
    EXPECT_NE(err.find("scene01_blur_2"), std::string::npos) << err;
    EXPECT_EQ(read_feature_table(tmp / "partial.csv").rows(), 1u);
}

TEST(Cli, UsageErrors) {
    ::testing::internal::CaptureStderr();
    EXPECT_EQ(run_cli({}), 2);
    EXPECT_EQ(run_cli({"extract", "--out", "x.csv"}), 2);
    EXPECT_EQ(run_cli({"extract", "--manifest", "/nonexistent/manifest.json", "--out", "x.csv"}), 2);
    EXPECT_EQ(run_cli({"eval", "--input", "/nonexistent.csv", "--out", "x.json", "--split", "diagonal"}), 2);
    EXPECT_EQ(run_cli({"frobnicate"}), 2);
    (void)::testing::internal::GetCapturedStderr();
    ::testing::internal::CaptureStdout();
    EXPECT_EQ(run_cli({"--help"}), 0);
    EXPECT_NE(::testing::internal::GetCapturedStdout().find("extract"), std::string::npos);
}

TEST(Cli, ParseWeights) {
    EXPECT_EQ(cli::parse_weights("1,0,0,0"), (std::array<double, 4>{1, 0, 0, 0}));
    EXPECT_EQ(cli::parse_weights("0.25,0.25,0.25,0.25"), kDefaultWeights);
    EXPECT_THROW((void)cli::parse_weights("1,2,3"), cli::UsageError);
    EXPECT_THROW((void)cli::parse_weights("1,-1,0,0"), cli::UsageError);
    EXPECT_THROW((void)cli::parse_weights("a,b,c,d"), cli::UsageError);
}

}  // namespace
}  // namespace lfiqa
