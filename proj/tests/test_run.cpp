#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "regsel/error.hpp"
#include "regsel/run.hpp"
#include "support/oracles.hpp"

namespace regsel {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

class RunTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / ("regsel_run_" + std::string(info->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_instance(const Dataset& ds, const std::string& name) {
    const fs::path path = dir_ / (name + ".csv");
    testing::write_dataset_csv(ds, path.string());
    return path;
  }

  static json read_json(const fs::path& path) {
    std::ifstream in(path);
    return json::parse(in);
  }

  static std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

Dataset reload(const fs::path& path) {
  std::ifstream in(path);
  return preprocess(load_table(in, TableFormat{}), PreprocessOptions{"y"});
}

TEST(KRange, Parsing) {
  EXPECT_EQ(parse_k_range("5").first, 5);
  EXPECT_EQ(parse_k_range("5").last, 5);
  const KRange r = parse_k_range(" 3:10 ");
  EXPECT_EQ(r.first, 3);
  EXPECT_EQ(r.last, 10);
  for (const char* bad : {"", "0", "4:2", "a", "3:", ":4", "2:x", "-1"}) {
    EXPECT_THROW((void)parse_k_range(bad), ConfigError) << bad;
  }
}

TEST(ConfigFile, ParsesKeyValueLines) {
  std::istringstream in("# settings\ninput = data.csv\n\nk=2:4  # range\nmethod = lazy, base\n");
  const auto s = read_config_file(in);
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s.at("input"), "data.csv");
  EXPECT_EQ(s.at("k"), "2:4");
  std::istringstream bad("input data.csv\n");
  EXPECT_THROW((void)read_config_file(bad), ConfigError);
  std::istringstream empty_key(" = 3\n");
  EXPECT_THROW((void)read_config_file(empty_key), ConfigError);
}

TEST(ApplySetting, KeysAndErrors) {
  RunConfig c;
  apply_setting(c, "method", "lazy,fs, iter");
  ASSERT_EQ(c.methods.size(), 3u);
  EXPECT_EQ(c.methods[1], Method::kForward);
  apply_setting(c, "alpha-e", "0.9");
  EXPECT_EQ(c.solver.significance.alpha_e, 0.9);
  apply_setting(c, "residual-tests", "false");
  EXPECT_FALSE(c.solver.significance.residual_tests);
  apply_setting(c, "delimiter", "\\t");
  EXPECT_EQ(c.delimiter, '\t');
  apply_setting(c, "seed", "42");
  EXPECT_EQ(c.solver.big_m.seed, 42u);
  apply_setting(c, "tau", "0.2");
  EXPECT_EQ(c.solver.penalty.tau, 0.2);
  EXPECT_THROW(apply_setting(c, "colour", "red"), ConfigError);
  EXPECT_THROW(apply_setting(c, "threads", "two"), ConfigError);
  EXPECT_THROW(apply_setting(c, "alpha-e", "0.9x"), ConfigError);
  EXPECT_THROW(apply_setting(c, "method", "lazy,magic"), ConfigError);
  EXPECT_THROW(apply_setting(c, "delimiter", ";;"), ConfigError);
}

TEST_F(RunTest, PlantedBaseRecoversColumns) {
  const fs::path input = write_instance(testing::make_planted_exact(4, 50, 5, {0, 2, 4}), "planted");
  RunConfig c;
  c.input = input;
  c.response = "y";
  c.methods = {Method::kBase};
  c.k = {3, 3};
  c.out = dir_ / "out";
  std::ostringstream log, err;
  ASSERT_EQ(run(c, log, err), kExitOk) << err.str();
  const json j = read_json(c.out / "planted_k3_base.json");
  EXPECT_EQ(j["status"], "optimal");
  std::vector<std::string> names;
  for (const auto& col : j["solution"]["columns"]) names.push_back(col["name"]);
  EXPECT_EQ(names, (std::vector<std::string>{"x0", "x2", "x4"}));
  EXPECT_TRUE(fs::exists(c.out / "planted_k3_base_residuals.csv"));
  const std::string rows = read_text(c.out / "comparison.csv");
  EXPECT_EQ(std::count(rows.begin(), rows.end(), '\n'), 2);
  EXPECT_NE(log.str().find("planted k=3 base: optimal"), std::string::npos);
}

TEST_F(RunTest, AllInfeasibleExitsWithTwo) {
  const fs::path input = write_instance(testing::criterion_instance(0), "noisy");
  RunConfig c;
  c.input = input;
  c.response = "y";
  c.methods = {Method::kLazy};
  c.k = {2, 2};
  c.out = dir_;
  std::ostringstream log, err;
  ASSERT_EQ(run(c, log, err), kExitInfeasible) << err.str();

  // No pair-legal subset of the reloaded data passes every test.
  const Dataset ds = reload(input);
  for (const auto& s : testing::enumerate_pair_legal(ds.m(), 2)) {
    ASSERT_FALSE(run_diagnostics(ds, ols_fit(ds, s), c.solver.significance).feasible) << s.to_string();
  }
  const json j = read_json(dir_ / "noisy_k2_lazy.json");
  EXPECT_EQ(j["status"], "infeasible_with_alternative");
  EXPECT_TRUE(j["solution"].is_null());
  const json& alt = j["alternative"];
  ASSERT_TRUE(alt.is_object());
  std::vector<int> cols;
  for (const auto& col : alt["columns"]) cols.push_back(col["index"]);
  const FitResult fit = ols_fit(ds, CandidateSubset(cols));
  const DiagnosticsReport report = run_diagnostics(ds, fit, c.solver.significance);
  EXPECT_EQ(alt["diagnostics"]["pi"], report.pi);
  EXPECT_NEAR(alt["diagnostics"]["E"].get<double>(), report.e, 1e-12);
  EXPECT_NEAR(alt["diagnostics"]["r_h"].get<double>(), report.r_h, 1e-12);
  EXPECT_NEAR(alt["sse"].get<double>(), fit.sse, 1e-10 * fit.sse);
}

TEST_F(RunTest, RepeatedRunsAreIdentical) {
  const fs::path input = write_instance(testing::criterion_instance(3), "inst");
  RunConfig c;
  c.input = input;
  c.response = "y";
  c.methods = {Method::kLazy, Method::kBase, Method::kForward, Method::kIterative, Method::kPenalty};
  c.k = {2, 3};
  std::ostringstream log, err;
  c.out = dir_ / "a";
  ASSERT_NE(run(c, log, err), kExitError) << err.str();
  c.out = dir_ / "b";
  ASSERT_NE(run(c, log, err), kExitError) << err.str();
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    const fs::path other = dir_ / "b" / entry.path().filename();
    ASSERT_TRUE(fs::exists(other)) << other;
    if (entry.path().extension() == ".json") {
      json x = read_json(entry.path());
      json y = read_json(other);
      x.erase("wall_time");
      y.erase("wall_time");
      EXPECT_EQ(x, y) << entry.path();
    } else if (entry.path().filename() != "comparison.csv") {
      EXPECT_EQ(read_text(entry.path()), read_text(other)) << entry.path();
    }
    ++compared;
  }
  EXPECT_EQ(compared, 2 * 5 * 2 + 1);
}

TEST_F(RunTest, BaseRowsCarryRepOfOne) {
  const fs::path input = write_instance(testing::criterion_instance(2), "inst");
  RunConfig c;
  c.input = input;
  c.response = "y";
  c.methods = {Method::kLazy, Method::kBase};
  c.k = {2, 2};
  c.out = dir_;
  std::ostringstream log, err;
  ASSERT_EQ(run(c, log, err), kExitOk) << err.str();
  EXPECT_EQ(read_json(dir_ / "inst_k2_base.json")["rep"].get<double>(), 1.0);
  EXPECT_LE(read_json(dir_ / "inst_k2_lazy.json")["rep"].get<double>(), 1.0 + 1e-9);
}

TEST_F(RunTest, ErrorsExitWithOne) {
  RunConfig c;
  c.response = "y";
  c.input = dir_ / "missing.csv";
  std::ostringstream log, err;
  EXPECT_EQ(run(c, log, err), kExitError);
  EXPECT_NE(err.str().find("missing.csv"), std::string::npos);

  c.input = write_instance(testing::criterion_instance(1), "inst");
  c.k = {9, 9};
  EXPECT_EQ(run(c, log, err), kExitError);
  c.k = {2, 2};
  c.response = "nope";
  EXPECT_EQ(run(c, log, err), kExitError);
  c.response = "y";
  c.solver.threads = 0;
  EXPECT_EQ(run(c, log, err), kExitError);
}

#ifdef REGSEL_CLI_PATH
int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + REGSEL_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST_F(RunTest, CliFlagsOverrideConfigFile) {
  const fs::path input = write_instance(testing::criterion_instance(2), "inst");
  const fs::path cfg = dir_ / "settings.cfg";
  {
    std::ofstream out(cfg);
    out << "input = " << input.string() << "\nresponse = y\nmethod = base\nk = 2\nout = " << (dir_ / "from_file").string()
        << "\n";
  }
  ASSERT_EQ(run_cli("--config \"" + cfg.string() + "\""), 0);
  EXPECT_TRUE(fs::exists(dir_ / "from_file" / "inst_k2_base.json"));

  ASSERT_EQ(run_cli("--config \"" + cfg.string() + "\" --k 3 --dataset-id flagged --out \"" +
                    (dir_ / "from_flags").string() + "\""),
            0);
  EXPECT_TRUE(fs::exists(dir_ / "from_flags" / "flagged_k3_base.json"));
  EXPECT_FALSE(fs::exists(dir_ / "from_flags" / "flagged_k2_base.json"));
}

TEST_F(RunTest, CliErrors) {
  EXPECT_EQ(run_cli("--help"), 0);
  EXPECT_EQ(run_cli("--no-such-flag 1"), 1);
  EXPECT_EQ(run_cli("--config \"" + (dir_ / "absent.cfg").string() + "\""), 1);
  const fs::path bad = dir_ / "bad.cfg";
  {
    std::ofstream out(bad);
    out << "colour = red\n";
  }
  EXPECT_EQ(run_cli("--config \"" + bad.string() + "\""), 1);
  const fs::path input = write_instance(testing::criterion_instance(0), "noisy");
  EXPECT_EQ(run_cli("--input \"" + input.string() + "\" --response y --k 2 --out \"" + dir_.string() + "\""), 2);
}
#endif

}  // namespace
}  // namespace regsel
