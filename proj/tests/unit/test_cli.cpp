#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "minvec/io.hpp"
#include "minvec_cli/commands.hpp"
#include "minvec_cli/report.hpp"

using namespace minvec;
using namespace minvec::cli;
namespace fs = std::filesystem;

namespace {

int run(std::vector<std::string> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "minvec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  return rc;
}

std::string golden(const std::string& name) {
  return Report::structured(io::read_file(std::string(MINVEC_GOLDEN_DIR) + "/" + name));
}

std::string datum(const std::string& id) { return test::data_path("datums/" + id + ".datum"); }
std::string query(const std::string& id) { return test::data_path("queries/" + id + ".query"); }

}  // namespace

TEST(Cli, GoldenStructuredBlocks) {
  RunConfig cfg;
  EXPECT_EQ(Report::structured(cmd_exponent(2, cfg).report), golden("exponent-2.report"));
  EXPECT_EQ(Report::structured(cmd_exponent(3, cfg).report), golden("exponent-3.report"));
  EXPECT_EQ(Report::structured(cmd_count(query("diag-split"), cfg).report), golden("diag-split.count.report"));
  EXPECT_EQ(Report::structured(cmd_order(datum("n2e2j1p3"), cfg).report), golden("n2e2j1p3.order.report"));
  EXPECT_EQ(Report::structured(cmd_verify(datum("n2e2j1p3"), {"character", "omega"}, cfg).report),
            golden("n2e2j1p3.verify.report"));
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"exponent", "2"}), kPass);
  EXPECT_EQ(run({"exponent", "1"}), kUsage);
  EXPECT_EQ(run({}), kUsage);
  EXPECT_EQ(run({"frobnicate"}), kUsage);
  EXPECT_EQ(run({"order", "/nonexistent.datum"}), kUsage);
  EXPECT_EQ(run({"verify", datum("n2e2j1p3"), "--checks", "nonsense"}), kUsage);
  EXPECT_EQ(run({"verify", datum("n2e2j1p3"), "--checks", ""}), kUsage);
  EXPECT_EQ(run({"order", datum("n2e2p3-pi-minus2")}), kPass);
  EXPECT_EQ(run({"verify", datum("n2e2p3-pi-minus2"), "--checks", "character"}), kConstruction);
  EXPECT_EQ(run({"verify", datum("n2e2j1p3"), "--checks", "omega", "--budget", "100"}), kBudget);
  EXPECT_EQ(run({"count", query("out-of-regime")}), kPass);
  EXPECT_EQ(run({"count", query("diag3"), "--budget", "5"}), kBudget);
}

TEST(Cli, OutFlagWritesFile) {
  const auto path = fs::temp_directory_path() / "minvec_cli_test.txt";
  fs::remove(path);
  std::string printed;
  ASSERT_EQ(run({"count", query("sqrt2"), "--out", path.string()}, &printed), kPass);
  ASSERT_TRUE(fs::exists(path));
  const auto text = io::read_file(path.string());
  EXPECT_NE(text.find("count = 4"), std::string::npos);
  fs::remove(path);
}

TEST(Cli, ReportsAreDeterministic) {
  RunConfig a, b;
  b.seed = 1;
  EXPECT_EQ(cmd_order(datum("n2e2j3p3"), a).report, cmd_order(datum("n2e2j3p3"), b).report);
  EXPECT_EQ(cmd_count(query("diag3"), a).report, cmd_count(query("diag3"), b).report);
  const auto v1 = cmd_verify(datum("n4-parabolic-p2"), {"character", "omega"}, a);
  const auto v2 = cmd_verify(datum("n4-parabolic-p2"), {"character", "omega"}, b);
  EXPECT_EQ(v1.exit_code, kPass);
  EXPECT_EQ(v1.report, v2.report);
}
