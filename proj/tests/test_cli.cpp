// Copyright 2026 The QCCD Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qccd/qv.hpp"
#include "qccd/report.hpp"

namespace qccd {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qccd_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  CliRun run(const std::string &args) {
    fs::path o = dir_ / "stdout", e = dir_ / "stderr";
    std::string cmd = std::string(QCCD_CLI_PATH) + " " + args + " >" + o.string() + " 2>" + e.string();
    int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(o);
    r.err = slurp(e);
    return r;
  }

  fs::path path(const std::string &name) const { return dir_ / name; }

  Json report(const std::string &name) const { return Json::parse(slurp(dir_ / name)); }

  fs::path dir_;
};

TEST_F(Cli, QvNoiselessPasses) {
  CliRun r = run("qv --n 2 --noise p_tq_depol=0 --circuits 20 --shots 50 --seed 3 --out " + path("qv.json").string());
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = report("qv.json");
  EXPECT_EQ(j["benchmark"], "qv");
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["seed"], 3);
  EXPECT_EQ(j["config"]["circuits"], 20);
  EXPECT_EQ(j["config"]["noise"]["p_tq_depol"], 0.0);
  EXPECT_EQ(j["config"]["noise"]["p_spam"], 3e-3);
  EXPECT_TRUE(j.contains("timestamp"));
  EXPECT_EQ(j["result"]["records"].size(), 20u);
}

TEST_F(Cli, QvCapacityError) {
  CliRun r = run("qv --n 9");
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("n exceeds simulator capacity"), std::string::npos);
}

TEST_F(Cli, ReportsAreReproducible) {
  std::string args = "qv --n 3 --circuits 8 --shots 40 --seed 11 --out ";
  ASSERT_NE(run(args + path("a.json").string()).code, 2);
  ASSERT_NE(run(args + path("b.json").string()).code, 2);
  Json a = report("a.json"), b = report("b.json");
  a.erase("timestamp");
  b.erase("timestamp");
  EXPECT_EQ(a.dump(), b.dump());
  std::string ra = slurp(path("a.json")), rb = slurp(path("b.json"));
  auto strip = [](std::string s) {
    std::stringstream in(s);
    std::string line, outp;
    while (std::getline(in, line)) {
      if (line.find("\"timestamp\"") == std::string::npos) {
        outp += line + "\n";
      }
    }
    return outp;
  };
  EXPECT_EQ(strip(ra), strip(rb));
}

TEST_F(Cli, Teleport) {
  CliRun r = run("teleport --shots 300 --noise default --seed 5 --out " + path("t.json").string());
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = report("t.json");
  for (const char *k : {"f1", "f2", "f_avg_lb"}) {
    EXPECT_TRUE(j["result"].contains(k)) << k;
  }
  EXPECT_NEAR(j["result"]["f_avg_lb"].get<double>(),
              0.8 * (j["result"]["f1"].get<double>() + j["result"]["f2"].get<double>()) - 0.6, 1e-12);
}

TEST_F(Cli, RbSimultaneousCrosstalkReport) {
  CliRun r = run("rb --qubits 2 --simultaneous --lengths 1,4,16,32 --sequences 4 --shots 0 --boot 20 --out " +
              path("rb.json").string());
  EXPECT_NE(r.code, 2) << r.err;
  Json j = report("rb.json");
  ASSERT_TRUE(j["result"].contains("crosstalk"));
  EXPECT_EQ(j["result"]["crosstalk"]["delta"].size(), 3u);
}

TEST_F(Cli, ScheduleQv6CoolingLargest) {
  std::ofstream(path("qv6.json")) << serialize_circuit(gen_qv_circuit(6, 4));
  CliRun r = run("schedule --circuit " + path("qv6.json").string() + " --mode n6 --merge --out " + path("s.json").string());
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = report("s.json");
  EXPECT_EQ(j["result"]["budget"]["largest_category"], "cooling");
  const Json &ev = j["result"]["events"];
  ASSERT_FALSE(ev.empty());
  for (const char *k : {"start_us", "dur_us", "kind", "zone", "operands"}) {
    EXPECT_TRUE(ev[0].contains(k)) << k;
  }
}

TEST_F(Cli, ScheduleErrors) {
  CliRun missing = run("schedule --circuit " + path("nope.json").string());
  EXPECT_EQ(missing.code, 2);
  std::ofstream(path("bad.json")) << "{\n  \"n_qubits\": 2,\n  \"ops\": [ }\n";
  CliRun bad = run("schedule --circuit " + path("bad.json").string());
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("3"), std::string::npos);
  std::ofstream(path("inv.json")) << R"({"n_qubits": 2, "ops": [{"gate": "zz", "q": 0, "q2": 7}]})";
  CliRun inv = run("schedule --circuit " + path("inv.json").string());
  EXPECT_EQ(inv.code, 2);
  EXPECT_NE(inv.err.find("out of range"), std::string::npos);
  EXPECT_EQ(run("qv --noise p_nope=1").code, 2);
}

TEST_F(Cli, ConfigFileFillsOptions) {
  std::ofstream(path("cfg.json")) << R"({"n": 2, "circuits": 6, "shots": 30, "seed": 21, "noise": "ideal"})";
  CliRun r = run("qv --config " + path("cfg.json").string() + " --shots 20 --out " + path("c.json").string());
  EXPECT_EQ(r.code, 0) << r.err;
  Json j = report("c.json");
  EXPECT_EQ(j["config"]["n"], 2);
  EXPECT_EQ(j["config"]["circuits"], 6);
  EXPECT_EQ(j["config"]["shots"], 20);
  EXPECT_EQ(j["seed"], 21);
  EXPECT_EQ(j["config"]["noise"]["p_spam"], 0.0);
}

TEST_F(Cli, Defaults) {
  CliRun r = run("defaults --mode n6");
  EXPECT_EQ(r.code, 0);
  Json j = Json::parse(r.out);
  EXPECT_EQ(j["timing"]["cool2_us"], 850.0);
  EXPECT_EQ(j["transport"]["overhead"], 1.1);
  EXPECT_EQ(j["noise"]["p_tq_depol"], 8e-3);
  EXPECT_EQ(run("").code, 2);
}

}  // namespace
}  // namespace qccd
