// Copyright 2026 The qdouble Authors
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

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(QDOUBLE_CLI) + " " + args + " 2>&1";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qdouble_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

TEST(Cli, AnyonsZ2IsModular) {
  const CliRun r = run("anyons --group Z2");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("modular: true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("4 anyons"), std::string::npos);
}

TEST(Cli, AnyonsS3) {
  const CliRun r = run("anyons --group S3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("8 anyons"), std::string::npos);
  EXPECT_NE(r.out.find("flux:transposition"), std::string::npos);
}

TEST(Cli, TrivialGroupHasOneAnyon) {
  const CliRun r = run("anyons --group Z1");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("1 anyons"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("modular: true"), std::string::npos);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("anyons --group NotAGroup").code, 2);
  EXPECT_EQ(run("anyons").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("frobnicate --group Z2").code, 2);
  EXPECT_EQ(run("lattice-verify --group Z2 --size 3by3").code, 2);
  EXPECT_EQ(run("braid --group S3 --anyon charge:9 --n 2").code, 2);
}

TEST(Cli, LatticeVerifyRefusesLargeRegister) {
  const CliRun r = run("lattice-verify --group S4 --size 3x3");
  EXPECT_EQ(r.code, 3) << r.out;
}

TEST(Cli, LatticeVerifyZ2Passes) {
  const fs::path dump = scratch("ground.bin");
  const CliRun r = run("lattice-verify --group Z2 --size 2x2 --dump " + dump.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_NE(r.out.find("ground/dimension"), std::string::npos);
  EXPECT_EQ(fs::file_size(dump), 8u + 8u * 256u);  // magic plus 2^8 complex64 amplitudes
}

TEST(Cli, BraidEmptyFusionSpace) {
  const CliRun r = run("braid --group Z2 --anyon charge:1 --n 3");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("fusion space is 0-dimensional"), std::string::npos) << r.out;
}

TEST(Cli, BraidS3Flux) {
  const fs::path out = scratch("braid.json");
  const CliRun r = run("braid-rep --group S3 --anyon flux:transposition --n 4 --export " + out.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("dimension 5"), std::string::npos) << r.out;
  const std::string text = slurp(out);
  EXPECT_NE(text.find("\"braid_generators\""), std::string::npos);
  EXPECT_NE(text.find("\"fusion_dim\": 5"), std::string::npos);
}

TEST(Cli, ExportsAreByteIdentical) {
  const fs::path a = scratch("a.json"), b = scratch("b.json");
  ASSERT_EQ(run("anyons --group S3 --export " + a.string()).code, 0);
  ASSERT_EQ(run("anyons --group S3 --seed 7 --export " + b.string()).code, 0);
  const std::string ta = slurp(a), tb = slurp(b);
  EXPECT_FALSE(ta.empty());
  EXPECT_EQ(ta, tb);
  for (const char* key : {"\"labels\"", "\"dims\"", "\"fusion\"", "\"S\"", "\"T\"", "\"D\"", "\"group\""})
    EXPECT_NE(ta.find(key), std::string::npos) << key;
}

}  // namespace
