/*
 * Copyright 2026 The rmtk authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "rmtk/io.hpp"
#include "rmtk/kernels.hpp"

using namespace rmtk;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RMTK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("numeric formatting round-trips exactly") {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(mant(gen), expo(gen) % 60);
    CHECK(io::parse_double(io::format_g17(x)) == x);
  }
  for (double x : {0.0, -0.0, 1e-300, -1e300, 0.1, 1.0 / 3.0}) {
    CHECK(io::parse_double(io::format_g17(x)) == x);
  }
}

TEST_CASE("grid parsing") {
  const auto g = io::parse_grid("-4:4:0.25");
  CHECK(g.size() == 33);
  CHECK(g.front() == -4.0);
  CHECK(g.back() == doctest::Approx(4.0));

  const auto h = io::parse_grid("0:1:0.1");
  CHECK(h.size() == 11);

  CHECK_THROWS(io::parse_grid("nonsense"));
  CHECK_THROWS(io::parse_grid("0:1:-0.1"));
}

TEST_CASE("csv tuple parsing and table arity") {
  const auto v = io::parse_csv_doubles("0.3,-0.4,1.1");
  CHECK(v.size() == 3);
  CHECK(v[1] == -0.4);

  io::Table t;
  t.columns = {"a", "b"};
  CHECK_THROWS(t.add_row({"1"}));
  t.add_row({"1", "2"});
  std::ostringstream os;
  io::write_csv(t, os);
  CHECK(os.str() == "a,b\n1,2\n");
}

TEST_CASE("cli: help and usage errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("kernel --beta 3 --xp 1 --xq 0").exit_code == 2);
  CHECK(run_cli("definitely-not-a-subcommand").exit_code == 2);
}

TEST_CASE("cli: analytic kernel row matches the library") {
  const auto r = run_cli("kernel --beta 1 --n 3 --xp 0.2 --xq 0.9 --method analytic");
  CHECK(r.exit_code == 0);
  std::istringstream in(r.output);
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  CHECK(header == "beta,N,x_p,x_q,method,value,uncertainty");
  const auto comma = row.rfind(",0");
  const auto prev = row.rfind(',', comma - 1);
  const double value = io::parse_double(row.substr(prev + 1, comma - prev - 1));
  CHECK(value == kernels::kernel(1, 3, 0.9, 0.2));
}

TEST_CASE("cli: degenerate input exit code") {
  CHECK(run_cli("corr --beta 2 --n 2 --point 0.5,0.5").exit_code == 4);
  CHECK(run_cli("kernel --beta 2 --n 2 --xp 0.5 --xq 0.5 --method mc --samples 500")
            .exit_code == 4);
}

TEST_CASE("cli: verify constants report") {
  const auto r = run_cli("verify constants");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"schema\": 1") != std::string::npos);
  CHECK(r.output.find("\"suite\": \"constants\"") != std::string::npos);
  CHECK(r.output.find("\"failed\": 0") != std::string::npos);
}

TEST_CASE("cli: json table output") {
  const auto r = run_cli(
      "kernel --beta 2 --n 2 --xp 0.4 --xq -0.3 --method analytic --format json");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"columns\"") != std::string::npos);
  CHECK(r.output.find("\"method\": \"analytic\"") != std::string::npos);
}
