// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "subprocess.hpp"

namespace {

const std::string kCli = CLI_PATH;

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

// Splits CSV text into lines, dropping the trailing empty piece.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("tail exp reproduces the two-mean-gaps tail") {
  const auto r =
      run_command(kCli + " tail exp --rate-denominator 30 --t 60");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "model,rate,t,tail\n"
        "exp,0.0333333333333,60,0.135335283237\n");

  const auto r90 =
      run_command(kCli + " tail exp --rate-denominator 30 --t 90");
  REQUIRE(r90.exit_code == 0);
  CHECK(r90.output.find("0.0497870683679") != std::string::npos);

  const auto r0 = run_command(kCli + " tail exp --rate-denominator 30 --t 0");
  REQUIRE(r0.exit_code == 0);
  CHECK(r0.output.find(",1\n") != std::string::npos);
}

TEST_CASE("tail rw reports exact and asymptotic columns") {
  const auto r = run_command(kCli + " tail rw --t 100");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "model,t,tail_exact,tail_asymptotic\n"
        "rw,100,0.0795892373872,0.0797884560803\n");
}

TEST_CASE("tail rw rejects odd epochs unless asked to floor") {
  const auto odd = run_command(kCli + " tail rw --t 99 2>/dev/null");
  CHECK(odd.exit_code != 0);
  const auto floored =
      run_command(kCli + " tail rw --t 99 --floor-even");
  REQUIRE(floored.exit_code == 0);
  CHECK(floored.output.find("rw,98,") != std::string::npos);
}

TEST_CASE("pmf rw-returns matches the 16-path enumeration") {
  const auto r = run_command(kCli + " pmf rw-returns --steps 4");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "r,mass\n"
        "0,0.375\n"
        "1,0.375\n"
        "2,0.25\n");
}

TEST_CASE("pmf arcsine matches the 4-path enumeration") {
  const auto r = run_command(kCli + " pmf arcsine --steps 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "epoch,mass\n"
        "0,0.5\n"
        "2,0.5\n");
}

TEST_CASE("pmf poisson handles a zero mean and a rate-horizon pair") {
  const auto zero = run_command(kCli + " pmf poisson --mean 0 --kmax 3");
  REQUIRE(zero.exit_code == 0);
  CHECK(zero.output ==
        "k,mass\n"
        "0,1\n"
        "1,0\n"
        "2,0\n"
        "3,0\n");

  const auto ten = run_command(
      kCli + " pmf poisson --rate-denominator 30 --horizon 300 --kmax 12");
  REQUIRE(ten.exit_code == 0);
  CHECK(ten.output.find("10,0.125110035721\n") != std::string::npos);

  const auto missing = run_command(kCli + " pmf poisson 2>/dev/null");
  CHECK(missing.exit_code != 0);
}

TEST_CASE("arcsine defaults to the halfway query on 300 steps") {
  const auto r = run_command(kCli + " arcsine");
  REQUIRE(r.exit_code == 0);
  CHECK(r.output ==
        "horizon,epoch,cdf\n"
        "300,150,0.502115004183\n");
}

TEST_CASE("estimate reproduces the ten-gap interval") {
  const auto dir = fresh_dir("renewal_cli_estimate");
  const auto csv = dir / "events.csv";
  {
    std::ofstream out(csv);
    out << "year,label\n";
    for (int year = 1700; year <= 2000; year += 30) {
      out << year << ",\n";
    }
  }
  const auto r = run_command(kCli + " estimate " + csv.string());
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "mean,se,ci_low,ci_high,confidence,n_gaps,method");
  CHECK(rows[1] ==
        "30,9.48683298051,14.3955483637,45.6044516363,0.9,10,"
        "normal-ci/exponential-sigma");

  const auto r95 = run_command(kCli + " estimate --confidence 0.95 " +
                               csv.string());
  REQUIRE(r95.exit_code == 0);
  CHECK(r95.output.find("11.4061490309,48.5938509691") != std::string::npos);
}

TEST_CASE("estimate surfaces parse failures with their location") {
  const auto dir = fresh_dir("renewal_cli_badfile");
  const auto csv = dir / "bad.csv";
  {
    std::ofstream out(csv);
    out << "year,label\n1918,x\n1889,y\n";
  }
  const auto r =
      run_command(kCli + " estimate " + csv.string() + " 2>&1");
  CHECK(r.exit_code != 0);
  CHECK(r.output.find("line 3") != std::string::npos);

  const auto missing =
      run_command(kCli + " estimate /no/such/file.csv 2>&1");
  CHECK(missing.exit_code != 0);

  // Two events give a single gap, too few for an interval.
  const auto pair_csv = dir / "pair.csv";
  {
    std::ofstream out(pair_csv);
    out << "year,label\n1889,\n1900,\n";
  }
  const auto pair =
      run_command(kCli + " estimate " + pair_csv.string() + " 2>&1");
  CHECK(pair.exit_code != 0);
}

TEST_CASE("simulate output is byte-identical across runs and thread counts") {
  const std::string base =
      kCli + " simulate --seed 42 --reps 2000 --model rw --horizon 300";
  const auto t1 = run_command(base + " --threads 1");
  const auto t4 = run_command(base + " --threads 4");
  const auto again = run_command(base + " --threads 4");
  REQUIRE(t1.exit_code == 0);
  REQUIRE(t4.exit_code == 0);
  CHECK(t1.output == t4.output);
  CHECK(t4.output == again.output);
  CHECK(t1.output.find("xoshiro256++/splitmix64-substream") !=
        std::string::npos);
  CHECK(t1.output.find("last_event_cdf,150,") != std::string::npos);
}

TEST_CASE("simulate exp reports the gap-tail probe with its exact value") {
  const auto r = run_command(
      kCli + " simulate --model exp --reps 2000 --seed 7 --gap-probe 60");
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() > 2);
  CHECK(rows[0] == "quantity,parameter,estimate,se,exact");
  bool found = false;
  for (const auto& row : rows) {
    if (row.rfind("gap_tail,60,", 0) == 0) {
      found = true;
      CHECK(row.find("0.135335283237") != std::string::npos);
    }
  }
  CHECK(found);
}

TEST_CASE("json format emits parsable rows mirroring the csv") {
  const auto r = run_command(
      kCli + " tail exp --rate-denominator 30 --t 60 --format json");
  REQUIRE(r.exit_code == 0);
  const auto parsed = nlohmann::json::parse(r.output);
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0]["model"] == "exp");
  CHECK(parsed[0]["t"] == 60);
  CHECK(parsed[0]["tail"].get<double>() ==
        doctest::Approx(0.135335283237).epsilon(1e-11));
}

TEST_CASE("--out writes the table to a file and keeps stdout quiet") {
  const auto dir = fresh_dir("renewal_cli_out");
  const auto path = dir / "tail.csv";
  const auto r = run_command(kCli + " tail rw --t 100 --out " + path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.empty());
  CHECK(slurp(path).find("0.0795892373872") != std::string::npos);
}

TEST_CASE("figures writes the three data files") {
  const auto dir = fresh_dir("renewal_cli_figures");
  const auto r = run_command(kCli + " figures --out-dir " + dir.string());
  REQUIRE(r.exit_code == 0);

  const auto fig1 = lines_of(slurp(dir / "fig1.csv"));
  REQUIRE(fig1.size() == 60);  // header + k = 0..58
  CHECK(fig1[0] == "k,mass");
  CHECK(fig1[11] == "10,0.125110035721");

  const auto fig2 = lines_of(slurp(dir / "fig2.csv"));
  REQUIRE(fig2.size() == 152);  // header + r = 0..150
  CHECK(fig2[0] == "r,mass");
  double sum = 0.0;
  for (std::size_t i = 1; i < fig2.size(); ++i) {
    sum += std::stod(fig2[i].substr(fig2[i].find(',') + 1));
  }
  CHECK(std::abs(sum - 1.0) <= 1e-11);

  const auto fig3 = lines_of(slurp(dir / "fig3.csv"));
  REQUIRE(fig3.size() == 303);  // comment + header + steps 0..300
  CHECK(fig3[0] == "# last_zero_cdf(300,150) = 0.502115004183");
  CHECK(fig3[1] == "step,position");
  CHECK(fig3[2] == "0,0");

  // Same seed, same bytes.
  const auto dir2 = fresh_dir("renewal_cli_figures2");
  const auto r2 = run_command(kCli + " figures --out-dir " + dir2.string());
  REQUIRE(r2.exit_code == 0);
  CHECK(slurp(dir / "fig3.csv") == slurp(dir2 / "fig3.csv"));

  const auto bad = run_command(
      kCli + " figures --out-dir /no/such/dir/anywhere 2>/dev/null");
  CHECK(bad.exit_code != 0);
}

TEST_CASE("bad invocations exit nonzero") {
  CHECK(run_command(kCli + " 2>/dev/null").exit_code != 0);
  CHECK(run_command(kCli + " tail 2>/dev/null").exit_code != 0);
  CHECK(run_command(kCli + " tail exp --t 60 2>/dev/null").exit_code != 0);
  CHECK(run_command(kCli + " simulate --model bogus 2>/dev/null").exit_code !=
        0);
  CHECK(run_command(kCli + " --no-such-flag 2>/dev/null").exit_code != 0);
  CHECK(run_command(kCli +
                    " tail exp --rate-denominator 30 --rate 0.1 --t 60 "
                    "2>/dev/null")
            .exit_code != 0);
}

TEST_CASE("the shipped example data file parses and estimates") {
  const std::string data = std::string(DATA_DIR) + "/pandemics_example.csv";
  const auto r = run_command(kCli + " estimate " + data);
  REQUIRE(r.exit_code == 0);
  const auto rows = lines_of(r.output);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].find(",9,") != std::string::npos);  // ten events, nine gaps
}
