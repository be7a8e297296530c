// Drives the installed binary end to end against the bundled fixture corpus.
// CBD_CLI and CBD_FIXTURES are injected by the test harness.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string cli() {
  const char* p = std::getenv("CBD_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string fixtures() {
  const char* p = std::getenv("CBD_FIXTURES");
  REQUIRE(p != nullptr);
  return p;
}

int run(const std::string& args, const std::string& stdout_path = "/dev/null") {
  std::string cmd = cli() + " " + args + " > " + stdout_path + " 2> /dev/null";
  int status = std::system(cmd.c_str());
  REQUIRE(status != -1);
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& text) {
  std::size_t n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

std::size_t count_commas(const std::string& line) {
  std::size_t n = 0;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') quoted = !quoted;
    if (c == ',' && !quoted) ++n;
  }
  return n;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("extract writes a CSV with one row per instance and 181 columns") {
  TempFile csv("cli_extract.csv");
  int rc = run("extract --instances " + fixtures() + "/instances.jsonl --out " + csv.path);
  CHECK(rc == 0);
  std::string content = slurp(csv.path);
  CHECK(count_lines(content) == 21);  // header + 20 instances

  std::istringstream in(content);
  std::string header;
  std::getline(in, header);
  CHECK(count_commas(header) == 180);  // id + 180 feature columns
  CHECK(header.rfind("id,", 0) == 0);

  std::string first;
  std::getline(in, first);
  CHECK(count_commas(first) == 180);
  CHECK(first.rfind("f01,", 0) == 0);
}

TEST_CASE("extract output is byte-identical across runs") {
  TempFile a("cli_extract_a.csv"), b("cli_extract_b.csv");
  std::string base = "extract --instances " + fixtures() + "/instances.jsonl --out ";
  CHECK(run(base + a.path) == 0);
  CHECK(run(base + b.path) == 0);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("extract matches the frozen golden CSV") {
  TempFile csv("cli_extract_golden.csv");
  CHECK(run("extract --instances " + fixtures() + "/instances.jsonl --out " +
            csv.path) == 0);
  CHECK(slurp(csv.path) == slurp(fixtures() + "/features_golden.csv"));
}

TEST_CASE("missing input file exits with code 2") {
  CHECK(run("extract --instances no_such_file.jsonl") == 2);
  CHECK(run("bogus-subcommand") == 2);
  CHECK(run("extract") == 2);  // --instances is required
}

TEST_CASE("rank emits a CSV ordered by descending score") {
  TempFile csv("cli_rank.csv");
  int rc = run("rank --instances " + fixtures() + "/instances.jsonl --truth " +
               fixtures() + "/truth.jsonl --full --out " + csv.path);
  CHECK(rc == 0);
  std::istringstream in(slurp(csv.path));
  std::string header;
  std::getline(in, header);
  CHECK(header == "rank,feature,score");
  std::string line;
  double prev = 1e300;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    auto pos = line.rfind(',');
    double score = std::stod(line.substr(pos + 1));
    CHECK(score <= prev);
    prev = score;
  }
  CHECK(rows == 180);
}

TEST_CASE("train, predict, evaluate round trip") {
  TempFile model("cli_roundtrip.model"), preds("cli_roundtrip.jsonl");
  std::string common = " --instances " + fixtures() + "/instances.jsonl --truth " +
                       fixtures() + "/truth.jsonl";
  int rc = run("train" + common + " --model-kind rf-reg --trees 20 --max-depth 8"
               " --top-k 20 --out " + model.path);
  CHECK(rc == 0);

  rc = run("predict --instances " + fixtures() + "/instances.jsonl --model " +
           model.path + " --out " + preds.path);
  CHECK(rc == 0);

  std::istringstream in(slurp(preds.path));
  std::string line;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    auto obj = nlohmann::json::parse(line);
    CHECK(obj.contains("id"));
    double score = obj.at("clickbaitScore").get<double>();
    CHECK(score >= 0.0);
    CHECK(score <= 1.0);
  }
  CHECK(rows == 20);

  TempFile report("cli_eval.json");
  rc = run("evaluate --predictions " + preds.path + " --truth " + fixtures() +
           "/truth.jsonl", report.path);
  CHECK(rc == 0);
  auto rep = nlohmann::json::parse(slurp(report.path));
  CHECK(rep.contains("metrics"));
  CHECK(rep.contains("error_report"));
  // model trained on the same 20 rows; held-in metrics should be strong
  CHECK(rep["metrics"]["auc"].get<double>() > 0.9);
}

TEST_CASE("predict rejects a model trained against a different schema") {
  TempFile model("cli_tamper.model");
  std::string common = " --instances " + fixtures() + "/instances.jsonl --truth " +
                       fixtures() + "/truth.jsonl";
  REQUIRE(run("train" + common + " --model-kind linear --top-k 10 --out " +
              model.path) == 0);

  // corrupt the embedded schema checksum
  std::string content = slurp(model.path);
  auto pos = content.find("schema_checksum");
  REQUIRE(pos != std::string::npos);
  pos = content.find('\t', pos);
  REQUIRE(pos != std::string::npos);
  content[pos + 1] = content[pos + 1] == '0' ? '1' : '0';
  {
    std::ofstream out(model.path, std::ios::binary);
    out << content;
  }

  int rc = run("predict --instances " + fixtures() + "/instances.jsonl --model " +
               model.path);
  CHECK(rc == 1);
}

TEST_CASE("cv writes a fold report and pooled predictions") {
  TempFile report("cli_cv.json"), preds("cli_cv_preds.jsonl");
  std::string common = " --instances " + fixtures() + "/instances.jsonl --truth " +
                       fixtures() + "/truth.jsonl";
  int rc = run("cv" + common + " --model-kind rf-reg --trees 20 --max-depth 8"
               " --top-k 20 --k 4 --out " + report.path + " --predictions " + preds.path);
  CHECK(rc == 0);

  auto rep = nlohmann::json::parse(slurp(report.path));
  REQUIRE(rep["folds"].size() == 4);
  CHECK(rep.contains("mean"));
  CHECK(rep["mean"].contains("mse_vs_mean"));
  CHECK(rep["mean"].contains("mse_vs_binary"));
  CHECK(rep.contains("error_report"));
  CHECK(count_lines(slurp(preds.path)) == 20);

  CHECK(run("cv" + common + " --k 1") == 2);
}

TEST_CASE("cv predictions are identical for a repeated seed") {
  TempFile a("cli_cv_a.jsonl"), b("cli_cv_b.jsonl");
  std::string base = "cv --instances " + fixtures() + "/instances.jsonl --truth " +
                     fixtures() + "/truth.jsonl --model-kind rf-reg --trees 15"
                     " --max-depth 6 --k 4 --seed 7 --out /dev/null --predictions ";
  CHECK(run(base + a.path + " --jobs 1") == 0);
  CHECK(run(base + b.path + " --jobs 4") == 0);
  CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("print-config dumps the effective settings as JSON") {
  TempFile out("cli_config.json");
  int rc = run("cv --instances i.jsonl --truth t.jsonl --k 3 --seed 9 --print-config",
               out.path);
  CHECK(rc == 0);
  auto cfg = nlohmann::json::parse(slurp(out.path));
  CHECK(cfg["k"] == 3);
  CHECK(cfg["seed"] == 9);
  CHECK(cfg["model-kind"] == "rf-reg");
}
