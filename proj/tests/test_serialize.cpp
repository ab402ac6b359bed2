#include "doctest.h"

#include "ks8/seeker.hpp"
#include "ks8/serialize.hpp"
#include "ks8/transformer.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace ks8;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST_CASE("seed JSON matches the golden rank-1 table") {
  const auto& s = kp_seed_sets().front();
  CHECK(ks_set_to_json(s).dump(2) + "\n" == read_file(KS8_GOLDEN_DIR "/ref_seed.json"));
}

TEST_CASE("KS set JSON round trips") {
  // every seed, plus a random sample of mixed transforms of a few seeds
  std::vector<KSSet> sets = kp_seed_sets();
  EnumerateOptions opts;
  opts.skip_steps = {3, 5};
  std::mt19937 rng(3);
  for (std::size_t i = 0; i < 64; i += 21)
    enumerate_transforms(kp_seed_sets()[i], opts, [&](const KSSet& t, const auto&) {
      if (rng() % 50 == 0) sets.push_back(t);
    });
  REQUIRE(sets.size() > 64);
  for (const auto& s : sets) {
    const auto j = ks_set_to_json(s);
    const auto back = ks_set_from_json(json::parse(j.dump()), kp_catalog());
    CHECK(back == s);
    CHECK(back.profile == s.profile);
    CHECK(ks_set_to_json(back) == j);
  }
}

TEST_CASE("catalog JSON round trips") {
  const auto j = catalog_to_json(kp_catalog());
  CHECK(j["rays"].size() == 40);
  CHECK(j["rays"][39]["coords"] == "0110100-");
  CHECK(j["bases"][0]["kind"] == "pure");
  CHECK(j["bases"][5]["kind"] == "hybrid");
  CHECK(catalog_from_json(json::parse(j.dump())) == kp_catalog());
}

TEST_CASE("KS set text format") {
  const auto t = parse_ks_set_text("1: (1,7) (2, 8) (3,4) (5,6)\n# comment\n6: 1 2 (3,4) 13 14 15 16\n",
                                   kp_catalog());
  REQUIRE(t.bases.size() == 2);
  CHECK(t.bases[0].kind == BasisKind::Pure);
  CHECK(t.bases[0].projectors.size() == 4);
  CHECK(t.bases[1].kind == BasisKind::Hybrid);
  CHECK(t.bases[1].total_rank() == 8);
  CHECK(format_ks_set_text(t) == "1: (1,7) (2,8) (3,4) (5,6)\n6: 1 2 (3,4) 13 14 15 16\n");
  CHECK(parse_ks_set_text(format_ks_set_text(t), kp_catalog()) == t);

  CHECK_THROWS_AS(parse_ks_set_text("", kp_catalog()), std::invalid_argument);
  CHECK_THROWS_AS(parse_ks_set_text("1 2 3\n", kp_catalog()), std::invalid_argument);
  CHECK_THROWS_AS(parse_ks_set_text("1: (1,9)\n", kp_catalog()), std::invalid_argument);
  CHECK_THROWS_AS(parse_ks_set_text("1: 77\n", kp_catalog()), std::invalid_argument);
  CHECK_THROWS_AS(parse_ks_set_text("1: (1,7\n", kp_catalog()), std::invalid_argument);
}

TEST_CASE("malformed JSON is rejected") {
  CHECK_THROWS(ks_set_from_json(json::parse(R"({"bases":[{"index":1,"kind":"odd","projectors":[[1]]}]})"),
                                kp_catalog()));
  CHECK_THROWS(ks_set_from_json(json::parse(R"({"bases":[{"index":1,"projectors":[[1,9]]}]})"),
                                kp_catalog()));
  CHECK_THROWS(ks_set_from_json(json::parse(R"({"nobases":[]})"), kp_catalog()));
}

TEST_CASE("step choice JSON") {
  const StepChoice c{1, {{{1, 7}, {2, 8}, {3, 4}, {5, 6}}}, true,
                     std::array<RayPair, 2>{RayPair{1, 2}, RayPair{3, 5}}};
  CHECK(choice_to_json(c).dump() ==
        R"({"match":[[1,7],[2,8],[3,4],[5,6]],"r3":true,"r3_pairs":[[1,2],[3,5]],"step":1})");
}
