#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include <unistd.h>

#include "test_support.hpp"
#include "umeb/document.hpp"

namespace {

using namespace umeb;
using namespace umeb::testing;
using io::Json;
using io::MalformedDocument;

std::vector<BasisSet> every_kind() {
  std::vector<BasisSet> out;
  for (auto name : fixtures::names()) out.push_back(fixtures::by_name(name));
  out.push_back(theorem1_construct(fixtures::holes5x6_pattern()));
  out.push_back(theorem2_construct(PartitionSpec(3, 10, {4, 5})));
  out.push_back(compose_direct_sum(theorem2_construct(PartitionSpec(3, 5, {4})),
                                   theorem2_construct(PartitionSpec(3, 5, {4})), 5));
  out.emplace_back(2, 3);
  return out;
}

TEST(Document, SaveLoadSaveIsByteIdentical) {
  for (const auto& b : every_kind()) {
    const auto text = io::save_basis(b);
    EXPECT_EQ(io::save_basis(io::load_basis(text)), text);
  }
}

TEST(Document, LoadReproducesCoefficientsExactly) {
  for (const auto& b : every_kind()) {
    const auto back = io::load_basis(io::save_basis(b));
    ASSERT_EQ(back.size(), b.size());
    EXPECT_EQ(back.labels(), b.labels());
    for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(back[i].coeffs(), b[i].coeffs());
  }
}

TEST(Document, RandomCoefficientsSurviveExactly) {
  std::mt19937_64 rng(41);
  BasisSet b(3, 4);
  for (int i = 0; i < 10; ++i) b.add(random_state(3, 4, rng), {i});
  const auto back = io::load_basis(io::save_basis(b));
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(back[i].coeffs(), b[i].coeffs());
}

TEST(Document, ProvenanceRoundTrips) {
  for (const auto& b : every_kind()) EXPECT_EQ(io::load_basis(io::save_basis(b)).provenance(), b.provenance());
}

TEST(Document, SchemaFields) {
  const auto j = Json::parse(io::save_basis(fixtures::parts3x10_45()));
  EXPECT_EQ(j.at("format_version"), "1");
  EXPECT_EQ(j.at("d"), 3);
  EXPECT_EQ(j.at("d_prime"), 10);
  EXPECT_EQ(j.at("construction").at("kind"), "fixture");
  EXPECT_EQ(j.at("states").size(), 27u);
  EXPECT_EQ(j.at("states")[0].at("coeffs").size(), 30u);
}

TEST(Document, MalformedInputsThrow) {
  const auto good = Json::parse(io::save_basis(fixtures::umeb_2x3()));
  auto mutate = [&](auto f) {
    Json j = good;
    f(j);
    return j.dump();
  };
  const std::vector<std::string> bad{
      "not json",
      "[]",
      mutate([](Json& j) { j.erase("format_version"); }),
      mutate([](Json& j) { j["format_version"] = "2"; }),
      mutate([](Json& j) { j.erase("d"); }),
      mutate([](Json& j) { j["d"] = 4; }),
      mutate([](Json& j) { j["d_prime"] = "three"; }),
      mutate([](Json& j) { j.erase("construction"); }),
      mutate([](Json& j) { j["construction"]["kind"] = "magic"; }),
      mutate([](Json& j) { j["states"] = 5; }),
      mutate([](Json& j) { j["states"][0]["coeffs"].erase(0); }),
      mutate([](Json& j) { j["states"][0]["coeffs"][0] = Json::array({1.0}); }),
      mutate([](Json& j) { j["states"][0]["coeffs"][0] = Json::array({"x", 0.0}); }),
      mutate([](Json& j) { j["states"][0].erase("label"); }),
      mutate([](Json& j) { j["states"][0].erase("coeffs"); }),
  };
  for (const auto& text : bad) EXPECT_THROW(io::load_basis(text), MalformedDocument) << text.substr(0, 80);
}

TEST(Document, UnnormalizedStatesStillLoad) {
  auto j = Json::parse(io::save_basis(fixtures::umeb_2x3()));
  j["states"][0]["coeffs"][0] = Json::array({5.0, 0.0});
  const auto b = io::load_basis(j.dump());
  EXPECT_FALSE(b[0].is_normalized());
}

TEST(Document, MissingFileIsMalformed) {
  EXPECT_THROW(io::read_basis_file("/nonexistent/dir/basis.json"), MalformedDocument);
}

TEST(Document, FileRoundTrip) {
  const auto path = (std::filesystem::temp_directory_path() / ("umeb_doc_" + std::to_string(::getpid()) + ".json"));
  io::write_basis_file(path.string(), fixtures::holes5x6());
  const auto back = io::read_basis_file(path.string());
  std::filesystem::remove(path);
  EXPECT_EQ(io::save_basis(back), io::save_basis(fixtures::holes5x6()));
}

TEST(Report, CarriesVerdictConfigAndSeed) {
  VerifyConfig cfg;
  cfg.seed = 1234;
  cfg.oracle_restarts = 4;
  const auto j = io::report_to_json(verify_umeb(fixtures::holes5x6(), cfg));
  EXPECT_EQ(j.at("verdict"), "UMEB");
  EXPECT_EQ(j.at("config").at("seed"), 1234);
  EXPECT_EQ(j.at("config").at("oracle_restarts"), 4);
  EXPECT_EQ(j.at("member_count"), 25);
  EXPECT_EQ(j.at("complement_dim"), 5);
  EXPECT_EQ(j.at("complement_column_support"), Json::array({1, 3, 5}));
  EXPECT_EQ(j.at("complement_generic_rank"), 3);
  EXPECT_TRUE(j.at("structural_unextendible").get<bool>());
  EXPECT_TRUE(j.at("orthonormality").at("pass").get<bool>());
  EXPECT_TRUE(j.at("max_entanglement").at("pass").get<bool>());
  EXPECT_LT(j.at("numeric_oracle_max_sigma_min").get<double>(), 1.0);
  EXPECT_FALSE(j.contains("qualifier"));
}

TEST(Report, MebHasNullFreeComplement) {
  const auto j = io::report_to_json(verify_umeb(fixtures::bell_2x2()));
  EXPECT_EQ(j.at("verdict"), "MEB");
  EXPECT_EQ(j.at("complement_dim"), 0);
}

TEST(Report, NotOrthonormalHasNullComplement) {
  auto b = fixtures::umeb_2x3();
  b.add(b[0], {5});
  const auto j = io::report_to_json(verify_umeb(b));
  EXPECT_EQ(j.at("verdict"), "NOT_ORTHONORMAL");
  EXPECT_TRUE(j.at("complement_dim").is_null());
}

}  // namespace
