#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ncop/io.hpp"
#include "ncop/random.hpp"

using ncop::Complex;
using ncop::Word;
using ncop::io::Json;

namespace {

std::string schema_key(const Json& j, ncop::MomentFunctional (*reader)(const Json&)) {
  try {
    (void)reader(j);
  } catch (const ncop::io::SchemaError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST(Io, MomentRoundTrip) {
  ncop::Rng rng(83);
  const auto f = ncop::random_representation(rng, 2, 4, 4);
  const auto g = ncop::io::moments_from_json(Json::parse(ncop::io::moments_to_json(f).dump()));
  EXPECT_EQ(g.n_generators(), 2);
  EXPECT_EQ(g.max_degree(), 4);
  EXPECT_EQ(g.moments(), f.moments());
}

TEST(Io, MomentFileLiteral) {
  const auto j = Json::parse(R"({"n_generators": 1, "kind": "hankel", "max_degree": 2,
                                 "moments": {"e": [1, 0], "1": [0, 0], "1.1": [1, 0]}})");
  const auto f = ncop::io::moments_from_json(j);
  EXPECT_EQ(f.moment(Word{1, 1}), Complex(1.0));
}

TEST(Io, MomentSchemaErrorsNameKey) {
  auto base = Json::parse(R"({"n_generators": 1, "kind": "hankel", "max_degree": 2,
                              "moments": {"e": [1, 0], "1": [0, 0], "1.1": [1, 0]}})");
  auto j = base;
  j.erase("kind");
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "kind");
  j = base;
  j["moments"]["1.1"] = 3;
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "moments.1.1");
  j = base;
  j["moments"]["1..2"] = {0, 0};
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "moments.1..2");
  j = base;
  j["moments"]["2"] = {0, 0};
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "moments.2");
  j = base;
  j["max_degree"] = "two";
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "max_degree");
  j = base;
  j["kind"] = "weird";
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "kind");
  j = base;
  j["kernel"] = Json::object();
  EXPECT_EQ(schema_key(j, ncop::io::moments_from_json), "kernel");
}

TEST(Io, GenericKernelRoundTrip) {
  const auto j = Json::parse(R"({"n_generators": 1, "kind": "generic", "max_degree": 1, "moments": {},
                                 "kernel": {"e|e": [1, 0], "e|1": [0, 0.5], "1|1": [2, 0]}})");
  const auto f = ncop::io::moments_from_json(j);
  EXPECT_EQ(ncop::kernel_entry(f, Word{1}, Word{}), Complex(0.0, -0.5));
  const auto back = ncop::io::moments_from_json(ncop::io::moments_to_json(f));
  EXPECT_EQ(back.kernel(), f.kernel());
}

TEST(Io, BasisRoundTrip) {
  ncop::Rng rng(89);
  const auto b = ncop::orthogonalize(ncop::random_representation(rng, 2, 8, 4), 2);
  const auto back = ncop::io::basis_from_json(Json::parse(ncop::io::basis_to_json(b).dump()));
  EXPECT_EQ(back.coeffs(), b.coeffs());
  auto j = Json::parse(R"({"level": 1, "coeffs": {"e": {"e": [1, 0]}, "1": {"e": [0, 0], "1": [1, 0]}}})");
  EXPECT_EQ(ncop::io::basis_from_json(j).n_generators(), 1);
  j["coeffs"]["1"].erase("1");
  try {
    (void)ncop::io::basis_from_json(j);
    FAIL();
  } catch (const ncop::io::SchemaError& e) {
    EXPECT_EQ(e.key(), "coeffs.1");
  }
}

TEST(Io, CoeffsRoundTrip) {
  ncop::Rng rng(97);
  const auto f = ncop::random_representation(rng, 2, 8, 4);
  const auto rc = ncop::extract(f, ncop::orthogonalize(f, 2), 2);
  auto j = ncop::io::coeffs_to_json(rc);
  const auto back = ncop::io::coeffs_from_json(Json::parse(j.dump()));
  for (int n = 0; n < 2; ++n)
    for (int k = 1; k <= 2; ++k) {
      EXPECT_EQ(back.a(n, k), rc.a(n, k));
      EXPECT_EQ(back.b(n, k), rc.b(n, k));
    }
  j["B"]["1,2"].erase(0);
  try {
    (void)ncop::io::coeffs_from_json(j);
    FAIL();
  } catch (const ncop::io::SchemaError& e) {
    EXPECT_EQ(e.key(), "B.1,2");
  }
  j = ncop::io::coeffs_to_json(rc);
  j["A"]["5,1"] = Json::array();
  try {
    (void)ncop::io::coeffs_from_json(j);
    FAIL();
  } catch (const ncop::io::SchemaError& e) {
    EXPECT_EQ(e.key(), "A.5,1");
  }
}

TEST(Io, PointRoundTrip) {
  ncop::Rng rng(101);
  const auto w = ncop::random_siegel_point(rng, 3, 2, 0.2);
  const auto back = ncop::io::point_from_json(Json::parse(ncop::io::point_to_json(w).dump()));
  EXPECT_EQ(back.region(), ncop::Region::siegel);
  for (int k = 1; k <= 3; ++k) EXPECT_EQ(back[k], w[k]);
  auto j = ncop::io::point_to_json(w);
  j["region"] = "disk";
  try {
    (void)ncop::io::point_from_json(j);
    FAIL();
  } catch (const ncop::io::SchemaError& e) {
    EXPECT_EQ(e.key(), "region");
  }
  j = ncop::io::point_to_json(w);
  j["matrices"][1][0][1] = Json::array({1});
  try {
    (void)ncop::io::point_from_json(j);
    FAIL();
  } catch (const ncop::io::SchemaError& e) {
    EXPECT_EQ(e.key(), "matrices[1][0][1]");
  }
}
