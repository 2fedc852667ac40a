#include <gtest/gtest.h>

#include "hermiwitt/errors.hpp"
#include "hermiwitt/json_io.hpp"
#include "hermiwitt/sampling.hpp"

using namespace hermiwitt;

namespace {
const FieldContext& F(long p, int n = 32) { return FieldContext::get(p, n); }
}  // namespace

TEST(JsonIO, FValueForms) {
  const auto& c = F(5, 10);
  EXPECT_EQ(padic_from_json(c, json(7)), Padic(c, 7));
  EXPECT_EQ(padic_from_json(c, json("-3")), Padic(c, -3));
  EXPECT_EQ(padic_from_json(c, json("1/5")), Padic::rational(c, 1, 5));
  // 7 = 2 + 1*5
  json seven = to_json(Padic(c, 7));
  EXPECT_EQ(seven.at("val"), 0);
  EXPECT_EQ(seven.at("digits").size(), 10u);
  EXPECT_EQ(seven.at("digits")[0], 2);
  EXPECT_EQ(seven.at("digits")[1], 1);
  EXPECT_EQ(padic_from_json(c, json{{"base", "F"}, {"val", 1}, {"digits", {3}}}), Padic(c, 15).with_precision(2));
  json z = to_json(Padic::zero(c, 6));
  EXPECT_TRUE(z.at("digits").empty());
  EXPECT_EQ(z.at("val"), 6);
  EXPECT_EQ(padic_from_json(c, z).precision(), 6);
}

TEST(JsonIO, Malformed) {
  const auto& c = F(5, 10);
  EXPECT_THROW(padic_from_json(c, json("x1")), MalformedInput);
  EXPECT_THROW(padic_from_json(c, json("1/0")), MalformedInput);
  EXPECT_THROW(padic_from_json(c, json{{"val", 0}, {"digits", {7}}}), MalformedInput);
  EXPECT_THROW(padic_from_json(c, json{{"val", 0}, {"digits", {0, 1}}}), MalformedInput);
  EXPECT_THROW(padic_from_json(c, json{{"base", "L"}, {"val", 0}, {"digits", {1}}}), MalformedInput);
  EXPECT_THROW(dmatrix_from_json(c, json::array({json::array({1}), json::array({1, 2})})), MalformedInput);
  EXPECT_THROW(form_from_json(c, json{{"epsilon", 2}, {"gram", {{1}}}}), MalformedInput);
  EXPECT_THROW(endo_parameter_from_json(json{{"epsilon", 1}}), MalformedInput);
  EXPECT_THROW(witt_class_from_json(1, json::array({"g1", "gq"})), InvalidParameter);
}

TEST(JsonIO, RoundTrips) {
  for (long p : {3L, 13L}) {
    const auto& c = F(p);
    Sampler s(c, 3);
    for (int i = 0; i < 100; ++i) {
      Padic x = s.maybe_zero(-3, 3);
      Padic y = padic_from_json(c, to_json(x));
      EXPECT_EQ(y, x);
      EXPECT_EQ(y.precision(), x.precision());
      Quat q = s.quat(-2, 2);
      EXPECT_EQ(quat_from_json(c, to_json(q)), q);
      EXPECT_EQ(to_json(quat_from_json(c, to_json(q))), to_json(q));
    }
    HermitianForm h = s.form(-1, 3);
    HermitianForm back = form_from_json(c, to_json(h));
    EXPECT_EQ(back.epsilon, -1);
    EXPECT_EQ(back.gram, h.gram);
  }
}

TEST(JsonIO, EndoDocuments) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; ++i) {
    EndoParameter fm = random_parameter(rng, i % 2 ? 1 : -1);
    json j = to_json(fm);
    EndoParameter back = endo_parameter_from_json(j);
    EXPECT_EQ(to_json(back), j);
    EXPECT_TRUE(validate(back).ok);
    EXPECT_EQ(lift(back), lift(fm));
  }
  // "token" as beta refers to the entry's own token
  json doc = R"({"epsilon":1,"ambient":{"m":1,"h_class":["g1"]},
    "support":[{"id":"a","kind":"simple_nonnull","degree":2,"f1":0,"e_parity":0,"f_parity":0,
                "min_tr":"m0","odd_trace":["g1"],"f2":{"beta":"token","tower":{"diman":1,"selector":0}}}]})"_json;
  EndoParameter fm = endo_parameter_from_json(doc);
  EXPECT_EQ(fm.support[0].f2.beta, std::optional<std::string>("a"));
  EXPECT_TRUE(validate(fm).ok);
  doc["support"][0]["f2"]["tower"]["diman"] = 3;
  EXPECT_THROW(endo_parameter_from_json(doc), MalformedInput);
}
