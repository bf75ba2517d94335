#include <gtest/gtest.h>

#include "test_support.hpp"

namespace morphfreq {
namespace {

using nlohmann::json;

json full_document(const Morphism& phi) {
  const Letter b = *phi.start();
  const auto cls = classify_letters(phi);
  const auto fv = letter_frequencies(phi, b, Rational(1, 10000));
  EstimateOptions opts;
  opts.tol = Rational(1, 100);
  opts.empirical_check = 10000;
  json doc = report::document(phi, {{"command", "test"}});
  doc["classification"] = report::classification(phi, cls);
  doc["letters"] = report::letters(phi, fv, cls);
  doc["factors"].push_back(report::factor(phi, estimate_frequency(phi, b, Word{b}, opts, fv, cls)));
  return doc;
}

TEST(Report, SkeletonHasSixKeys) {
  const Morphism m = testing::corpus("fibonacci");
  const json doc = report::document(m, json::object());
  EXPECT_EQ(doc.size(), 6U);
  for (const char* k : {"version", "morphism", "classification", "letters", "factors", "parameters"}) {
    EXPECT_TRUE(doc.contains(k)) << k;
  }
  EXPECT_TRUE(doc["classification"].is_null());
  EXPECT_TRUE(doc["factors"].is_array());
  EXPECT_EQ(doc["version"], kVersion);
}

TEST(Report, RationalsCarryExactAndDecimalForms) {
  const json r = report::rational(Rational(1, 3));
  EXPECT_EQ(r["exact"], "1/3");
  EXPECT_EQ(r["decimal"], "0.333333333333");
  EXPECT_EQ(report::rational(Rational(2))["exact"], "2/1");
  const json i = report::interval(Interval(Rational(1, 4), Rational(1, 2)));
  EXPECT_EQ(i["lo"]["exact"], "1/4");
  EXPECT_EQ(i["hi"]["decimal"], "0.500000000000");
}

TEST(Report, RoundTripsThroughParser) {
  for (const auto& name : testing::corpus_names()) {
    const Morphism m = testing::corpus(name);
    const std::string text = report::dump(full_document(m));
    const json back = json::parse(text);
    EXPECT_EQ(report::dump(back), text) << name;
    EXPECT_EQ(parse_morphism(back["morphism"]["text"].get<std::string>()), m);
  }
}

TEST(Report, Deterministic) {
  const Morphism m = testing::corpus("aba_b");
  EXPECT_EQ(report::dump(full_document(m)), report::dump(full_document(m)));
}

TEST(Report, ClassificationFields) {
  const Morphism m = testing::corpus("fib_marked");
  const json c = report::classification(m, classify_letters(m));
  EXPECT_EQ(c["bounded"], json::array({"c"}));
  EXPECT_EQ(c["unbounded"], json::array({"a", "b"}));
  EXPECT_EQ(c["k1"], 2);
  EXPECT_EQ(c["primitive"], false);
}

}  // namespace
}  // namespace morphfreq
