#include <gtest/gtest.h>

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lipkit/lipkit.h"

#ifndef LIPKIT_DATA_DIR
#error "LIPKIT_DATA_DIR must be defined"
#endif

namespace {

std::string data(const char* name) { return std::string(LIPKIT_DATA_DIR) + "/" + name; }

std::vector<double> column(const lk_result* r, const char* name) {
  for (size_t j = 0; j < lk_result_columns(r); ++j)
    if (std::string(lk_result_column_name(r, j)) == name) {
      const double* c = lk_result_column(r, j);
      return {c, c + lk_result_rows(r)};
    }
  return {};
}

}  // namespace

TEST(CApi, SpacesAndDistances) {
  lk_space* s = nullptr;
  const double coords[] = {0, 0, 3, 4};
  ASSERT_EQ(lk_space_from_points(2, 2, coords, &s), LK_OK);
  double d = 0;
  ASSERT_EQ(lk_space_dist(s, 0, 1, &d), LK_OK);
  EXPECT_DOUBLE_EQ(d, 5.0);
  EXPECT_EQ(lk_space_dist(s, 0, 7, &d), LK_ERR_OUT_OF_RANGE);
  EXPECT_NE(std::string(lk_last_error()), "");
  lk_space_free(s);

  ASSERT_EQ(lk_space_from_grid(0, 2, 0.5, &s), LK_OK);
  EXPECT_EQ(lk_space_size(s), 5u);
  lk_space_free(s);

  const double bad[] = {0, 1, 5, 1, 0, 1, 5, 1, 0};
  ASSERT_EQ(lk_space_from_matrix(3, bad, &s), LK_OK);
  lk_params p;
  lk_params_init(&p);
  lk_result* r = nullptr;
  ASSERT_EQ(lk_validate_metric(s, &p, &r), LK_OK);
  EXPECT_FALSE(lk_result_passed(r));
  EXPECT_GT(lk_result_rows(r), 0u);
  lk_result_free(r);
  lk_space_free(s);
}

TEST(CApi, ExtendGridExample) {
  lk_space* s = nullptr;
  ASSERT_EQ(lk_space_load(data("grid.json").c_str(), &s), LK_OK);
  const std::string subset = data("subset.json"), values = data("phi.csv");
  lk_inputs in{};
  in.subset = subset.c_str();
  in.values = values.c_str();
  lk_params p;
  lk_params_init(&p);
  p.k = 1.0;
  lk_result* r = nullptr;
  ASSERT_EQ(lk_extend(s, &in, &p, &r), LK_OK) << lk_last_error();
  EXPECT_TRUE(lk_result_passed(r));
  EXPECT_EQ(lk_result_rows(r), 5u);
  EXPECT_EQ(column(r, "lower"), (std::vector<double>{0, 0.5, 1, 0.5, 0}));
  EXPECT_EQ(column(r, "upper"), (std::vector<double>{0, 0.5, 1, 1.5, 2}));
  const auto doc = nlohmann::json::parse(lk_result_certificate(r));
  EXPECT_EQ(doc["command"], "extend");
  EXPECT_TRUE(doc["pass"].get<bool>());
  lk_result_free(r);
  lk_space_free(s);
}

TEST(CApi, ErrorsAreReported) {
  lk_space* s = nullptr;
  EXPECT_EQ(lk_space_load(data("missing.json").c_str(), &s), LK_ERR_IO);
  ASSERT_EQ(lk_space_load(data("grid.json").c_str(), &s), LK_OK);
  const std::string subset = data("subset.json"), values = data("phi.csv");
  lk_inputs in{};
  in.subset = subset.c_str();
  in.values = values.c_str();
  lk_params p;
  lk_params_init(&p);
  lk_result* r = nullptr;
  EXPECT_EQ(lk_extend(s, &in, &p, &r), LK_ERR_INVALID_ARGUMENT);  // no K
  p.k = 1.0;
  p.tol = 1e-2;
  EXPECT_EQ(lk_extend(s, &in, &p, &r), LK_ERR_INVALID_ARGUMENT);
  p.tol = 1e-9;
  p.k = 0.5;
  EXPECT_EQ(lk_extend(s, &in, &p, &r), LK_ERR_PRECONDITION);
  size_t w[4];
  ASSERT_EQ(lk_last_error_witness(w, 4), 2u);
  EXPECT_EQ(w[0], 0u);
  EXPECT_EQ(w[1], 2u);
  EXPECT_EQ(lk_certify("nonsense", s, &in, &p, &r), LK_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(lk_demo("nonsense", &r), LK_ERR_INVALID_ARGUMENT);
  lk_space_free(s);
}

TEST(CApi, Demos) {
  for (const char* name : {"sin-inv-t", "cusp-curve", "reciprocal-staircase", "dowker-step"}) {
    lk_result* r = nullptr;
    ASSERT_EQ(lk_demo(name, &r), LK_OK) << name << ": " << lk_last_error();
    EXPECT_TRUE(lk_result_passed(r)) << name;
    EXPECT_GT(lk_result_rows(r), 0u);
    lk_result_free(r);
  }
  lk_result* r = nullptr;
  ASSERT_EQ(lk_demo("reciprocal-staircase", &r), LK_OK);
  const auto t = column(r, "t"), sum = column(r, "sum");
  ASSERT_EQ(t, (std::vector<double>{0.4, 0.5, 2}));
  for (size_t i = 0; i < t.size(); ++i) EXPECT_EQ(sum[i], 1 / t[i]);
  lk_result_free(r);
}

TEST(CApi, CertifyFailureIsAResultNotAnError) {
  lk_space* s = nullptr;
  ASSERT_EQ(lk_space_load(data("grid.json").c_str(), &s), LK_OK);
  const std::string values = data("square.csv");
  lk_inputs in{};
  in.values = values.c_str();
  lk_params p;
  lk_params_init(&p);
  p.k = 1.0;
  lk_result* r = nullptr;
  ASSERT_EQ(lk_certify("lipschitz", s, &in, &p, &r), LK_OK);
  EXPECT_FALSE(lk_result_passed(r));
  const auto doc = nlohmann::json::parse(lk_result_certificate(r));
  EXPECT_EQ(doc["summary"]["witness"].size(), 2u);
  lk_result_free(r);
  lk_space_free(s);
}
