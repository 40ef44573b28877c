// SPDX-License-Identifier: Apache-2.0
// Exercises the shared library through its C header only.
#include <cstring>
#include <filesystem>
#include <string>

#include <gtest/gtest.h>

#include "thinlayer/thinlayer.h"

namespace {

const char* kConfig =
    "[sweep]\n"
    "modes = 1\n"
    "lambda_max = 1\n"
    "eps = 0.04, 0.02, 0.01\n";

struct Handle {
  tl_session* s = nullptr;
  ~Handle() { tl_session_destroy(s); }
};

}  // namespace

TEST(CApi, VersionAndStatusStrings) {
  EXPECT_STREQ(tl_version(), "0.1.0");
  EXPECT_STREQ(tl_status_string(TL_OK), "ok");
  EXPECT_STREQ(tl_status_string(TL_ERR_CONFIG), "config error");
  EXPECT_STREQ(tl_status_string(static_cast<tl_status>(99)), "unknown status");
}

TEST(CApi, RunFromString) {
  Handle h;
  ASSERT_EQ(tl_session_create_from_string(kConfig, &h.s), TL_OK);
  EXPECT_STREQ(tl_session_report_json(h.s), "");
  int status = -1;
  ASSERT_EQ(tl_session_run(h.s, "verify", "", &status), TL_OK) << tl_session_last_error(h.s);
  EXPECT_EQ(status, 0);
  const std::string json = tl_session_report_json(h.s);
  EXPECT_NE(json.find("\"verdict\": \"Pass\""), std::string::npos);
  EXPECT_NE(std::string(tl_session_report_csv(h.s)).find("sample,"), std::string::npos);
}

TEST(CApi, OverridesAndErrors) {
  Handle h;
  ASSERT_EQ(tl_session_create_from_string(kConfig, &h.s), TL_OK);
  EXPECT_EQ(tl_session_set(h.s, "sweep.eps", "0.04, 0.05, 0.01"), TL_ERR_CONFIG);
  EXPECT_NE(std::strlen(tl_session_last_error(h.s)), 0u);
  EXPECT_EQ(tl_session_set(h.s, "nodot", "1"), TL_ERR_CONFIG);
  EXPECT_EQ(tl_session_set(h.s, "sweep.modes", nullptr), TL_ERR_ARGUMENT);
  EXPECT_EQ(tl_session_set(nullptr, "sweep.modes", "1"), TL_ERR_ARGUMENT);
  // a rejected override leaves the session unchanged
  EXPECT_NE(std::string(tl_session_config(h.s)).find("eps = 0.040000000000000001, 0.02, 0.01"), std::string::npos);
  ASSERT_EQ(tl_session_set(h.s, "sweep.lambda_max", "-1"), TL_OK);
  int status = -1;
  ASSERT_EQ(tl_session_run(h.s, "limit-spectrum", "", &status), TL_OK);
  EXPECT_GE(tl_session_warning_count(h.s), 1u);
  EXPECT_STREQ(tl_session_warning(h.s, 1000), "");
  EXPECT_EQ(tl_session_run(h.s, "bogus", "", &status), TL_ERR_CONFIG);
}

TEST(CApi, CreateFailures) {
  tl_session* s = reinterpret_cast<tl_session*>(0x1);
  EXPECT_EQ(tl_session_create_from_string("[geometry]\nr1 = 5\n", &s), TL_ERR_CONFIG);
  EXPECT_EQ(s, nullptr);
  EXPECT_NE(std::string(tl_last_create_error()).find("r1"), std::string::npos);
  EXPECT_EQ(tl_session_create_from_file("/nonexistent.ini", &s), TL_ERR_CONFIG);
  EXPECT_EQ(tl_session_create_from_file(nullptr, &s), TL_ERR_ARGUMENT);
  EXPECT_EQ(tl_session_create_from_string(kConfig, nullptr), TL_ERR_ARGUMENT);
}

TEST(CApi, InapplicableSeriesBecomesWarning) {
  Handle h;
  ASSERT_EQ(tl_session_create_from_string(kConfig, &h.s), TL_OK);
  // shifting j01^2 down to 0 puts 0 in the membrane spectrum, so the small series does not apply
  ASSERT_EQ(tl_session_set(h.s, "coefficients.a", "const -5.783185962946784"), TL_OK);
  ASSERT_EQ(tl_session_set(h.s, "sweep.modes", "0"), TL_OK);
  ASSERT_EQ(tl_session_set(h.s, "sweep.filter", "small"), TL_OK);
  int status = -1;
  const tl_status st = tl_session_run(h.s, "predict", "", &status);
  EXPECT_EQ(st, TL_OK);
  bool warned = false;
  for (size_t i = 0; i < tl_session_warning_count(h.s); ++i)
    warned |= std::string(tl_session_warning(h.s, i)).find("small series skipped") != std::string::npos;
  EXPECT_TRUE(warned);
}

TEST(CApi, WritesFiles) {
  Handle h;
  ASSERT_EQ(tl_session_create_from_string(kConfig, &h.s), TL_OK);
  const auto dir = std::filesystem::temp_directory_path() / "thinlayer_capi_test";
  std::filesystem::remove_all(dir);
  int status = -1;
  ASSERT_EQ(tl_session_run(h.s, "limit-spectrum", dir.c_str(), &status), TL_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "thinlayer.json"));
  EXPECT_TRUE(std::filesystem::exists(dir / "thinlayer.csv"));
  std::filesystem::remove_all(dir);
}
