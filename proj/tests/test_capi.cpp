#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mzmsim.h"

TEST_CASE("version and null-argument handling") {
  CHECK(std::strlen(mzm_version()) > 0);
  CHECK(mzm_validate_json(nullptr) == MZM_ERR_USAGE);
  CHECK(mzm_run_json(nullptr, nullptr) == MZM_ERR_USAGE);
  CHECK(std::strlen(mzm_last_error()) > 0);
}

TEST_CASE("validation maps config problems to MZM_ERR_CONFIG") {
  CHECK(mzm_validate_json("{\"experiment\":\"braid\"}") == MZM_OK);
  CHECK(mzm_validate_json("{\"experiment\":\"braid\",\"t\":-1}") ==
        MZM_ERR_CONFIG);
  CHECK(std::string(mzm_last_error()).find("t") != std::string::npos);
  CHECK(mzm_validate_json("{\"experiment\":\"warp\"}") == MZM_ERR_CONFIG);
  // the message lists the valid experiment names
  CHECK(std::string(mzm_last_error()).find("spectrum") != std::string::npos);
  CHECK(mzm_validate_json("not json at all") == MZM_ERR_CONFIG);
  CHECK(mzm_validate_json("{\"experiment\":\"braid\",\"frobs\":1}") ==
        MZM_ERR_CONFIG);
}

TEST_CASE("running the spectrum experiment through the C API") {
  mzm_result* result = nullptr;
  REQUIRE(mzm_run_json("{\"experiment\":\"spectrum\"}", &result) == MZM_OK);
  REQUIRE(result != nullptr);
  const nlohmann::json record = nlohmann::json::parse(mzm_result_record(result));
  CHECK(record.at("schema") == "mzmsim.record.v1");
  CHECK(record.at("config").at("experiment") == "spectrum");
  const auto& hams = record.at("payload").at("hamiltonians");
  REQUIRE(hams.size() == 3);
  for (const auto& h : hams) CHECK(h.at("match") == true);
  CHECK(mzm_result_artifact_count(result) == 0);
  mzm_result_release(result);
}

TEST_CASE("braid run produces the bloch.csv artifact") {
  mzm_result* result = nullptr;
  REQUIRE(mzm_run_json("{\"experiment\":\"braid\",\"t\":5}", &result) == MZM_OK);
  const char* csv = mzm_result_artifact(result, "bloch.csv");
  REQUIRE(csv != nullptr);
  const std::string text(csv);
  CHECK(text.rfind("label,p1_init,p2_init,p3_init,p1_final,p2_final,p3_final",
                   0) == 0);
  CHECK(text.find("+X") != std::string::npos);
  CHECK(mzm_result_artifact(result, "missing.csv") == nullptr);
  CHECK(mzm_result_artifact_count(result) == 1);
  CHECK(std::string(mzm_result_artifact_name(result, 0)) == "bloch.csv");

  const nlohmann::json record = nlohmann::json::parse(mzm_result_record(result));
  const double phase =
      record.at("payload").at("exchange").at("relative_phase").get<double>();
  CHECK(std::abs(std::abs(phase) - 1.5707963267948966) < 1e-3);
  mzm_result_release(result);
}

TEST_CASE("identical config and seed give byte-identical payloads") {
  const char* config =
      "{\"experiment\":\"tomography\",\"t\":5,\"shots\":10000,\"seed\":7}";
  std::string payloads[2];
  for (int k = 0; k < 2; ++k) {
    mzm_result* result = nullptr;
    REQUIRE(mzm_run_json(config, &result) == MZM_OK);
    const nlohmann::json record =
        nlohmann::json::parse(mzm_result_record(result));
    payloads[k] = record.at("payload").dump();
    mzm_result_release(result);
  }
  CHECK(payloads[0] == payloads[1]);
  CHECK(!payloads[0].empty());
}

TEST_CASE("numeric failures surface as MZM_ERR_NUMERIC") {
  // leakage is validated, so a bad value is a config error, not numeric
  CHECK(mzm_validate_json("{\"experiment\":\"lower\",\"leakage\":1.0}") ==
        MZM_ERR_CONFIG);
}
