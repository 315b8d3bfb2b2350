#include "mzmsim.h"

#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "mzm/errors.hpp"
#include "mzm/experiments.hpp"

struct mzm_result {
  std::string record;
  std::vector<std::pair<std::string, std::string>> artifacts;
};

namespace {

thread_local std::string g_last_error;

mzm_status fail(mzm_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

mzm_status guarded(const std::function<void()>& body) {
  try {
    body();
    g_last_error.clear();
    return MZM_OK;
  } catch (const mzm::ConfigError& e) {
    return fail(MZM_ERR_CONFIG, e.what());
  } catch (const mzm::NumericError& e) {
    return fail(MZM_ERR_NUMERIC, e.what());
  } catch (const mzm::VerifyError& e) {
    return fail(MZM_ERR_VERIFY, e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(MZM_ERR_CONFIG, e.what());
  } catch (const std::exception& e) {
    return fail(MZM_ERR_NUMERIC, e.what());
  }
}

}  // namespace

extern "C" {

const char* mzm_version(void) { return "1.0.0"; }

const char* mzm_last_error(void) { return g_last_error.c_str(); }

mzm_status mzm_validate_json(const char* config_json) {
  if (config_json == nullptr) return fail(MZM_ERR_USAGE, "null config");
  return guarded([&] {
    mzm::config_from_json(nlohmann::json::parse(config_json));
  });
}

mzm_status mzm_run_json(const char* config_json, mzm_result** out_result) {
  if (config_json == nullptr || out_result == nullptr) {
    return fail(MZM_ERR_USAGE, "null argument");
  }
  *out_result = nullptr;
  return guarded([&] {
    const mzm::ExperimentConfig config =
        mzm::config_from_json(nlohmann::json::parse(config_json));
    mzm::ExperimentRecord run = mzm::run_experiment(config);
    auto* result = new mzm_result;
    result->record = run.record.dump(2);
    result->artifacts.assign(run.artifacts.begin(), run.artifacts.end());
    *out_result = result;
  });
}

const char* mzm_result_record(const mzm_result* result) {
  return result ? result->record.c_str() : nullptr;
}

const char* mzm_result_artifact(const mzm_result* result, const char* name) {
  if (result == nullptr || name == nullptr) return nullptr;
  for (const auto& [key, value] : result->artifacts) {
    if (key == name) return value.c_str();
  }
  return nullptr;
}

int mzm_result_artifact_count(const mzm_result* result) {
  return result ? static_cast<int>(result->artifacts.size()) : 0;
}

const char* mzm_result_artifact_name(const mzm_result* result, int index) {
  if (result == nullptr || index < 0 ||
      index >= static_cast<int>(result->artifacts.size())) {
    return nullptr;
  }
  return result->artifacts[static_cast<std::size_t>(index)].first.c_str();
}

void mzm_result_release(mzm_result* result) { delete result; }

}  // extern "C"
