// mzmsim command-line harness. Talks to the core exclusively through the
// C API in mzmsim.h; exit codes mirror mzm_status.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mzmsim.h"

namespace {

namespace fs = std::filesystem;

// Whole-file atomic write: write to a sibling temp file, then rename.
bool atomic_write(const fs::path& path, const std::string& contents,
                  std::string& error) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      error = "cannot open " + tmp.string();
      return false;
    }
    out << contents;
    if (!out.flush()) {
      error = "write failed for " + tmp.string();
      return false;
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    error = "rename failed for " + path.string() + ": " + ec.message();
    return false;
  }
  return true;
}

int fail(mzm_status status) {
  std::cerr << "error: " << mzm_last_error() << "\n";
  return static_cast<int>(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana exchange simulator"};
  app.set_version_flag("--version", std::string(mzm_version()));

  std::string experiment;
  double t = 0.0;
  std::string shots;
  long long seed = -1;
  double leakage = -1.0;
  std::string kind;
  int trials = 0;
  bool trace = false;
  std::string out_dir = ".";
  std::string config_path;
  bool validate_only = false;

  app.add_option("--experiment", experiment,
                 "braid | tomography | noise | lower | spectrum | "
                 "ite-convergence");
  app.add_option("--t", t, "imaginary-time duration (default 5)");
  app.add_option("--shots", shots, "shot count, or 'exact' (default exact)");
  app.add_option("--seed", seed, "RNG seed (default 12345)");
  app.add_option("--leakage", leakage,
                 "residual dissipation leakage in [0, 1) (default 0)");
  app.add_option("--kind", kind, "noise kind: flip | phase (default flip)");
  app.add_option("--trials", trials,
                 "lowering verification trials (default 100)");
  app.add_flag("--trace", trace, "emit per-stage pipeline trace");
  app.add_option("--out", out_dir, "output directory (default .)");
  app.add_option("--config", config_path, "JSON config file (flags override)");
  app.add_flag("--validate", validate_only,
               "validate the config and exit without running");

  CLI11_PARSE(app, argc, argv);

  nlohmann::json config = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read config file " << config_path << "\n";
      return static_cast<int>(MZM_ERR_CONFIG);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      config = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::exception& e) {
      std::cerr << "error: config parse failure: " << e.what() << "\n";
      return static_cast<int>(MZM_ERR_CONFIG);
    }
  }
  if (app.count("--experiment")) config["experiment"] = experiment;
  if (app.count("--t")) config["t"] = t;
  if (app.count("--shots")) {
    if (shots == "exact") {
      config["shots"] = "exact";
    } else {
      try {
        config["shots"] = std::stol(shots);
      } catch (const std::exception&) {
        std::cerr << "error: --shots expects an integer or 'exact'\n";
        return static_cast<int>(MZM_ERR_CONFIG);
      }
    }
  }
  if (app.count("--seed")) config["seed"] = seed;
  if (app.count("--leakage")) config["leakage"] = leakage;
  if (app.count("--kind")) config["kind"] = kind;
  if (app.count("--trials")) config["trials"] = trials;
  if (trace) config["trace"] = true;

  const std::string config_text = config.dump();
  if (validate_only) {
    const mzm_status status = mzm_validate_json(config_text.c_str());
    if (status != MZM_OK) return fail(status);
    std::cout << "config valid\n";
    return 0;
  }

  mzm_result* result = nullptr;
  const mzm_status status = mzm_run_json(config_text.c_str(), &result);
  if (status != MZM_OK) return fail(status);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create output directory " << out_dir << ": "
              << ec.message() << "\n";
    mzm_result_release(result);
    return static_cast<int>(MZM_ERR_CONFIG);
  }

  std::string write_error;
  bool ok = atomic_write(fs::path(out_dir) / "record.json",
                         std::string(mzm_result_record(result)) + "\n",
                         write_error);
  const int artifact_count = mzm_result_artifact_count(result);
  for (int k = 0; ok && k < artifact_count; ++k) {
    const char* name = mzm_result_artifact_name(result, k);
    const char* contents = mzm_result_artifact(result, name);
    ok = atomic_write(fs::path(out_dir) / name, contents, write_error);
  }
  mzm_result_release(result);
  if (!ok) {
    std::cerr << "error: " << write_error << "\n";
    return static_cast<int>(MZM_ERR_CONFIG);
  }
  std::cout << "wrote " << (fs::path(out_dir) / "record.json").string() << "\n";
  return 0;
}
