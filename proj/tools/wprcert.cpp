#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "wpr/errors.hpp"
#include "wpr/tasks.hpp"

namespace fs = std::filesystem;
using namespace wpr::tasks;

namespace {

std::string utc_now() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

std::string file_name(size_t index, const std::string& name) {
  std::string clean;
  for (char c : name) clean += std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ? c : '_';
  std::ostringstream s;
  s << std::setw(2) << std::setfill('0') << index << "-" << clean << ".json";
  return s.str();
}

void write_atomically(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

int run(const std::string& manifest_path, int jobs, const std::string& out_dir, const Overrides& overrides) {
  Manifest manifest;
  try {
    manifest = load_manifest(manifest_path, overrides);
  } catch (const wpr::Error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  }
  fs::create_directories(out_dir);
  const size_t n = manifest.tasks.size();
  std::vector<TaskOutcome> outcomes(n);
  std::vector<std::string> files(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k; (k = next++) < n;) {
      const json& task = manifest.tasks[k];
      TaskOutcome o = run_task(task);
      json file = certificate_file(task, o, utc_now());
      if (o.status == "certified") {
        if (auto f = verify_file(file)) {
          o = {"error", {{"error", {{"stage", "self-check"}, {"message", *f}}}}, "SELF-CHECK FAILED " + *f};
          file = certificate_file(task, o, utc_now());
        }
      }
      fs::path path = fs::path(out_dir) / file_name(k, task["name"].get<std::string>());
      write_atomically(path, file.dump(2) + "\n");
      files[k] = path.string();
      outcomes[k] = std::move(o);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (size_t k = 0; k < n; ++k) {
    const json& task = manifest.tasks[k];
    std::cout << "[" << k << "] " << task["name"].get<std::string>() << " (" << task["kind"].get<std::string>()
              << "): " << outcomes[k].status << "  " << outcomes[k].summary << "\n"
              << "    -> " << files[k] << "\n";
  }
  int code = exit_code(outcomes);
  std::cout << "exit " << code << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weak proregularity certificates"};
  app.require_subcommand(1);

  std::string manifest, out_dir = "wprcert-out", certificate;
  int jobs = 1;
  std::optional<int> bound, precision;
  auto* run_cmd = app.add_subcommand("run", "Run every task of a manifest");
  run_cmd->add_option("manifest", manifest, "Manifest file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--jobs", jobs, "Concurrent tasks")->check(CLI::PositiveNumber);
  run_cmd->add_option("--out", out_dir, "Directory for certificate files");
  run_cmd->add_option("--bound", bound, "Override every task bound")->check(CLI::PositiveNumber);
  run_cmd->add_option("--precision", precision, "Override every lambda precision")->check(CLI::NonNegativeNumber);

  auto* verify_cmd = app.add_subcommand("verify", "Replay a certificate file");
  verify_cmd->add_option("certificate", certificate, "Certificate file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  if (*run_cmd) return run(manifest, jobs, out_dir, Overrides{bound, precision});
  if (auto f = verify_path(certificate)) {
    std::cout << "REJECTED " << certificate << ": " << *f << "\n";
    return 1;
  }
  std::cout << "OK " << certificate << "\n";
  return 0;
}
