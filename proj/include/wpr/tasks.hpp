#ifndef WPR_TASKS_HPP
#define WPR_TASKS_HPP

#include <optional>
#include <string>
#include <vector>

#include "wpr/io.hpp"

namespace wpr::tasks {

using json = nlohmann::json;

inline constexpr const char* kSchema = "wprcert/1";
inline constexpr const char* kTool = "wprcert 1.0.0";

struct Overrides {
  std::optional<int> bound;
  std::optional<int> precision;
};

/// Tasks resolved to self-contained records: every ring, module and
/// sequence is inlined, every number is a decimal string.
struct Manifest {
  std::string origin;
  std::vector<json> tasks;
};

/// JSON with // and /* */ comments. Throws ParseError with line:column for
/// syntax errors and with the task or entry name for bad references.
Manifest parse_manifest(const std::string& text, const std::string& origin, const Overrides& overrides = {});
Manifest load_manifest(const std::string& path, const Overrides& overrides = {});

/// "certified", "determined", "undetermined", "failed" or "error".
struct TaskOutcome {
  std::string status;
  json result;
  std::string summary;
};

TaskOutcome run_task(const json& task);

/// 0 if every task is certified or determined, 1 on any failure or error, else 2.
int exit_code(const std::vector<TaskOutcome>& outcomes);

json certificate_file(const json& task, const TaskOutcome& outcome, const std::string& timestamp);
/// The file minus the timestamp, serialized deterministically.
std::string replay_region(const json& file);

/// Certified results are replayed from the stored witnesses; every other
/// result is recomputed from the task record and compared.
std::optional<std::string> verify_file(const json& file);
std::optional<std::string> verify_path(const std::string& path);

}  // namespace wpr::tasks

#endif
