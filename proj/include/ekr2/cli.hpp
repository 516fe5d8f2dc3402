#pragma once

// Command-line surface: subcommands, report serialization and the result
// cache. `run` is the whole program minus process plumbing.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "ekr2/search.hpp"
#include "ekr2/verify.hpp"

namespace ekr2 {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Exit codes: 0 success, 1 Counterexample/Deviation, 2 usage or format
/// error, 3 Infeasible/Truncated.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class ReportFormat { Json, Csv };

struct ReportOptions {
  ReportFormat format = ReportFormat::Json;
  /// Writes elapsed_ms as 0 so reports can be compared byte-for-byte.
  bool omit_timing = false;
};

/// JSON array or CSV table with one row per verdict.
std::string format_verdicts(const std::vector<Verdict>& verdicts, const CheckOptions& config,
                            const ReportOptions& ro);
std::string format_scan(const ScanReport& report, const ReportOptions& ro);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view bytes);

std::uint64_t fnv1a(std::string_view bytes);

/// EKR2_CACHE_DIR, else $XDG_CACHE_HOME/ekr2, else ~/.cache/ekr2.
std::filesystem::path cache_dir();

}  // namespace ekr2
