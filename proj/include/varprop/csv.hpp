#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "varprop/ensemble.hpp"
#include "varprop/graphene.hpp"
#include "varprop/hubbard.hpp"

namespace varprop {

inline constexpr const char* kCsvSchemaLine = "# varprop-csv v1";

/// Shortest round-trippable decimal form of a double.
std::string format_double(double x);

/// Writes content to path atomically: a sibling temp file is renamed into
/// place, so readers never observe a partial file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Throws unless the parent directory of path exists and is writable.
void validate_output_path(const std::filesystem::path& path);

void write_bench_csv(const std::filesystem::path& path, const std::vector<BenchRecord>& records);
void write_graphene_csv(const std::filesystem::path& path, const GrapheneSweepResult& sweep);
void write_hubbard_levels_csv(const std::filesystem::path& path,
                              const HubbardSweepResult& sweep);
void write_hubbard_aggregate_csv(const std::filesystem::path& path,
                                 const HubbardSweepResult& sweep);

/// Parsed CSV with the schema comment stripped.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace varprop
