#include "varprop/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace varprop {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void validate_output_path(const std::filesystem::path& path) {
  if (path.empty()) throw std::invalid_argument("empty output path");
  std::filesystem::path dir = path.parent_path();
  if (dir.empty()) dir = ".";
  if (!std::filesystem::is_directory(dir)) {
    throw std::invalid_argument("output directory does not exist: " + dir.string());
  }
  const std::filesystem::path probe = path.string() + ".probe";
  std::ofstream test(probe);
  if (!test) throw std::invalid_argument("output path not writable: " + path.string());
  test.close();
  std::filesystem::remove(probe);
}

void write_bench_csv(const std::filesystem::path& path,
                     const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kCsvSchemaLine << "\n";
  out << "method,dim,t_norm,l2_mean,l2_std,n\n";
  for (const auto& r : records) {
    out << method_name(r.method) << ',' << r.dim << ',' << format_double(r.t_norm) << ','
        << format_double(r.l2_mean) << ',' << format_double(r.l2_std) << ',' << r.n << "\n";
  }
  atomic_write(path, out.str());
}

void write_graphene_csv(const std::filesystem::path& path, const GrapheneSweepResult& sweep) {
  std::ostringstream out;
  out << kCsvSchemaLine << "\n";
  out << "p2,delta_std,delta_var,convention\n";
  const std::string convention = pm_convention_name(sweep.config.convention);
  for (const auto& point : sweep.points) {
    if (!point.valid) continue;
    out << format_double(point.p) << ',' << format_double(point.delta_std) << ','
        << format_double(point.delta_var) << ',' << convention << "\n";
  }
  atomic_write(path, out.str());
}

void write_hubbard_levels_csv(const std::filesystem::path& path,
                              const HubbardSweepResult& sweep) {
  std::ostringstream out;
  out << kCsvSchemaLine << "\n";
  out << "t_over_u,level_index,e_exact,e_std,e_var,err_std,err_var\n";
  for (const auto& r : sweep.levels) {
    out << format_double(r.t_over_u) << ',' << r.level_index << ',' << format_double(r.e_exact)
        << ',' << format_double(r.e_std) << ',' << format_double(r.e_var) << ','
        << format_double(r.err_std) << ',' << format_double(r.err_var) << "\n";
  }
  atomic_write(path, out.str());
}

void write_hubbard_aggregate_csv(const std::filesystem::path& path,
                                 const HubbardSweepResult& sweep) {
  std::ostringstream out;
  out << kCsvSchemaLine << "\n";
  out << "t_over_u,avg_first_half_std,avg_first_half_var,avg_second_half_std,"
         "avg_second_half_var,min_selected_weight,flagged\n";
  for (const auto& r : sweep.aggregate) {
    out << format_double(r.t_over_u) << ',' << format_double(r.avg_first_half_std) << ','
        << format_double(r.avg_first_half_var) << ',' << format_double(r.avg_second_half_std)
        << ',' << format_double(r.avg_second_half_var) << ','
        << format_double(r.min_selected_weight) << ',' << (r.flagged ? 1 : 0) << "\n";
  }
  atomic_write(path, out.str());
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!have_header) {
      table.header = std::move(fields);
      have_header = true;
    } else {
      table.rows.push_back(std::move(fields));
    }
  }
  if (!have_header) throw std::invalid_argument("no header row in " + path.string());
  return table;
}

}  // namespace varprop
