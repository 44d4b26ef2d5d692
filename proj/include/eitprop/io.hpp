#ifndef EITPROP_IO_HPP
#define EITPROP_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace eitprop::io {

/// Write-then-rename so readers never observe a partial file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Minimal CSV assembly with deterministic \%.17g number formatting.
class CsvBuilder {
 public:
  explicit CsvBuilder(const std::vector<std::string>& header);
  void add(double value);
  void add(const std::string& value);
  void end_row();
  const std::string& str() const { return out_; }

 private:
  std::string out_;
  std::size_t columns_ = 0;
  std::size_t in_row_ = 0;
};

std::string format_double(double value);

}  // namespace eitprop::io

#endif
