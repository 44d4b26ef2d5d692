#include "eitprop/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace eitprop::io {

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

CsvBuilder::CsvBuilder(const std::vector<std::string>& header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ += ',';
    out_ += header[i];
  }
  out_ += '\n';
}

void CsvBuilder::add(double value) { add(format_double(value)); }

void CsvBuilder::add(const std::string& value) {
  if (in_row_) out_ += ',';
  out_ += value;
  ++in_row_;
}

void CsvBuilder::end_row() {
  if (in_row_ != columns_)
    throw std::logic_error("CsvBuilder: row length does not match header");
  out_ += '\n';
  in_row_ = 0;
}

}  // namespace eitprop::io
