#include "qwmp/io.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace qwmp::io {

std::string read_source(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << text;
}

}  // namespace qwmp::io
