#include "specbisect/primitives/matrix_io.hpp"

#include <fstream>
#include <iomanip>
#include <ios>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

namespace specbisect {

void write_matrix(std::ostream& out, const SoftMatrix& a) {
  out << a.rows << ' ' << a.cols << ' ' << (a.hermitian ? 1 : 0) << '\n';
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      out << i << ' ' << j << ' ' << fp::to_hex(a(i, j).re) << ' ' << fp::to_hex(a(i, j).im)
          << '\n';
  if (!out) throw IoError("failed writing matrix");
}

SoftMatrix read_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      auto p = line.find_first_not_of(" \t\r");
      if (p != std::string::npos && line[p] != '#') return true;
    }
    return false;
  };
  auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
  if (!next_line()) throw IoError("empty matrix file");
  std::istringstream head(line);
  long long rows = -1, cols = -1;
  int flag = -1;
  std::string extra;
  if (!(head >> rows >> cols >> flag) || (head >> extra) || rows < 0 || cols < 0 ||
      (flag != 0 && flag != 1))
    throw IoError("malformed header, expected `rows cols hermitian_flag`" + where());
  SoftMatrix a(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  std::vector<char> seen(a.data.size(), 0);
  while (next_line()) {
    std::istringstream ls(line);
    long long i = -1, j = -1;
    std::string re, im;
    if (!(ls >> i >> j >> re >> im) || (ls >> extra))
      throw IoError("malformed entry, expected `i j re im`" + where());
    if (i < 0 || j < 0 || i >= rows || j >= cols) throw IoError("index out of range" + where());
    std::size_t k = static_cast<std::size_t>(i * cols + j);
    if (seen[k]) throw IoError("duplicate entry" + where());
    seen[k] = 1;
    try {
      a.data[k] = {fp::parse_hex(re), fp::parse_hex(im)};
    } catch (const DomainError& e) {
      throw IoError(std::string(e.what()) + where());
    }
  }
  if (in.bad()) throw IoError("read failure");
  if (flag == 1) {
    if (!is_exactly_hermitian(a)) throw IoError("matrix flagged hermitian is not conjugate-symmetric");
    a.hermitian = true;
  }
  return a;
}

void write_matrix_file(const std::string& path, const SoftMatrix& a) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  write_matrix(out, a);
}

SoftMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  return read_matrix(in);
}

void write_matrix_csv(std::ostream& out, const SoftMatrix& a) {
  out << "i,j,re_hex,im_hex,re,im\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j)
      out << i << ',' << j << ',' << fp::to_hex(a(i, j).re) << ',' << fp::to_hex(a(i, j).im)
          << ',' << fp::to_double(a(i, j).re) << ',' << fp::to_double(a(i, j).im) << '\n';
  if (!out) throw IoError("failed writing csv");
}

}  // namespace specbisect
