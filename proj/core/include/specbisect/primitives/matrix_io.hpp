#pragma once

#include <iosfwd>
#include <string>

#include "specbisect/primitives/matrix.hpp"

namespace specbisect {

// Text format: a header line `rows cols hermitian_flag`, then one line `i j re im` per
// entry with re and im written as hexadecimal floating-point literals, so reading back a
// written matrix reproduces every bit. Entries not listed are zero. A file flagged
// hermitian must be exactly conjugate-symmetric.
void write_matrix(std::ostream& out, const SoftMatrix& a);
SoftMatrix read_matrix(std::istream& in);

void write_matrix_file(const std::string& path, const SoftMatrix& a);
SoftMatrix read_matrix_file(const std::string& path);

// CSV with columns i,j,re_hex,im_hex,re,im; the decimal columns are for reading only.
void write_matrix_csv(std::ostream& out, const SoftMatrix& a);

}  // namespace specbisect
