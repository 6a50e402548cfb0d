// matrix_io.hpp - plain-text complex matrix files
//
//   d
//   z00 z01 ... z0(d-1)
//   ...
//
// with each entry written "re+imj" (or "re-imj"); a bare real is accepted.

#pragma once

#include "entropyne/hermitian.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace entropyne {

Complex parse_complex(std::string_view token);
std::string format_complex(Complex z);

ComplexMatrix read_matrix(std::istream& in);
ComplexMatrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const ComplexMatrix& m);

}  // namespace entropyne
