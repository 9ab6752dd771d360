#pragma once

#include <iosfwd>
#include <string>

#include "krylov/cg.hpp"
#include "krylov/polynomials.hpp"

namespace krylov {

/// Matrix text format: first line the order n, then n lines with the lower
/// triangle (row i holds i+1 whitespace-separated decimals). Throws
/// ParseError on malformed input.
SymMatrix read_sym_matrix(std::istream& in);
void write_sym_matrix(std::ostream& out, const SymMatrix& m);

/// Comma-separated positive decimals, e.g. "1,3,10".
Vector parse_spectrum(const std::string& text);

/// Scientific notation with 17 significant digits; reproducible output.
std::string csv_num(double v);

/// Columns k, rNorm, alpha, beta, plus aNormError when xStar is supplied.
void write_cg_trace_csv(std::ostream& out, const CgTrace& trace, const SpdMatrix& a,
                        const Vector* xStar);

/// One polynomial per line: degree, then ascending coefficients.
void write_polynomial_line(std::ostream& out, const PolyCoeffs& p);

}  // namespace krylov
