#include "krylov/io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace krylov {

SymMatrix read_sym_matrix(std::istream& in) {
  int n = 0;
  if (!(in >> n)) throw ParseError("matrix file: missing order");
  if (n < 1) throw ParseError("matrix file: order must be >= 1");
  if (n > 100000) throw ParseError("matrix file: implausible order");
  SymMatrix m(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double v;
      if (!(in >> v))
        throw ParseError("matrix file: truncated lower triangle at row " +
                         std::to_string(i));
      m.set(i, j, v);
    }
  }
  return m;
}

void write_sym_matrix(std::ostream& out, const SymMatrix& m) {
  out << m.order() << "\n";
  for (int i = 0; i < m.order(); ++i) {
    for (int j = 0; j <= i; ++j) out << (j ? " " : "") << csv_num(m(i, j));
    out << "\n";
  }
}

Vector parse_spectrum(const std::string& text) {
  Vector out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos)
      throw ParseError("spectrum: empty entry");
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ParseError("spectrum: not a number: '" + item + "'");
    }
    if (item.find_first_not_of(" \t", used) != std::string::npos)
      throw ParseError("spectrum: trailing junk in '" + item + "'");
    if (!(v > 0.0)) throw ParseError("spectrum: entries must be positive");
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("spectrum: no entries");
  return out;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

void write_cg_trace_csv(std::ostream& out, const CgTrace& trace, const SpdMatrix& a,
                        const Vector* xStar) {
  out << "k,rNorm,alpha,beta";
  if (xStar) out << ",aNormError";
  out << "\n";
  for (const auto& s : trace.steps) {
    out << s.k << "," << csv_num(s.rNorm) << "," << csv_num(s.alpha) << ","
        << (s.beta ? csv_num(*s.beta) : std::string());
    if (xStar) out << "," << csv_num(a_norm(a, subtract(s.x, *xStar)));
    out << "\n";
  }
}

void write_polynomial_line(std::ostream& out, const PolyCoeffs& p) {
  out << p.degree();
  for (double c : p.c) out << " " << csv_num(c);
  out << "\n";
}

}  // namespace krylov
