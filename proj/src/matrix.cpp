#include "apspkit/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace apspkit {

DistMatrix minplus_identity(std::size_t n) {
  DistMatrix m(n, n, kInf);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 0;
  return m;
}

std::size_t finite_count(const DistMatrix& m) {
  return static_cast<std::size_t>(
      std::count_if(m.storage().begin(), m.storage().end(), [](Dist x) { return x != kInf; }));
}

Dist max_finite(const DistMatrix& m) {
  Dist best = kInf;
  for (Dist x : m.storage())
    if (x != kInf && (best == kInf || x > best)) best = x;
  return best;
}

Dist min_finite(const DistMatrix& m) {
  Dist best = kInf;
  for (Dist x : m.storage()) best = std::min(best, x);
  return best;
}

bool check_bounds(const DistMatrix& m, std::optional<Dist> max_f, std::optional<std::size_t> count) {
  std::size_t seen = 0;
  for (Dist x : m.storage()) {
    if (x == kInf) continue;
    ++seen;
    if (max_f && x > *max_f) return false;
  }
  return !count || seen <= *count;
}

bool check_bounds(const DistMatrix& a, const DistMatrix& b, const EntryBounds& bd) {
  return check_bounds(a, bd.max_finite_a, bd.finite_count_a) &&
         check_bounds(b, bd.max_finite_b, bd.finite_count_b);
}

std::string dist_token(Dist x) { return x == kInf ? std::string("INF") : std::to_string(x); }

Dist parse_dist_token(const std::string& tok, int line) {
  if (tok == "INF" || tok == "inf") return kInf;
  Dist v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError("bad matrix token '" + tok + "'", line);
  return v;
}

void write_matrix(std::ostream& os, const DistMatrix& m) {
  os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << dist_token(m(i, j));
    }
    os << '\n';
  }
}

namespace {
// next non-comment, non-blank line
bool next_line(std::istream& is, std::string& out, int& lineno) {
  while (std::getline(is, out)) {
    ++lineno;
    auto p = out.find_first_not_of(" \t\r");
    if (p == std::string::npos || out[p] == '#') continue;
    return true;
  }
  return false;
}
}  // namespace

DistMatrix read_matrix(std::istream& is) {
  std::string line;
  int lineno = 0;
  if (!next_line(is, line, lineno)) throw ParseError("missing matrix header", lineno);
  std::istringstream hs(line);
  std::string kw;
  long long r = -1, c = -1;
  if (!(hs >> kw >> r >> c) || kw != "matrix" || r < 0 || c < 0)
    throw ParseError("expected 'matrix <rows> <cols>'", lineno);
  DistMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c), kInf);
  for (long long i = 0; i < r; ++i) {
    if (!next_line(is, line, lineno)) throw ParseError("missing matrix row", lineno);
    std::istringstream ls(line);
    std::string tok;
    long long j = 0;
    while (ls >> tok) {
      if (j >= c) throw ParseError("too many entries in row", lineno);
      m(i, j++) = parse_dist_token(tok, lineno);
    }
    if (j != c) throw ParseError("too few entries in row", lineno);
  }
  return m;
}

DistMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidArgument("cannot open " + path);
  return read_matrix(f);
}

}  // namespace apspkit
