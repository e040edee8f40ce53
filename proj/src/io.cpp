#include "qdf/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qdf {

namespace {
constexpr char kMagic[4] = {'Q', 'D', 'F', 'O'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw std::runtime_error("truncated operator stream");
  return v;
}
}  // namespace

void save_operator_binary(const Operator& op, std::ostream& os) {
  os.write(kMagic, 4);
  write_raw(os, kVersion);
  std::uint32_t flags = 0;
  // Flags are advisory caches; recomputing them on load would also be valid.
  if (op.is_hermitian()) flags |= 1u;
  write_raw(os, flags);
  write_raw(os, static_cast<std::uint32_t>(op.num_factors()));
  for (int d : op.factor_dims()) write_raw(os, static_cast<std::uint32_t>(d));
  const Matrix& m = op.matrix();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      write_raw(os, m(i, j).real());
      write_raw(os, m(i, j).imag());
    }
}

Operator load_operator_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("not an operator stream");
  const auto version = read_raw<std::uint32_t>(is);
  if (version != kVersion) throw std::runtime_error("unsupported operator format version");
  (void)read_raw<std::uint32_t>(is);  // flags
  const auto nf = read_raw<std::uint32_t>(is);
  std::vector<int> dims(nf);
  int D = 1;
  for (auto& d : dims) {
    d = static_cast<int>(read_raw<std::uint32_t>(is));
    D *= d;
  }
  Matrix m(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const double re = read_raw<double>(is);
      const double im = read_raw<double>(is);
      m(i, j) = Complex(re, im);
    }
  return Operator(std::move(dims), std::move(m));
}

void save_operator_binary(const Operator& op, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  save_operator_binary(op, os);
}

Operator load_operator_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return load_operator_binary(is);
}

void save_operator_text(const Operator& op, std::ostream& os) {
  os << "dims:";
  for (int d : op.factor_dims()) os << ' ' << d;
  os << '\n' << std::setprecision(17);
  const Matrix& m = op.matrix();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j).real() << ',' << m(i, j).imag();
    }
    os << '\n';
  }
}

Operator load_operator_text(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("empty operator text");
  std::istringstream hdr(line);
  std::string tag;
  hdr >> tag;
  if (tag != "dims:") throw std::runtime_error("missing dims header");
  std::vector<int> dims;
  int d, D = 1;
  while (hdr >> d) {
    dims.push_back(d);
    D *= d;
  }
  Matrix m(D, D);
  for (int i = 0; i < D; ++i) {
    if (!std::getline(is, line)) throw std::runtime_error("truncated operator text");
    std::istringstream row(line);
    std::string cell;
    for (int j = 0; j < D; ++j) {
      if (!(row >> cell)) throw std::runtime_error("short row in operator text");
      const auto comma = cell.find(',');
      if (comma == std::string::npos) throw std::runtime_error("bad cell in operator text");
      m(i, j) = Complex(std::stod(cell.substr(0, comma)), std::stod(cell.substr(comma + 1)));
    }
  }
  return Operator(std::move(dims), std::move(m));
}

}  // namespace qdf
