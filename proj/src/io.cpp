#include "dsft/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "dsft/error.hpp"

namespace dsft::io {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) fail(ErrorCode::Io, "write to '" + path + "' failed");
}

// Rows are joined with ',' and no padding so output is byte-stable.
class Row {
 public:
  Row& operator<<(double v) { return add(format_real(v)); }
  Row& operator<<(std::size_t v) { return add(std::to_string(v)); }
  Row& operator<<(const std::string& s) { return add(s); }
  const std::string& str() const { return line_; }

 private:
  Row& add(const std::string& s) {
    if (!line_.empty()) line_ += ',';
    line_ += s;
    return *this;
  }
  std::string line_;
};

void put_u32(std::ofstream& out, std::uint32_t v) {
  const std::array<unsigned char, 4> b = {static_cast<unsigned char>(v & 0xff),
                                          static_cast<unsigned char>((v >> 8) & 0xff),
                                          static_cast<unsigned char>((v >> 16) & 0xff),
                                          static_cast<unsigned char>((v >> 24) & 0xff)};
  out.write(reinterpret_cast<const char*>(b.data()), 4);
}

void put_f64(std::ofstream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_le(const unsigned char* p, int bytes) {
  std::uint64_t v = 0;
  for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

}  // namespace

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_eigenbasis_csv(const EigenBasis& basis, const std::string& path) {
  auto out = open_out(path);
  out << "x,xi,re_e,im_e,re_T,im_T,re_R,im_R,masked\n";
  for (std::size_t j = 0; j < basis.n_xi(); ++j) {
    const auto& s = basis.scattering[j];
    for (std::size_t i = 0; i < basis.x_grid.n_points; ++i) {
      const cd e = basis.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      Row r;
      r << basis.x_grid.point(i) << basis.xi_grid[j] << e.real() << e.imag() << s.t_coeff.real()
        << s.t_coeff.imag() << s.r_coeff.real() << s.r_coeff.imag()
        << std::size_t{basis.exceptional_mask[j]};
      out << r.str() << '\n';
    }
  }
  finish(out, path);
}

void write_scattering_csv(const EigenBasis& basis, const std::string& path) {
  auto out = open_out(path);
  out << "xi,re_T,im_T,re_R,im_R,re_W,im_W,unitarity_defect,masked\n";
  for (std::size_t j = 0; j < basis.n_xi(); ++j) {
    const auto& s = basis.scattering[j];
    const double u = std::abs(std::norm(s.t_coeff) + std::norm(s.r_coeff) - 1.0);
    Row r;
    r << basis.xi_grid[j] << s.t_coeff.real() << s.t_coeff.imag() << s.r_coeff.real()
      << s.r_coeff.imag() << s.wronskian.real() << s.wronskian.imag() << u
      << std::size_t{basis.exceptional_mask[j]};
    out << r.str() << '\n';
  }
  finish(out, path);
}

void write_bound_states_csv(std::span<const BoundState> states, const std::string& path) {
  auto out = open_out(path);
  out << "k,lambda,x,e_k(x)\n";
  for (std::size_t k = 0; k < states.size(); ++k) {
    const auto& s = states[k];
    for (std::size_t i = 0; i < s.grid.n_points; ++i) {
      Row r;
      r << k << s.lambda << s.grid.point(i) << s.eigenfunction[i];
      out << r.str() << '\n';
    }
  }
  finish(out, path);
}

void write_transform_csv(const TransformResult& result, const std::string& path) {
  auto out = open_out(path);
  out << "xi,re_f,im_f,masked\n";
  for (std::size_t j = 0; j < result.xi_grid.size(); ++j) {
    Row r;
    r << result.xi_grid[j] << result.values[j].real() << result.values[j].imag()
      << std::size_t{result.masked[j]};
    out << r.str() << '\n';
  }
  finish(out, path);
}

void write_kernel_csv(const Kernel& kernel, const std::string& path) {
  auto out = open_out(path);
  out << "x,y,re_K,im_K\n";
  const auto n = kernel.values.rows();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const cd v = kernel.values(i, j);
      Row r;
      r << kernel.grid.point(static_cast<std::size_t>(i)) << kernel.grid.point(static_cast<std::size_t>(j))
        << v.real() << v.imag();
      out << r.str() << '\n';
    }
  finish(out, path);
}

void write_spectrum_csv(const DiscreteHamiltonian& hd, const std::string& path) {
  auto out = open_out(path);
  out << "m,lambda\n";
  for (Eigen::Index m = 0; m < hd.eigenvalues.size(); ++m) {
    Row r;
    r << static_cast<std::size_t>(m) << hd.eigenvalues(m);
    out << r.str() << '\n';
  }
  finish(out, path);
}

void write_kernel_binary(const Kernel& kernel, const std::string& path) {
  auto out = open_out(path, true);
  out.write("DSKL", 4);
  put_u32(out, static_cast<std::uint32_t>(kernel.values.rows()));
  put_u32(out, static_cast<std::uint32_t>(kernel.values.cols()));
  put_u32(out, 0);
  for (Eigen::Index i = 0; i < kernel.values.rows(); ++i)
    for (Eigen::Index j = 0; j < kernel.values.cols(); ++j) {
      put_f64(out, kernel.values(i, j).real());
      put_f64(out, kernel.values(i, j).imag());
    }
  finish(out, path);
}

Eigen::MatrixXcd read_kernel_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  unsigned char head[16];
  in.read(reinterpret_cast<char*>(head), 16);
  if (!in || std::memcmp(head, "DSKL", 4) != 0) fail(ErrorCode::Io, "'" + path + "' is not a kernel dump");
  const auto nx = static_cast<Eigen::Index>(get_le(head + 4, 4));
  const auto ny = static_cast<Eigen::Index>(get_le(head + 8, 4));
  Eigen::MatrixXcd m(nx, ny);
  unsigned char buf[16];
  for (Eigen::Index i = 0; i < nx; ++i)
    for (Eigen::Index j = 0; j < ny; ++j) {
      in.read(reinterpret_cast<char*>(buf), 16);
      if (!in) fail(ErrorCode::Io, "'" + path + "' is truncated");
      m(i, j) = cd{std::bit_cast<double>(get_le(buf, 8)), std::bit_cast<double>(get_le(buf + 8, 8))};
    }
  return m;
}

void read_two_columns(const std::string& path, std::vector<double>& xs, std::vector<double>& ys) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  xs.clear();
  ys.clear();
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ss(line);
    double a, b;
    if (!(ss >> a)) {
      if (line.find_first_not_of(" \r") == std::string::npos) continue;
      if (xs.empty() && lineno == 1) continue;  // header
      fail(ErrorCode::Io, path + ":" + std::to_string(lineno) + ": expected two numbers");
    }
    if (!(ss >> b)) fail(ErrorCode::Io, path + ":" + std::to_string(lineno) + ": expected two numbers");
    xs.push_back(a);
    ys.push_back(b);
  }
}

}  // namespace dsft::io
