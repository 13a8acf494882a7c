#pragma once

#include <span>
#include <string>
#include <vector>

#include "dsft/bound_states.hpp"
#include "dsft/jost.hpp"
#include "dsft/kernel.hpp"
#include "dsft/oracle.hpp"
#include "dsft/transform.hpp"

namespace dsft::io {

/// Fixed-width round-trip formatting (%.17g).
std::string format_real(double v);

void write_eigenbasis_csv(const EigenBasis& basis, const std::string& path);
void write_scattering_csv(const EigenBasis& basis, const std::string& path);
void write_bound_states_csv(std::span<const BoundState> states, const std::string& path);
void write_transform_csv(const TransformResult& result, const std::string& path);
void write_kernel_csv(const Kernel& kernel, const std::string& path);
void write_spectrum_csv(const DiscreteHamiltonian& hd, const std::string& path);

/// 16-byte header ("DSKL", u32 n_x, u32 n_y, u32 reserved = 0) followed by
/// row-major (re, im) float64 pairs, all little-endian.
void write_kernel_binary(const Kernel& kernel, const std::string& path);
Eigen::MatrixXcd read_kernel_binary(const std::string& path);

/// Two-column "x,value" text file; '#' starts a comment, a non-numeric first
/// line is treated as a header.
void read_two_columns(const std::string& path, std::vector<double>& xs, std::vector<double>& ys);

}  // namespace dsft::io
