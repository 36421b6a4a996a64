#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fpme/field.hpp"

namespace fpme::spectral {

/// Unnormalized forward DFT of a real field (complex spectrum, FFT mode
/// order). Inverse divides by the point count and drops the imaginary
/// residue after checking it is negligible.
std::vector<std::complex<double>> forward(const Grid& grid,
                                          std::span<const double> values);
std::vector<double> inverse(const Grid& grid,
                            std::span<const std::complex<double>> spectrum);

/// Scale factor making (dx)^dim * sum_x f^2 == weight * sum_k |F_k|^2.
inline double parseval_weight(const Grid& grid) {
  return grid.cell_volume() / static_cast<double>(grid.size());
}

/// (-Laplace)^s f via the multiplier |k|^{2s}; the zero mode maps to 0.
/// Throws std::domain_error for s outside (1/2, 1].
Field frac_laplacian(const Field& f, double s);

/// Spectral gradient, multiplier i*k per component (Nyquist zeroed).
VectorField gradient(const Field& f);

/// Spectral divergence; the output has exactly zero mean.
Field divergence(const VectorField& v);

/// Spectral Laplacian (multiplier -|k|^2).
Field laplacian(const Field& f);

/// Integral of |(-Laplace)^{s/2} grad p|^2 over the box, evaluated as the
/// Parseval-scaled spectral sum |k|^{2s} |k_deriv|^2 |p_k|^2.
double frac_sobolev_seminorm(const Field& p, double s);

/// Throws std::domain_error unless s is in (1/2, 1].
void require_s_range(double s);

}  // namespace fpme::spectral
