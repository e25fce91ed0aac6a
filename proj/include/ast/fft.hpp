#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace ast::fft {

/// In-place unnormalized forward DFT, X_k = sum_n x_n e^{-2 pi i k n / L}.
void forward(std::span<std::complex<double>> data);

/// In-place unnormalized backward DFT, x_n = sum_k X_k e^{+2 pi i k n / L}.
void backward(std::span<std::complex<double>> data);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace ast::fft
