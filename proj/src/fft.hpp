#pragma once

#include <complex>
#include <span>

namespace fnls::detail {

/// Executes a cached FFTW plan for an n^d transform. Plans are created
/// once per (n, d, direction) under a lock and are safe to execute
/// concurrently. sign = -1 forward, +1 backward (both unnormalized).
void execute_fft(int n, int d, int sign, std::span<const std::complex<double>> in,
                 std::span<std::complex<double>> out);

}  // namespace fnls::detail
