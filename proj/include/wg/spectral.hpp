#pragma once

#include <complex>
#include <span>
#include <vector>

namespace wg {

// In-place iterative radix-2 FFT; size must be a power of two.
void fft(std::vector<std::complex<double>>& data, bool inverse = false);

// Magnitude spectrum of a real signal zero-padded to fft_size
// (power of two, >= signal length); returns fft_size/2 + 1 bins.
std::vector<double> magnitude_spectrum(std::span<const double> signal, std::size_t fft_size);

std::vector<double> hann_window(std::size_t length);

// Fixed analysis front end shared by the estimators: Hann window of
// `window` samples advanced by `hop` (75% overlap at the defaults), each
// frame zero-padded to `fft_size`.
struct StftConfig {
    std::size_t window = 4096;
    std::size_t hop = 1024;
    std::size_t fft_size = 8192;
};

struct Stft {
    StftConfig config;
    double sample_rate;
    // frames x (fft_size/2 + 1) magnitudes
    std::vector<std::vector<double>> magnitudes;

    double bin_hz() const { return sample_rate / static_cast<double>(config.fft_size); }
};

Stft stft_magnitudes(std::span<const double> signal, double sample_rate,
                     const StftConfig& config = {});

// Quadratic interpolation of a log-magnitude peak at `bin` using its
// neighbors; returns (fractional bin offset in [-0.5, 0.5], peak magnitude).
std::pair<double, double> quadratic_peak(std::span<const double> mags, std::size_t bin);

}  // namespace wg
