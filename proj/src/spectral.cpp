#include "wg/spectral.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wg/noise.hpp"

namespace wg {

std::vector<double> noise_vector(std::uint32_t seed, std::size_t length) {
    UniformNoise rng(seed);
    std::vector<double> out(length);
    for (auto& x : out) x = rng.next();
    return out;
}

void fft(std::vector<std::complex<double>>& data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fft size must be a nonzero power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = data[i + k];
                const std::complex<double> v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        for (auto& x : data) x /= static_cast<double>(n);
    }
}

std::vector<double> magnitude_spectrum(std::span<const double> signal, std::size_t fft_size) {
    if (fft_size < signal.size())
        throw std::invalid_argument("fft size smaller than signal");
    std::vector<std::complex<double>> buf(fft_size, {0.0, 0.0});
    for (std::size_t i = 0; i < signal.size(); ++i) buf[i] = signal[i];
    fft(buf);
    std::vector<double> mags(fft_size / 2 + 1);
    for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(buf[k]);
    return mags;
}

std::vector<double> hann_window(std::size_t length) {
    std::vector<double> w(length);
    for (std::size_t n = 0; n < length; ++n)
        w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) /
                                    static_cast<double>(length - 1));
    return w;
}

Stft stft_magnitudes(std::span<const double> signal, double sample_rate,
                     const StftConfig& config) {
    if (config.fft_size < config.window)
        throw std::invalid_argument("stft fft size must be >= window length");
    Stft out;
    out.config = config;
    out.sample_rate = sample_rate;
    if (signal.size() < config.window) return out;

    const auto window = hann_window(config.window);
    std::vector<std::complex<double>> buf;
    for (std::size_t start = 0; start + config.window <= signal.size(); start += config.hop) {
        buf.assign(config.fft_size, {0.0, 0.0});
        for (std::size_t n = 0; n < config.window; ++n)
            buf[n] = signal[start + n] * window[n];
        fft(buf);
        std::vector<double> mags(config.fft_size / 2 + 1);
        for (std::size_t k = 0; k < mags.size(); ++k) mags[k] = std::abs(buf[k]);
        out.magnitudes.push_back(std::move(mags));
    }
    return out;
}

std::pair<double, double> quadratic_peak(std::span<const double> mags, std::size_t bin) {
    if (bin == 0 || bin + 1 >= mags.size()) return {0.0, mags[bin]};
    const double eps = 1e-300;
    const double a = std::log(mags[bin - 1] + eps);
    const double b = std::log(mags[bin] + eps);
    const double c = std::log(mags[bin + 1] + eps);
    const double denom = a - 2.0 * b + c;
    if (denom == 0.0) return {0.0, mags[bin]};
    double delta = 0.5 * (a - c) / denom;
    if (delta > 0.5) delta = 0.5;
    if (delta < -0.5) delta = -0.5;
    const double peak_log = b - 0.25 * (a - c) * delta;
    return {delta, std::exp(peak_log)};
}

}  // namespace wg
