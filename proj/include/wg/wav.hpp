#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace wg {

struct WavData {
    double sample_rate;
    std::vector<double> samples;  // mono
};

// Mono RIFF WAV, format 3 (IEEE 32-bit float). Samples are clipped to
// [-1, 1] at write time; the return value counts clipped samples.
std::size_t write_wav(const std::string& path, std::span<const double> samples,
                      unsigned sample_rate);

// Reads mono or first-channel audio; accepts float32 (format 3) and PCM16.
WavData read_wav(const std::string& path);

}  // namespace wg
