#include "wg/wav.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace wg {

namespace {

template <typename T>
void put(std::ofstream& out, T value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof value);
    if (!in) throw std::runtime_error("unexpected end of WAV file");
    return value;
}

}  // namespace

std::size_t write_wav(const std::string& path, std::span<const double> samples,
                      unsigned sample_rate) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);

    const std::uint32_t data_bytes = static_cast<std::uint32_t>(samples.size() * 4);
    out.write("RIFF", 4);
    put<std::uint32_t>(out, 36 + data_bytes);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    put<std::uint32_t>(out, 16);
    put<std::uint16_t>(out, 3);  // IEEE float
    put<std::uint16_t>(out, 1);  // mono
    put<std::uint32_t>(out, sample_rate);
    put<std::uint32_t>(out, sample_rate * 4);
    put<std::uint16_t>(out, 4);
    put<std::uint16_t>(out, 32);
    out.write("data", 4);
    put<std::uint32_t>(out, data_bytes);

    std::size_t clipped = 0;
    for (double s : samples) {
        double v = s;
        if (v > 1.0) {
            v = 1.0;
            ++clipped;
        } else if (v < -1.0) {
            v = -1.0;
            ++clipped;
        }
        put<float>(out, static_cast<float>(v));
    }
    if (!out) throw std::runtime_error("write failed: " + path);
    return clipped;
}

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open WAV file: " + path);

    char tag[5] = {};
    in.read(tag, 4);
    if (std::strncmp(tag, "RIFF", 4) != 0) throw std::runtime_error("not a RIFF file: " + path);
    get<std::uint32_t>(in);
    in.read(tag, 4);
    if (std::strncmp(tag, "WAVE", 4) != 0) throw std::runtime_error("not a WAVE file: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    WavData out{};

    while (in.read(tag, 4)) {
        const auto chunk_size = get<std::uint32_t>(in);
        if (std::strncmp(tag, "fmt ", 4) == 0) {
            format = get<std::uint16_t>(in);
            channels = get<std::uint16_t>(in);
            rate = get<std::uint32_t>(in);
            get<std::uint32_t>(in);
            get<std::uint16_t>(in);
            bits = get<std::uint16_t>(in);
            if (chunk_size > 16) in.seekg(chunk_size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::strncmp(tag, "data", 4) == 0) {
            if (!have_fmt) throw std::runtime_error("WAV data before fmt chunk: " + path);
            if (channels == 0) throw std::runtime_error("WAV has zero channels: " + path);
            const std::uint32_t bytes_per_sample = bits / 8;
            const std::uint32_t frames = chunk_size / (channels * bytes_per_sample);
            out.sample_rate = rate;
            out.samples.resize(frames);
            for (std::uint32_t f = 0; f < frames; ++f) {
                for (std::uint16_t ch = 0; ch < channels; ++ch) {
                    double v;
                    if (format == 3 && bits == 32) {
                        v = get<float>(in);
                    } else if (format == 1 && bits == 16) {
                        v = get<std::int16_t>(in) / 32768.0;
                    } else {
                        throw std::runtime_error("unsupported WAV encoding (need float32 or pcm16)");
                    }
                    if (ch == 0) out.samples[f] = v;
                }
            }
            return out;
        } else {
            in.seekg(chunk_size + (chunk_size & 1), std::ios::cur);
        }
    }
    throw std::runtime_error("WAV file has no data chunk: " + path);
}

}  // namespace wg
