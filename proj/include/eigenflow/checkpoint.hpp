#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eigenflow/field.hpp"
#include "eigenflow/grid.hpp"

namespace eigenflow {

// Field checkpoint: a key=value text header terminated by a blank line, then
// raw little-endian (re,im) double pairs for component 0, 1, 2, each in
// row-major FFT-ordered k-lattice order. Round trip is bit exact.

namespace detail {

inline std::uint64_t byteswap64(std::uint64_t v) {
    v = ((v & 0x00000000FFFFFFFFull) << 32) | ((v & 0xFFFFFFFF00000000ull) >> 32);
    v = ((v & 0x0000FFFF0000FFFFull) << 16) | ((v & 0xFFFF0000FFFF0000ull) >> 16);
    v = ((v & 0x00FF00FF00FF00FFull) << 8) | ((v & 0xFF00FF00FF00FF00ull) >> 8);
    return v;
}

inline void doubles_to_le(std::vector<double>& vals) {
    if constexpr (std::endian::native == std::endian::big) {
        for (double& d : vals) {
            auto bits = std::bit_cast<std::uint64_t>(d);
            d = std::bit_cast<double>(byteswap64(bits));
        }
    }
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace detail

inline void write_checkpoint(const std::filesystem::path& path, const SpectralVectorField& u) {
    const Grid& g = u.grid();
    std::ostringstream header;
    header << "n=" << g.n << "\n"
           << "box_length=" << detail::format_double(g.box_length) << "\n"
           << "component_count=3\n"
           << "dtype=complex128-le\n"
           << "ordering=row-major-fft\n"
           << "\n";

    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot open '" + tmp.string() + "' for writing");
        const std::string h = header.str();
        out.write(h.data(), static_cast<std::streamsize>(h.size()));
        const std::size_t nn = g.size();
        std::vector<double> vals(2 * nn);
        for (int c = 0; c < 3; ++c) {
            for (std::size_t i = 0; i < nn; ++i) {
                vals[2 * i] = u.at(c, i).real();
                vals[2 * i + 1] = u.at(c, i).imag();
            }
            detail::doubles_to_le(vals);
            out.write(reinterpret_cast<const char*>(vals.data()),
                      static_cast<std::streamsize>(vals.size() * sizeof(double)));
        }
        if (!out) throw FormatError("short write to '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

inline SpectralVectorField read_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open checkpoint '" + path.string() + "'");

    int n = 0;
    double box_length = 0.0;
    int component_count = 0;
    std::string dtype, ordering;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) break;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw FormatError("malformed checkpoint header line: '" + line + "'");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        try {
            if (key == "n") n = std::stoi(value);
            else if (key == "box_length") box_length = std::stod(value);
            else if (key == "component_count") component_count = std::stoi(value);
            else if (key == "dtype") dtype = value;
            else if (key == "ordering") ordering = value;
            else throw FormatError("unknown checkpoint header key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw FormatError("bad checkpoint header value for '" + key + "'");
        }
    }
    if (n == 0 || box_length == 0.0)
        throw FormatError("checkpoint header is missing n or box_length");
    if (component_count != 3) throw FormatError("checkpoint must have component_count=3");
    if (dtype != "complex128-le") throw FormatError("unsupported dtype '" + dtype + "'");
    if (ordering != "row-major-fft") throw FormatError("unsupported ordering '" + ordering + "'");

    const Grid g(n, box_length);
    SpectralVectorField u(g);
    const std::size_t nn = g.size();
    std::vector<double> vals(2 * nn);
    std::size_t expected = 3 * nn * 2 * sizeof(double);
    for (int c = 0; c < 3; ++c) {
        in.read(reinterpret_cast<char*>(vals.data()),
                static_cast<std::streamsize>(vals.size() * sizeof(double)));
        const std::size_t got = static_cast<std::size_t>(in.gcount());
        expected -= got;
        if (got != vals.size() * sizeof(double))
            throw FormatError("checkpoint truncated: missing " + std::to_string(expected) +
                              " payload bytes");
        detail::doubles_to_le(vals);
        for (std::size_t i = 0; i < nn; ++i)
            u.at(c, i) = Complex(vals[2 * i], vals[2 * i + 1]);
    }
    if (!u.is_finite()) throw FormatError("checkpoint contains non-finite values");
    return u;
}

}  // namespace eigenflow
