#include "glab/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace glab {

namespace {

constexpr std::array<char, 4> kMagic{'G', 'L', 'A', 'B'};

template <typename U>
void put_le(std::ostream& out, U value) {
    std::array<char, sizeof(U)> bytes;
    for (std::size_t i = 0; i < sizeof(U); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xff);
    out.write(bytes.data(), bytes.size());
}

template <typename U>
U get_le(std::istream& in) {
    std::array<unsigned char, sizeof(U)> bytes;
    if (!in.read(reinterpret_cast<char*>(bytes.data()), bytes.size()))
        throw std::runtime_error("snapshot truncated");
    U value = 0;
    for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
    return value;
}

}  // namespace

void write_snapshot(std::ostream& out, const StateVector& state) {
    out.write(kMagic.data(), kMagic.size());
    put_le<std::uint32_t>(out, kSnapshotVersion);
    put_le<std::uint64_t>(out, state.dimension());
    for (const cplx& a : state.amplitudes()) {
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(a.real()));
        put_le<std::uint64_t>(out, std::bit_cast<std::uint64_t>(a.imag()));
    }
    if (!out) throw std::runtime_error("snapshot write failed");
}

void write_snapshot(const std::filesystem::path& path, const StateVector& state) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    write_snapshot(out, state);
}

StateVector read_snapshot(std::istream& in) {
    std::array<char, 4> magic;
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw std::runtime_error("not a GLAB snapshot");
    const auto version = get_le<std::uint32_t>(in);
    if (version != kSnapshotVersion) throw std::runtime_error("unsupported snapshot version " + std::to_string(version));
    const auto n = get_le<std::uint64_t>(in);
    std::vector<cplx> amps;
    amps.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        const double re = std::bit_cast<double>(get_le<std::uint64_t>(in));
        const double im = std::bit_cast<double>(get_le<std::uint64_t>(in));
        amps.emplace_back(re, im);
    }
    return StateVector(std::move(amps));
}

StateVector read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    return read_snapshot(in);
}

}  // namespace glab
