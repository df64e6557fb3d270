#include "dgbo/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dgbo::io {
namespace {

std::uint64_t to_le(std::uint64_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
    return r;
}

}  // namespace

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp);
        os << text;
        if (!os) throw std::runtime_error("write failed: " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

void write_field(const std::string& stem, const Field& f, double t) {
    nlohmann::json meta = {{"n", f.size()}, {"L", f.grid().L}, {"t", t}};
    {
        std::ofstream os(stem + ".bin.tmp", std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + stem + ".bin");
        for (double v : f.values()) {
            std::uint64_t bits = to_le(std::bit_cast<std::uint64_t>(v));
            os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
        }
        if (!os) throw std::runtime_error("write failed: " + stem + ".bin");
    }
    std::filesystem::rename(stem + ".bin.tmp", stem + ".bin");
    write_text_atomic(stem + ".json", meta.dump(2) + "\n");
}

StoredField read_field(const std::string& stem) {
    std::ifstream js(stem + ".json");
    if (!js) throw std::runtime_error("missing sidecar " + stem + ".json");
    nlohmann::json meta = nlohmann::json::parse(js);
    const int n = meta.at("n").get<int>();
    const double L = meta.at("L").get<double>();
    const double t = meta.at("t").get<double>();
    std::ifstream bs(stem + ".bin", std::ios::binary);
    if (!bs) throw std::runtime_error("missing data " + stem + ".bin");
    std::vector<double> v(n);
    for (int j = 0; j < n; ++j) {
        std::uint64_t bits = 0;
        bs.read(reinterpret_cast<char*>(&bits), sizeof bits);
        if (!bs) throw std::runtime_error("short field file " + stem + ".bin");
        v[j] = std::bit_cast<double>(to_le(bits));
    }
    return {Field::from_values(Grid(n, L), std::move(v)), t};
}

void write_diagnostics_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::ostringstream os;
    os << "t,dt,mass,energy,l2,hs_crit,linf,imag_residue\n";
    char buf[512];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.dt, r.mass, r.energy,
                      r.l2, r.hs_crit, r.linf, r.imag_residue);
        os << buf;
    }
    write_text_atomic(path, os.str());
}

}  // namespace dgbo::io
