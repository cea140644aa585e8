#include "evf/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "evf/errors.hpp"

namespace evf {

namespace {

using nlohmann::json;

const char* origin_name(SampleOrigin o) {
    return o == SampleOrigin::pixel_center ? "pixel_center" : "bin_center";
}

void put_le64(std::string& out, double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xFF));
}

double get_le64(const char* p) {
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
    }
    return std::bit_cast<double>(bits);
}

std::string read_all(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string encode_field(const ComplexField& field, const FieldMetadata& meta) {
    const auto& g = field.grid();
    json header = {
        {"format_version", kFieldFormatVersion},
        {"grid", {{"n", g.samples_per_side()}, {"side_m", g.side_length()}, {"origin", origin_name(g.origin())}}},
        {"z_m", field.z_position()},
        {"energy_eV", meta.energy_ev},
        {"field_T", meta.field_t},
        {"note", meta.note},
    };
    std::string out = header.dump();
    out.push_back('\n');
    out.reserve(out.size() + 16 * g.size());
    for (const auto& a : field.data()) {
        put_le64(out, a.real());
        put_le64(out, a.imag());
    }
    return out;
}

FieldFile decode_field(std::string_view bytes) {
    const auto newline = bytes.find('\n');
    if (newline == std::string_view::npos) throw FormatError("field file has no header line");
    json header;
    try {
        header = json::parse(bytes.substr(0, newline));
    } catch (const json::exception& e) {
        throw FormatError(std::string("field header is not valid JSON: ") + e.what());
    }
    try {
        if (header.at("format_version").get<int>() != kFieldFormatVersion) {
            throw FormatError("unsupported field format_version " + header.at("format_version").dump());
        }
        const auto& g = header.at("grid");
        const int n = g.at("n").get<int>();
        const double side = g.at("side_m").get<double>();
        SampleOrigin origin = SampleOrigin::pixel_center;
        if (g.contains("origin")) {
            const auto name = g.at("origin").get<std::string>();
            if (name == "bin_center") {
                origin = SampleOrigin::bin_center;
            } else if (name != "pixel_center") {
                throw FormatError("unknown grid origin '" + name + "'");
            }
        }
        const GridSpec grid(n, side, origin);
        const auto payload = bytes.substr(newline + 1);
        const std::size_t expected = 16 * grid.size();
        if (payload.size() != expected) {
            throw FormatError("field payload is " + std::to_string(payload.size()) + " bytes, expected " +
                              std::to_string(expected));
        }
        std::vector<Complex> amps(grid.size());
        for (std::size_t i = 0; i < amps.size(); ++i) {
            const char* p = payload.data() + 16 * i;
            amps[i] = Complex(get_le64(p), get_le64(p + 8));
        }
        FieldMetadata meta{header.value("energy_eV", 0.0), header.value("field_T", 0.0),
                           header.value("note", std::string{})};
        return {ComplexField(grid, header.at("z_m").get<double>(), std::move(amps)), std::move(meta)};
    } catch (const json::exception& e) {
        throw FormatError(std::string("field header is incomplete: ") + e.what());
    } catch (const DomainError& e) {
        throw FormatError(std::string("field header describes an invalid grid: ") + e.what());
    }
}

void write_field_file(const std::filesystem::path& path, const ComplexField& field,
                      const FieldMetadata& meta) {
    atomic_write(path, encode_field(field, meta));
}

FieldFile read_field_file(const std::filesystem::path& path) { return decode_field(read_all(path)); }

void atomic_write(const std::filesystem::path& path, std::string_view bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::random_device rd;
    auto tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw Error("write failed for " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

std::string encode_pgm(int n, const std::vector<std::uint8_t>& pixels) {
    if (pixels.size() != static_cast<std::size_t>(n) * n) throw DomainError("PGM pixel count mismatch");
    std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) + "\n255\n";
    for (int row = n - 1; row >= 0; --row) {
        out.append(reinterpret_cast<const char*>(pixels.data()) + static_cast<std::size_t>(row) * n, n);
    }
    return out;
}

void write_intensity_frame(const std::filesystem::path& path, const ComplexField& field) {
    double peak = 0.0;
    for (const auto& a : field.data()) peak = std::max(peak, std::norm(a));
    std::vector<std::uint8_t> px(field.data().size(), 0);
    if (peak > 0) {
        for (std::size_t i = 0; i < px.size(); ++i) {
            px[i] = static_cast<std::uint8_t>(std::lround(255.0 * std::norm(field.data()[i]) / peak));
        }
    }
    atomic_write(path, encode_pgm(field.n(), px));
    const nlohmann::json side = {{"max_intensity", peak},
                                 {"z_m", field.z_position()},
                                 {"pixel_scale", "value/255 * max_intensity"}};
    auto sidecar = path;
    sidecar += ".json";
    atomic_write(sidecar, side.dump(2) + "\n");
}

void write_mask_pgm(const std::filesystem::path& path, int n, const std::vector<std::uint8_t>& mask) {
    std::vector<std::uint8_t> px(mask.size());
    std::transform(mask.begin(), mask.end(), px.begin(), [](std::uint8_t v) { return v ? 255 : 0; });
    atomic_write(path, encode_pgm(n, px));
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& values) {
    if (values.size() != columns_.size()) throw DomainError("CSV row width mismatch");
    rows_.push_back(values);
}

std::string CsvTable::str() const {
    std::string out = "# ";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) out += ",";
        out += columns_[i];
    }
    out += "\n";
    char buf[32];
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            std::snprintf(buf, sizeof buf, "%.17g", row[i]);
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace evf
