#pragma once

// File formats written by the CLI.
//
// Field file: a single-line JSON header
//   {"format_version":1,"grid":{"n":N,"side_m":L,"origin":"pixel_center"},
//    "z_m":z,"energy_eV":E,"field_T":B,"note":"..."}
// followed by one '\n' and exactly 16 N^2 bytes of little-endian float64
// (re, im) pairs in row-major order. "origin" is optional on read and
// defaults to pixel_center.
//
// PGM: binary P5, maxval 255, top row = largest y.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "evf/grid.hpp"

namespace evf {

struct FieldMetadata {
    double energy_ev = 0.0;
    double field_t = 0.0;
    std::string note;
};

struct FieldFile {
    ComplexField field;
    FieldMetadata metadata;
};

inline constexpr int kFieldFormatVersion = 1;

std::string encode_field(const ComplexField& field, const FieldMetadata& meta);
FieldFile decode_field(std::string_view bytes);  // throws FormatError

void write_field_file(const std::filesystem::path& path, const ComplexField& field,
                      const FieldMetadata& meta);
FieldFile read_field_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view bytes);

// P5 image from 8-bit pixels in row-major grid order (row 0 = smallest y).
std::string encode_pgm(int n, const std::vector<std::uint8_t>& grid_order_pixels);

// Intensity |a|^2 scaled so the frame maximum maps to 255. Writes the PGM and
// a sidecar <path>.json holding the maximum intensity and z.
void write_intensity_frame(const std::filesystem::path& path, const ComplexField& field);

// 0/1 values mapped to 0/255.
void write_mask_pgm(const std::filesystem::path& path, int n, const std::vector<std::uint8_t>& mask);

// CSV with one '#' comment line naming the columns with units.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(const std::vector<double>& values);
    std::string str() const;
    std::size_t rows() const { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

}  // namespace evf
