#pragma once

#include <string>
#include <string_view>

namespace evf {

// Quantities typed with a mandatory unit suffix, e.g. "60keV", "-1T",
// "500mT", "100nm", "2.5um". Bare numbers and unknown suffixes raise
// UnitParseError quoting the offending token. Results are SI.
double parse_energy(std::string_view token);  // eV, keV, MeV -> J
double parse_field(std::string_view token);   // T, mT, uT -> T
double parse_length(std::string_view token);  // pm, nm, um/µm, mm, cm, m -> m

// Compact engineering rendering with a unit, e.g. "51.31 nm".
std::string format_length(double metres);

}  // namespace evf
