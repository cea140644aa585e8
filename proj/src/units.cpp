#include "evf/units.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

#include "evf/constants.hpp"
#include "evf/errors.hpp"

namespace evf {

namespace {

struct Suffix {
    std::string_view text;
    double scale;
};

template <std::size_t N>
double parse_with(std::string_view token, const std::array<Suffix, N>& suffixes,
                  std::string_view kind) {
    std::string_view s = token;
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    auto fail = [&](std::string_view why) -> double {
        throw UnitParseError("cannot parse " + std::string(kind) + " '" + std::string(token) +
                             "': " + std::string(why));
    };
    if (s.empty()) return fail("empty value");

    const char* begin = s.data();
    if (*begin == '+') ++begin;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), value);
    if (ec != std::errc() || ptr == begin) return fail("no leading number");
    std::string_view unit(ptr, static_cast<std::size_t>(s.data() + s.size() - ptr));
    while (!unit.empty() && unit.front() == ' ') unit.remove_prefix(1);
    if (unit.empty()) return fail("missing unit suffix");
    for (const auto& suf : suffixes) {
        if (unit == suf.text) {
            if (!std::isfinite(value)) return fail("value is not finite");
            return value * suf.scale;
        }
    }
    return fail("unknown unit '" + std::string(unit) + "'");
}

constexpr std::array<Suffix, 3> kEnergy{{
    {"eV", joules_per_eV}, {"keV", 1e3 * joules_per_eV}, {"MeV", 1e6 * joules_per_eV}}};

constexpr std::array<Suffix, 3> kField{{{"T", 1.0}, {"mT", 1e-3}, {"uT", 1e-6}}};

constexpr std::array<Suffix, 8> kLength{{{"pm", 1e-12},
                                         {"nm", 1e-9},
                                         {"um", 1e-6},
                                         {"\xC2\xB5m", 1e-6},  // micro sign
                                         {"\xCE\xBCm", 1e-6},  // Greek mu
                                         {"mm", 1e-3},
                                         {"cm", 1e-2},
                                         {"m", 1.0}}};

}  // namespace

double parse_energy(std::string_view token) { return parse_with(token, kEnergy, "energy"); }
double parse_field(std::string_view token) { return parse_with(token, kField, "field"); }
double parse_length(std::string_view token) { return parse_with(token, kLength, "length"); }

std::string format_length(double metres) {
    static constexpr std::array<std::pair<double, const char*>, 5> units{
        {{1.0, "m"}, {1e-3, "mm"}, {1e-6, "um"}, {1e-9, "nm"}, {1e-12, "pm"}}};
    const double a = std::abs(metres);
    if (a == 0.0) return "0 m";
    for (const auto& [scale, name] : units) {
        if (a >= scale || scale == 1e-12) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4g %s", metres / scale, name);
            return buf;
        }
    }
    return "0 m";
}

}  // namespace evf
