#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sgscert/ode.hpp"
#include "sgscert/quadrature.hpp"
#include "sgscert/scanner.hpp"

namespace sgscert {

// Heat-map colours per CellClass (none, I1neg, I2neg, both).
inline constexpr std::array<std::array<std::uint8_t, 3>, 4> kPalette{{
    {255, 255, 255},
    {230, 159, 0},
    {86, 180, 233},
    {0, 0, 0},
}};

// Columns: <axis>_lo, <axis>_hi per axis, I1_lo, I1_hi, I2_lo, I2_hi, class, note.
// Endpoints use shortest round-trip formatting; unevaluated cells leave the I columns empty.
void write_scan_csv(const ScanResult& r, std::ostream& os);
void write_scan_json(const ScanResult& r, std::ostream& os);
// Binary P6 image, one pixel per cell, second axis increasing upwards.
void write_scan_ppm(const ScanResult& r, std::ostream& os);

struct CheckReport {
    std::string interface;
    ExistenceReport existence;
    bool has_scaled = false;
    CriterionResult scaled;
    bool has_published = false;
    CriterionResult published;
};

void write_check_text(const CheckReport& r, std::ostream& os);
void write_check_json(const CheckReport& r, std::ostream& os);

// One row per quantity: name, x_lo, x_hi, lo, hi (x empty for scalars).
struct BlochRow {
    std::string name;
    bool has_x = false;
    Interval x;
    Interval value;
};

void write_bloch_csv(const std::vector<BlochRow>& rows, std::ostream& os);
void write_bloch_json(const std::vector<BlochRow>& rows, std::ostream& os);

}  // namespace sgscert
