#pragma once

// Unit conversions at the config boundary. Everything internal is SI
// (Pa, kg, m, s); decks and reports use bar, days, m3/day, tonne/day.
namespace nearwell::units {

inline constexpr double bar = 1.0e5;     // Pa
inline constexpr double day = 86400.0;   // s
inline constexpr double tonne = 1000.0;  // kg
inline constexpr double gravity = 9.81;  // m/s^2

}  // namespace nearwell::units
