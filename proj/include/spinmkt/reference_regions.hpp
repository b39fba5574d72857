#pragma once

#include <array>

namespace spinmkt {

// Frozen expected boundaries for the reference parameter set (N=128, d=2).
// `regions --paper-table` recomputes every row and must match each present
// cell exactly, blanks included; -1 marks a blank cell.
struct ReferenceRegionsRow {
  int N;
  const char* alpha;
  int d;
  int lambda;
  int g1, g2, g3, g4;
};

inline constexpr std::array<ReferenceRegionsRow, 14> kReferenceRegions = {{
    {128, "5", 2, 7, 39, -1, -1, 89},
    {128, "5", 2, 8, 39, 44, 54, 89},
    {128, "5", 2, 9, 39, 40, 56, 89},
    {128, "5", 2, 10, -1, -1, 57, 89},
    {128, "5", 2, 64, -1, -1, 63, 109},
    {128, "4.1", 2, 7, 33, -1, -1, 95},
    {128, "4.1", 2, 8, 33, 44, 54, 95},
    {128, "4.1", 2, 9, 33, 40, 56, 95},
    {128, "4.1", 2, 10, 33, 38, 57, 95},
    {128, "4.1", 2, 11, 33, 36, 58, 95},
    {128, "4.1", 2, 12, 33, 34, 59, 95},
    {128, "4.1", 2, 13, 33, 33, 59, 95},
    {128, "4.1", 2, 14, -1, -1, 60, 95},
    {128, "4.1", 2, 64, -1, -1, 63, 109},
}};

}  // namespace spinmkt
