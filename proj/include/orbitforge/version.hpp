#pragma once

namespace orbitforge {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kSchema = "orbitforge-v1";
inline constexpr const char* kMonomialOrder = "grlex-rowmajor-v1";
inline constexpr const char* kMinorSignConvention = "unsigned-sorted-submatrix";
inline constexpr const char* kOmegaSignPattern = "antidiagonal-alternating-plus-first";

}  // namespace orbitforge
