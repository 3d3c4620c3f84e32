#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gsw {

using cplx = std::complex<double>;

/// Scalar field of an observation vector. Every vector, noise model and rule
/// evaluation must agree on one field; mixing is rejected at the API boundary.
enum class Field { Real, Complex };

template <typename T>
struct field_of;

template <>
struct field_of<double> {
    static constexpr Field value = Field::Real;
};

template <>
struct field_of<cplx> {
    static constexpr Field value = Field::Complex;
};

template <typename T>
inline constexpr Field field_of_v = field_of<T>::value;

inline const char* to_string(Field f) {
    return f == Field::Real ? "real" : "complex";
}

inline Field field_from_string(std::string_view s) {
    if (s == "real") return Field::Real;
    if (s == "complex") return Field::Complex;
    throw std::invalid_argument("unknown field '" + std::string(s) + "' (expected real|complex)");
}

} // namespace gsw
