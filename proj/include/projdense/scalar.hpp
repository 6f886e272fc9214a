#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <variant>

#include <nlohmann/json_fwd.hpp>

#include "projdense/padic.hpp"

namespace projdense {

enum class FieldKind { Real, Complex, Padic };

/// Which local field we are working over, plus its working precision.
struct FieldDescriptor {
    FieldKind kind = FieldKind::Real;
    long p = 0;                              // Padic only
    int precision = Padic::kDefaultPrecision;  // p-adic mantissa digits

    static FieldDescriptor real() { return {FieldKind::Real, 0, 53}; }
    static FieldDescriptor complex() { return {FieldKind::Complex, 0, 53}; }
    static FieldDescriptor padic(long prime, int prec = Padic::kDefaultPrecision) {
        if (prime < 2 || !is_prime(prime)) throw std::invalid_argument("p must be prime");
        if (prec < 1) throw std::invalid_argument("precision must be >= 1");
        return {FieldKind::Padic, prime, prec};
    }

    bool archimedean() const { return kind != FieldKind::Padic; }

    static bool is_prime(long n) {
        if (n < 2) return false;
        for (long d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    friend bool operator==(const FieldDescriptor& a, const FieldDescriptor& b) {
        return a.kind == b.kind && a.p == b.p;
    }
};

// Scalar concept used by the templated linear algebra: double,
// std::complex<double>, or Padic, with abs_value giving |.| as a real.
inline double abs_value(double x) { return std::abs(x); }
inline double abs_value(const std::complex<double>& x) { return std::abs(x); }
inline double abs_value(const Padic& x) { return x.abs(); }

inline double conj_mult_real(double a, double b) { return a * b; }
inline std::complex<double> conj_mult_real(const std::complex<double>& a,
                                           const std::complex<double>& b) {
    return std::conj(a) * b;
}

/// Boundary type for JSON/CLI: a tagged value of any supported field.
struct Scalar {
    FieldDescriptor field;
    std::variant<double, std::complex<double>, Padic> payload;

    double abs() const {
        return std::visit([](const auto& v) { return abs_value(v); }, payload);
    }
};

void to_json(nlohmann::json& j, const Scalar& s);

}  // namespace projdense
