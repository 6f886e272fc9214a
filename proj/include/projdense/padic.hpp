#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace projdense {

using BigInt = boost::multiprecision::cpp_int;

struct PadicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionLoss : PadicError {
    using PadicError::PadicError;
};

/// Element of Q_p in capped-relative representation: x = p^v * u with u a
/// unit known modulo p^digits, digits <= N (the configured precision).
/// Zero is the unique element with valuation +inf.
class Padic {
public:
    static constexpr std::int64_t kInfValuation = std::numeric_limits<std::int64_t>::max();
    static constexpr int kDefaultPrecision = 16;

    Padic() = default;  // universal zero, compatible with any prime

    Padic(long prime, int precision, std::int64_t valuation, BigInt unit)
        : p_(prime), prec_(precision), val_(valuation), unit_(std::move(unit)) {
        normalize();
    }

    static Padic zero(long prime, int precision = kDefaultPrecision) {
        Padic z;
        z.p_ = prime;
        z.prec_ = precision;
        return z;
    }

    static Padic from_integer(long prime, const BigInt& n, int precision = kDefaultPrecision) {
        if (prime < 2) throw PadicError("p must be >= 2");
        if (n == 0) return zero(prime, precision);
        BigInt u = n;
        std::int64_t v = 0;
        while (u % prime == 0) {
            u /= prime;
            ++v;
        }
        return Padic(prime, precision, v, u);
    }

    static Padic from_rational(long prime, const BigInt& num, const BigInt& den,
                               int precision = kDefaultPrecision) {
        if (den == 0) throw PadicError("division by zero");
        return from_integer(prime, num, precision) / from_integer(prime, den, precision);
    }

    bool is_zero() const { return exact_ && val_ == kInfValuation; }

    /// True for a value indistinguishable from zero at working precision:
    /// O(p^A) with no digit known. Its valuation is indeterminate.
    bool is_inexact_zero() const { return !exact_; }

    static Padic inexact_zero(long prime, int precision, std::int64_t abs_bound) {
        Padic z = zero(prime, precision);
        z.exact_ = false;
        z.val_ = abs_bound;  // value is O(p^abs_bound)
        return z;
    }

    long prime() const { return p_; }
    int precision() const { return prec_; }
    std::int64_t valuation() const {
        if (is_inexact_zero())
            throw PrecisionLoss("valuation indeterminate: cancellation consumed all digits");
        return val_;
    }
    const BigInt& unit() const { return unit_; }

    /// Lower bound on the valuation that never throws: exact values report
    /// their valuation, an inexact zero O(p^A) reports A.
    std::int64_t valuation_bound() const { return val_; }

    /// Upper bound on |x|_p that never throws: exact for exact values,
    /// p^{-A} for an inexact zero O(p^A).
    double abs_bound() const {
        if (val_ == kInfValuation) return 0.0;
        return std::pow(static_cast<double>(p_), -static_cast<double>(val_));
    }

    /// Digits of relative precision actually known (<= configured N).
    int known_digits() const { return digits_; }

    /// |x|_p = p^{-v}, 0 for the zero element.
    double abs() const {
        if (is_inexact_zero())
            throw PrecisionLoss("absolute value indeterminate: cancellation consumed all digits");
        if (is_zero()) return 0.0;
        return std::pow(static_cast<double>(p_), -static_cast<double>(val_));
    }

    Padic operator-() const {
        if (is_zero()) return *this;
        Padic r = *this;
        r.unit_ = -r.unit_;
        return r;
    }

    friend Padic operator+(const Padic& a, const Padic& b) {
        const Padic* x = &a;
        const Padic* y = &b;
        if (x->p_ == 0) std::swap(x, y);
        if (y->p_ != 0 && x->p_ != y->p_) throw PadicError("mixed primes");
        if (x->is_inexact_zero() || y->is_inexact_zero()) return add_with_fuzz(*x, *y);
        if (y->is_zero()) return *x;
        if (x->is_zero()) return *y;
        std::int64_t vmin = std::min(x->val_, y->val_);
        // Both units are exact integers; the sum's extra valuation is exact
        // as long as it stays below the known digit count.
        BigInt s = x->unit_ * pow_p(x->p_, x->val_ - vmin) +
                   y->unit_ * pow_p(y->p_, y->val_ - vmin);
        if (s == 0) return zero(x->p_, x->prec_);
        std::int64_t extra = 0;
        BigInt u = s;
        while (u % x->p_ == 0) {
            u /= x->p_;
            ++extra;
        }
        // Absolute precision of the sum is min over the operands; cancelled
        // digits come straight out of the relative precision.
        std::int64_t abs_prec = std::min(x->val_ + x->digits_, y->val_ + y->digits_);
        int d = static_cast<int>(abs_prec - (vmin + extra));
        if (d <= 0) return inexact_zero(x->p_, x->prec_, abs_prec);
        Padic r;
        r.p_ = x->p_;
        r.prec_ = x->prec_;
        r.val_ = vmin + extra;
        r.digits_ = d;
        r.unit_ = u;  // exact; only d digits of it are guaranteed correct
        return r;
    }

    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }

    friend Padic operator*(const Padic& a, const Padic& b) {
        const Padic* x = &a;
        const Padic* y = &b;
        if (x->p_ == 0) std::swap(x, y);
        if (y->p_ != 0 && x->p_ != y->p_) throw PadicError("mixed primes");
        if (x->is_zero() || y->is_zero()) return zero(x->p_ ? x->p_ : 2, x->prec_);
        if (x->is_inexact_zero() || y->is_inexact_zero()) {
            const Padic* fz = x->is_inexact_zero() ? x : y;
            const Padic* ot = x->is_inexact_zero() ? y : x;
            std::int64_t shift = ot->is_inexact_zero() ? ot->val_ : ot->val_;
            return inexact_zero(x->p_, x->prec_, fz->val_ + shift);
        }
        Padic r;
        r.p_ = x->p_;
        r.prec_ = x->prec_;
        r.val_ = x->val_ + y->val_;
        r.digits_ = std::min(x->digits_, y->digits_);
        // keep the unit exact; correctness is still only mod p^digits
        r.unit_ = x->unit_ * y->unit_;
        return r;
    }

    Padic inverse() const {
        if (is_inexact_zero())
            throw PrecisionLoss("cannot invert a value indistinguishable from zero");
        if (is_zero()) throw PadicError("division by zero");
        Padic r;
        r.p_ = p_;
        r.prec_ = prec_;
        r.val_ = -val_;
        r.digits_ = digits_;
        r.unit_ = mod_inverse(unit_ % pow_p(p_, digits_), pow_p(p_, digits_));
        return r;
    }

    friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }

    Padic& operator+=(const Padic& o) { return *this = *this + o; }
    Padic& operator-=(const Padic& o) { return *this = *this - o; }
    Padic& operator*=(const Padic& o) { return *this = *this * o; }
    Padic& operator/=(const Padic& o) { return *this = *this / o; }

    /// Equality modulo the shared known precision. An inexact zero O(p^A)
    /// matches anything of valuation >= A.
    friend bool operator==(const Padic& a, const Padic& b) {
        if (a.is_inexact_zero() || b.is_inexact_zero()) {
            const Padic& fz = a.is_inexact_zero() ? a : b;
            const Padic& ot = a.is_inexact_zero() ? b : a;
            if (ot.is_inexact_zero() || ot.is_zero()) return true;
            return ot.val_ >= fz.val_;
        }
        if (a.is_zero() && b.is_zero()) return true;
        if (a.is_zero() || b.is_zero()) return false;
        if (a.val_ != b.val_) return false;
        int d = std::min(a.digits_, b.digits_);
        BigInt m = pow_p(a.p_, d);
        BigInt x = a.unit_ % m, y = b.unit_ % m;
        if (x < 0) x += m;
        if (y < 0) y += m;
        return x == y;
    }
    friend bool operator!=(const Padic& a, const Padic& b) { return !(a == b); }

    std::string str() const {
        if (is_inexact_zero())
            return "O(" + std::to_string(p_) + "^" + std::to_string(val_) + ")";
        if (is_zero()) return "0";
        return unit_.str() + "*" + std::to_string(p_) + "^" + std::to_string(val_);
    }

    static BigInt pow_p(long p, std::int64_t e) {
        BigInt r = 1, b = p;
        while (e > 0) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }

private:
    static Padic add_with_fuzz(const Padic& a, const Padic& b) {
        const Padic& fz = a.is_inexact_zero() ? a : b;
        const Padic& ot = a.is_inexact_zero() ? b : a;
        if (ot.is_inexact_zero()) return inexact_zero(a.p_, a.prec_, std::min(a.val_, b.val_));
        if (ot.is_zero()) return fz;
        if (ot.val_ >= fz.val_) return inexact_zero(fz.p_, fz.prec_, fz.val_);
        Padic r = ot;
        r.digits_ = static_cast<int>(std::min<std::int64_t>(r.digits_, fz.val_ - ot.val_));
        return r;
    }

    BigInt modulus() const { return pow_p(p_, digits_); }

    void normalize() {
        if (p_ < 2) throw PadicError("p must be >= 2");
        if (prec_ < 1) throw PadicError("precision must be >= 1");
        digits_ = prec_;
        if (unit_ == 0) {
            val_ = kInfValuation;
            return;
        }
        while (unit_ % p_ == 0) {
            unit_ /= p_;
            ++val_;
        }
    }

    static BigInt mod_inverse(BigInt a, const BigInt& m) {
        BigInt g = m, x = 0, x1 = 1;
        a %= m;
        if (a < 0) a += m;
        BigInt b = a;
        while (b != 0) {
            BigInt q = g / b;
            BigInt t = g - q * b;
            g = b;
            b = t;
            t = x - q * x1;
            x = x1;
            x1 = t;
        }
        if (g != 1) throw PadicError("unit not invertible (internal)");
        x %= m;
        if (x < 0) x += m;
        return x;
    }

    long p_ = 0;
    int prec_ = kDefaultPrecision;
    int digits_ = kDefaultPrecision;
    std::int64_t val_ = kInfValuation;
    BigInt unit_ = 0;
    bool exact_ = true;
};

inline Padic operator*(long a, const Padic& x) {
    if (x.prime() == 0) return x;
    return Padic::from_integer(x.prime(), a, x.precision()) * x;
}

}  // namespace projdense
