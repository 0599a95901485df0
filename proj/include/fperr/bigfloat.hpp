#pragma once

#include "fperr/op.hpp"

#include <mpfr.h>

#include <stdexcept>
#include <string>

namespace fperr {

/// Thrown when a high-precision evaluation hits a mathematical domain
/// violation (same rules as the double-precision DomainError).
class OracleDomainError : public std::runtime_error {
public:
    explicit OracleDomainError(OpKind op)
        : std::runtime_error(std::string("oracle domain error in ") + to_string(op)) {}
};

/// Minimal RAII wrapper over an mpfr_t. Each value carries its own precision;
/// arithmetic results take the precision of the left operand (all values in
/// one oracle evaluation share the context's precision, so this never mixes).
/// All rounding is to-nearest.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 256);
    BigFloat(double value, mpfr_prec_t prec);
    /// Parse a decimal literal at the given precision (round-to-nearest).
    BigFloat(const char* decimal, mpfr_prec_t prec);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    [[nodiscard]] mpfr_prec_t precision() const noexcept { return mpfr_get_prec(v_); }
    [[nodiscard]] double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Decimal rendering with the requested number of significant digits.
    [[nodiscard]] std::string to_decimal(int digits) const;

    [[nodiscard]] bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
    [[nodiscard]] bool is_inf() const noexcept { return mpfr_inf_p(v_) != 0; }
    [[nodiscard]] bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] int sign() const noexcept { return mpfr_sgn(v_); }
    /// Compare against a double (exact, no rounding of either side).
    [[nodiscard]] int cmp(double d) const noexcept { return mpfr_cmp_d(v_, d); }

    [[nodiscard]] BigFloat abs() const;
    [[nodiscard]] BigFloat sub(const BigFloat& rhs) const;
    [[nodiscard]] BigFloat div(const BigFloat& rhs) const;

    /// Apply one atomic op at the precision of `a` (IEEE-style special-value
    /// behavior; domain violations are the CALLER's job to screen).
    static BigFloat apply(OpKind k, const BigFloat& a, const BigFloat* b);

    [[nodiscard]] mpfr_srcptr raw() const noexcept { return v_; }

private:
    mpfr_t v_;
};

/// High-precision analogue of DoubleCtx: evaluates a corpus body with MPFR
/// values, enforcing the same domain rules (OracleDomainError instead of
/// DomainError). No tracing or perturbation — the oracle only ever needs the
/// plain result.
class BigCtx {
public:
    using value_type = BigFloat;

    explicit BigCtx(mpfr_prec_t prec) : prec_(prec) {}

    [[nodiscard]] mpfr_prec_t precision() const noexcept { return prec_; }

    [[nodiscard]] BigFloat input(double x) const { return BigFloat(x, prec_); }
    [[nodiscard]] BigFloat constant(const char* decimal) const { return BigFloat(decimal, prec_); }

    BigFloat op(OpKind k, const BigFloat& a) const;
    BigFloat op(OpKind k, const BigFloat& a, const BigFloat& b) const;

private:
    mpfr_prec_t prec_;
};

} // namespace fperr
