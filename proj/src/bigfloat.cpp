#include "fperr/bigfloat.hpp"

#include <utility>
#include <vector>

namespace fperr {

BigFloat::BigFloat(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_nan(v_);
}

BigFloat::BigFloat(double value, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);   // doubles convert exactly at prec >= 53
}

BigFloat::BigFloat(const char* decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_str(v_, decimal, 10, MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    if (this != &other) mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

std::string BigFloat::to_decimal(int digits) const {
    std::vector<char> buf(static_cast<size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
    return std::string(buf.data());
}

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sub(const BigFloat& rhs) const {
    BigFloat r(precision());
    mpfr_sub(r.v_, v_, rhs.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::div(const BigFloat& rhs) const {
    BigFloat r(precision());
    mpfr_div(r.v_, v_, rhs.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::apply(OpKind k, const BigFloat& a, const BigFloat* b) {
    BigFloat r(a.precision());
    mpfr_srcptr av = a.v_;
    mpfr_srcptr bv = b ? b->v_ : nullptr;
    switch (k) {
        case OpKind::Add: mpfr_add(r.v_, av, bv, MPFR_RNDN); break;
        case OpKind::Sub: mpfr_sub(r.v_, av, bv, MPFR_RNDN); break;
        case OpKind::Mul: mpfr_mul(r.v_, av, bv, MPFR_RNDN); break;
        case OpKind::Div: mpfr_div(r.v_, av, bv, MPFR_RNDN); break;
        case OpKind::Sin: mpfr_sin(r.v_, av, MPFR_RNDN); break;
        case OpKind::Cos: mpfr_cos(r.v_, av, MPFR_RNDN); break;
        case OpKind::Tan: mpfr_tan(r.v_, av, MPFR_RNDN); break;
        case OpKind::Asin: mpfr_asin(r.v_, av, MPFR_RNDN); break;
        case OpKind::Acos: mpfr_acos(r.v_, av, MPFR_RNDN); break;
        case OpKind::Atan: mpfr_atan(r.v_, av, MPFR_RNDN); break;
        case OpKind::Exp: mpfr_exp(r.v_, av, MPFR_RNDN); break;
        case OpKind::Log: mpfr_log(r.v_, av, MPFR_RNDN); break;
        case OpKind::Sqrt: mpfr_sqrt(r.v_, av, MPFR_RNDN); break;
        case OpKind::Sinh: mpfr_sinh(r.v_, av, MPFR_RNDN); break;
        case OpKind::Cosh: mpfr_cosh(r.v_, av, MPFR_RNDN); break;
        case OpKind::Tanh: mpfr_tanh(r.v_, av, MPFR_RNDN); break;
        case OpKind::Pow: mpfr_pow(r.v_, av, bv, MPFR_RNDN); break;
    }
    return r;
}

namespace {

/// Same finite-argument domain screen as the double-precision path.
bool big_violates_domain(OpKind k, const BigFloat& a) {
    if (a.is_nan() || a.is_inf()) return false;
    switch (k) {
        case OpKind::Log: return a.cmp(0.0) <= 0;
        case OpKind::Sqrt: return a.cmp(0.0) < 0;
        case OpKind::Asin:
        case OpKind::Acos: return a.abs().cmp(1.0) > 0;
        default: return false;
    }
}

} // namespace

BigFloat BigCtx::op(OpKind k, const BigFloat& a) const {
    if (big_violates_domain(k, a)) throw OracleDomainError(k);
    return BigFloat::apply(k, a, nullptr);
}

BigFloat BigCtx::op(OpKind k, const BigFloat& a, const BigFloat& b) const {
    if (big_violates_domain(k, a)) throw OracleDomainError(k);
    return BigFloat::apply(k, a, &b);
}

} // namespace fperr
