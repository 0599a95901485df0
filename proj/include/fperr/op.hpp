#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace fperr {

/// Atomic floating-point operations the tracer understands. Every arithmetic
/// step of every corpus function maps to exactly one of these.
enum class OpKind : std::uint8_t {
    Add, Sub, Mul, Div,
    Sin, Cos, Tan, Asin, Acos, Atan,
    Exp, Log, Sqrt,
    Sinh, Cosh, Tanh,
    Pow,
};

[[nodiscard]] constexpr bool is_binary(OpKind k) noexcept {
    switch (k) {
        case OpKind::Add:
        case OpKind::Sub:
        case OpKind::Mul:
        case OpKind::Div:
        case OpKind::Pow:
            return true;
        default:
            return false;
    }
}

[[nodiscard]] constexpr bool is_unary(OpKind k) noexcept { return !is_binary(k); }

[[nodiscard]] constexpr const char* to_string(OpKind k) noexcept {
    switch (k) {
        case OpKind::Add: return "add";
        case OpKind::Sub: return "sub";
        case OpKind::Mul: return "mul";
        case OpKind::Div: return "div";
        case OpKind::Sin: return "sin";
        case OpKind::Cos: return "cos";
        case OpKind::Tan: return "tan";
        case OpKind::Asin: return "asin";
        case OpKind::Acos: return "acos";
        case OpKind::Atan: return "atan";
        case OpKind::Exp: return "exp";
        case OpKind::Log: return "log";
        case OpKind::Sqrt: return "sqrt";
        case OpKind::Sinh: return "sinh";
        case OpKind::Cosh: return "cosh";
        case OpKind::Tanh: return "tanh";
        case OpKind::Pow: return "pow";
    }
    return "?";
}

[[nodiscard]] std::optional<OpKind> op_from_string(std::string_view name) noexcept;

} // namespace fperr
