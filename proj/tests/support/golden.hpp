#pragma once

// Values produced by tests/oracles/reference.py (scipy DOP853 method of steps,
// adaptive quadrature, sympy) and frozen here.

namespace golden {

// Wright p = 1.6, constant history 1.
inline constexpr double kP16FirstExtremumT = 1.9887354417933292;
inline constexpr double kP16FirstExtremumX = -0.5933696009950179;
inline constexpr double kP16Extrema[4] = {-0.5933696009950179, 0.8693352432377678, -0.5393622992112912,
                                          0.7653634431118614};

// Wright p = 1.5, constant history 1: x(50).
inline constexpr double kP15X50 = -0.006209101716746568;
// Wright p = 1.5: F1(0.5) and F1(F1(0.5)).
inline constexpr double kP15F1Half = -0.36095105169944847;
inline constexpr double kP15F1F1Half = 0.4607306883161978;

// Wright p = 1.65, constant history 1, windows [400, 450] and [400, 500].
inline constexpr double kP165m = -0.5439737193396476;
inline constexpr double kP165M = 0.8049073673307805;

// A(x2) = B(x2) for a = -1.5, b = 0.75.
inline constexpr double kABAtX2 = -0.5672093513510137;
// B(1) for a = -1, b = 1.
inline constexpr double kBAt1 = -0.18906978378367123;

// L(-1.25, -1) and the two non-trivial roots of dL/ds at zeta = -1.5.
inline constexpr double kLCorner = -0.000694571722373021;
inline constexpr double kAPlusAtMinus15 = -1.2991228745043102;
inline constexpr double kAMinusAtMinus15 = -12.70087712549569;

}  // namespace golden
