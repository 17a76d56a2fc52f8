#pragma once

#include <limits>
#include <string>
#include <variant>

#include "realidx/tolerance.hpp"

namespace realidx {

struct JonesValue {
    int q;
    friend bool operator==(const JonesValue&, const JonesValue&) = default;
};
struct AtLeastFour {
    friend bool operator==(const AtLeastFour&, const AtLeastFour&) = default;
};
struct Forbidden {
    friend bool operator==(const Forbidden&, const Forbidden&) = default;
};

/// Position of an index value relative to {4 cos^2(pi/q) : q >= 3} and [4, inf].
using IndexClass = std::variant<JonesValue, AtLeastFour, Forbidden>;

std::string to_string(const IndexClass& c);

/// 4 cos^2(pi / q). Throws InvalidQ for q < 3.
double jones_value(int q);

/// Smallest q with 4 - jones_value(q) < 2 tol; beyond it the discrete values are
/// indistinguishable from the accumulation point at the given tolerance.
int jones_q_max(double tol);

/// JonesValue(q) for the nearest q <= jones_q_max(tol) within tol, else AtLeastFour
/// for v >= 4 - tol, else Forbidden. +inf is AtLeastFour; NaN throws InvalidInput.
IndexClass classify_index_value(double v, double tol = tol::kIndex);

struct IndexValue {
    double value = 0.0;
    IndexClass classification = Forbidden{};

    static IndexValue of(double v, double tol = tol::kIndex) { return {v, classify_index_value(v, tol)}; }
    static IndexValue infinite() { return of(std::numeric_limits<double>::infinity()); }
};

}  // namespace realidx
