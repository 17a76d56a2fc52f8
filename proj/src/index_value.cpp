#include "realidx/index_value.hpp"

#include <cmath>
#include <numbers>

#include "realidx/error.hpp"

namespace realidx {

std::string to_string(const IndexClass& c) {
    if (const auto* j = std::get_if<JonesValue>(&c)) return "JonesValue(" + std::to_string(j->q) + ")";
    if (std::holds_alternative<AtLeastFour>(c)) return "AtLeastFour";
    return "Forbidden";
}

double jones_value(int q) {
    if (q < 3) throw Error(ErrorKind::InvalidQ, "q must be at least 3");
    const double c = std::cos(std::numbers::pi / static_cast<double>(q));
    return 4.0 * c * c;
}

int jones_q_max(double tol) {
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    // 4 - 4cos^2(pi/q) = 4 sin^2(pi/q) decreases in q; start from the asymptotic guess.
    int q = std::max(3, static_cast<int>(std::floor(std::numbers::pi / std::sqrt(0.5 * tol))) - 2);
    while (q > 3 && 4.0 - jones_value(q - 1) < 2.0 * tol) --q;
    while (!(4.0 - jones_value(q) < 2.0 * tol)) ++q;
    return q;
}

IndexClass classify_index_value(double v, double tol) {
    if (std::isnan(v)) throw Error(ErrorKind::InvalidInput, "index value is NaN");
    if (!(tol > 0.0)) throw Error(ErrorKind::InvalidInput, "tolerance must be positive");
    if (std::isinf(v)) return v > 0 ? IndexClass{AtLeastFour{}} : IndexClass{Forbidden{}};
    const int q_max = jones_q_max(tol);
    if (v < 4.0) {
        const double s = std::sqrt(std::max(v, 0.0)) / 2.0;
        const double q_real = std::numbers::pi / std::acos(std::min(s, 1.0));
        const int lo = std::max(3, static_cast<int>(std::floor(q_real)));
        int best = 0;
        double best_err = tol;
        for (int q = lo - 1; q <= lo + 1; ++q) {
            if (q < 3 || q > q_max) continue;
            const double err = std::abs(v - jones_value(q));
            if (err <= best_err) {
                best_err = err;
                best = q;
            }
        }
        if (best != 0) return JonesValue{best};
    } else if (std::abs(v - jones_value(q_max)) <= tol) {
        return JonesValue{q_max};
    }
    if (v >= 4.0 - tol) return AtLeastFour{};
    return Forbidden{};
}

}  // namespace realidx
