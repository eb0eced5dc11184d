#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace ktwin {

// Long Weierstrass model over Q with its model discriminant.
struct CurveModel {
    int64_t a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;
    int64_t disc = 0;

    bool good_reduction(uint64_t p) const;
    std::string str() const;  // "a1,a2,a3,a4,a6"
};

// Validates coefficients and computes the discriminant from the b-quantities.
// Raises SingularCurve when the discriminant vanishes.
CurveModel make_curve(int64_t a1, int64_t a2, int64_t a3, int64_t a4, int64_t a6);

// Parses the shared CLI syntax "a1,a2,a3,a4,a6".
CurveModel parse_curve(std::string_view text);

struct FrobeniusRecord {
    uint64_t p = 0;
    uint64_t np = 0;  // |E(F_p)|, point at infinity included
    int64_t ap = 0;   // trace of Frobenius, np = p + 1 - ap
};

// Exact point count by direct enumeration (quadratic-character counting for
// p >= 5, full coordinate scan for p = 2, 3). Raises BadReduction if p | disc.
uint64_t count_points_naive(const CurveModel& curve, uint64_t p);

// Group-order search on the Hasse interval with baby-step/giant-step kill
// scans over random points, twisting when the order stays ambiguous, and a
// final exhaustive fallback. Requires p > 229. Deterministic.
uint64_t count_points_bsgs(const CurveModel& curve, uint64_t p);

// Dispatch: enumeration below 1e4, BSGS above.
FrobeniusRecord reduce_and_count(const CurveModel& curve, uint64_t p);

}  // namespace ktwin
