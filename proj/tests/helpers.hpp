#pragma once

#include <string>

#include "opart/real.hpp"
#include "opart/table.hpp"

namespace opart_test {

// |a - b| <= 10^-digits * max(|a|, |b|)
inline bool rel_close(const opart::Real& a, const opart::Real& b, long digits) {
    using namespace opart;
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    Real ref = fmax(abs(a).rounded_to(p), abs(b).rounded_to(p));
    if (ref.is_zero()) return abs(a - b).is_zero();
    return abs(a - b) <= ref * Real::pow10(-digits, p);
}

inline bool close_to(const opart::Real& a, const char* literal, long digits) {
    return rel_close(a, opart::Real::of_str(literal, a.prec() + 64), digits);
}

// shared small table, built once
inline const opart::OverpartitionTable& table600() {
    static const opart::OverpartitionTable t = opart::series_table(600);
    return t;
}

}  // namespace opart_test
