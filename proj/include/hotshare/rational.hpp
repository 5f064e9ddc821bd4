#pragma once

#include <gmpxx.h>
#include <string>
#include <stdexcept>

namespace hotshare {

// Exact rational scalar used everywhere outside the oracle and the search
// fast-scan. mpq_class arithmetic is canonical as long as fractions are
// canonicalized on construction, which the helpers below guarantee.
using Rat = mpq_class;

inline Rat frac(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
inline const Rat& rat_min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline Rat clamp01(const Rat& x) {
    if (x < 0) return Rat(0);
    if (x > 1) return Rat(1);
    return x;
}

// Parses "p/q", "p", or a plain decimal like "0.25" / "-1.5e-2" into an exact
// rational. Decimal text is read digit-exactly (0.1 -> 1/10, never a binary
// approximation).
Rat parse_rational(const std::string& text);

// Canonical display form: "p" when the denominator is 1, else "p/q".
std::string rat_to_string(const Rat& x);

// Exact decimal rendering with `digits` significant digits (round half to
// even), done in integer arithmetic so output bytes depend only on the value.
std::string rat_to_decimal(const Rat& x, int digits = 12);

} // namespace hotshare
