#pragma once

// The centrally symmetric Lorenz interval map underlying the invariant-set
// constructions: exact evaluation, the 2-periodic point p*, the two mixing
// components for the first parameter window, and the critical parameters
// eps_n = 1 - 2^(1/2^n)/2.

#include "quadmap/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace quadmap {

struct Interval {
    Rat lo, hi;
};

// L_eps on [eps/2, 1 - eps/2], two affine branches of slope 2(1-eps) with a
// discontinuity at 1/2.
class LorenzMap {
public:
    explicit LorenzMap(Rat eps) : eps_(std::move(eps)) {
        if (eps_ < 0 || 2 * eps_ >= 1)
            throw std::invalid_argument("coupling parameter must lie in [0, 1/2)");
    }

    const Rat& eps() const { return eps_; }
    Rat domain_lo() const { return eps_ / 2; }
    Rat domain_hi() const { return 1 - eps_ / 2; }
    Rat slope() const { return 2 * (1 - eps_); }

    Rat operator()(const Rat& v) const {
        if (2 * v == 1) throw std::domain_error("critical point");
        if (v < domain_lo() || v > domain_hi())
            throw std::domain_error("outside domain");
        if (2 * v < 1) return slope() * v + eps_ / 2;
        return slope() * v + 3 * eps_ / 2 - 1;
    }

    Rat iterate(Rat v, int n) const {
        for (int i = 0; i < n; ++i) v = (*this)(v);
        return v;
    }

    // Image of an interval not straddling the discontinuity.
    Interval image(const Interval& i) const {
        if (i.lo > i.hi) throw std::invalid_argument("inverted interval");
        if (2 * i.lo < 1 && 2 * i.hi > 1)
            throw std::domain_error("straddles critical point");
        // Endpoints at 1/2 are evaluated on the branch covering the interval.
        Rat a = branch_value(i.lo, 2 * i.hi <= 1);
        Rat b = branch_value(i.hi, 2 * i.hi <= 1);
        return {a, b};
    }

private:
    Rat branch_value(const Rat& v, bool lower_branch) const {
        return lower_branch ? slope() * v + eps_ / 2
                            : slope() * v + 3 * eps_ / 2 - 1;
    }

    Rat eps_;
};

// The 2-periodic point p* <-> 1 - p*.
inline Rat p_star(const Rat& eps) {
    return (eps - 2) / (4 * eps - 6);
}

// eps >= 1 - sqrt(2)/2, decided exactly: equivalent to 2(1-eps)^2 <= 1.
inline bool at_or_above_eps1(const Rat& eps) {
    Rat u = 1 - eps;
    return 2 * u * u <= 1;
}

// eps < 1 - 2^(1/4)/2, decided exactly: equivalent to 8(1-eps)^4 > 1.
inline bool below_eps2(const Rat& eps) {
    Rat u = 1 - eps;
    Rat u2 = u * u;
    return 8 * u2 * u2 > 1;
}

struct MixingComponents {
    std::vector<Interval> first;   // two intervals, swapped with `second` by L
    std::vector<Interval> second;  // one interval around the discontinuity
};

inline MixingComponents mixing_components(const Rat& eps) {
    if (!at_or_above_eps1(eps) || !below_eps2(eps))
        throw std::domain_error("outside parameter window");
    LorenzMap l(eps);
    Rat a = l.domain_lo(), b = l.domain_hi();
    return {{{a, l.iterate(b, 2)}, {l.iterate(a, 2), b}},
            {{l(a), l(b)}}};
}

// eps_n = 1 - 2^(1/2^n)/2 to the working precision of BigFloat (50 digits).
inline BigFloat critical_eps(int n) {
    if (n < 1) throw std::invalid_argument("n must be positive");
    BigFloat e = 1 / BigFloat(1ull << n);  // exponent 1/2^n (n <= 63)
    return 1 - pow(BigFloat(2), e) / 2;
}

}  // namespace quadmap
