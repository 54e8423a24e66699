#pragma once

#include "sgscert/interval.hpp"
#include "sgscert/potential.hpp"

namespace sgscert {

enum class InterfaceKind { General, Dislocation };

const char* to_string(InterfaceKind k);

// V1 on x >= 0, V2 on x < 0, spectral parameter lambda. A dislocation has
// V1(x) = V0(x + tau_right), V2(x) = V0(x - tau_left).
class InterfaceSpec {
public:
    // Both factories throw SpectralConditionFailure unless
    // sup lambda < min(inf V1, inf V2).
    static InterfaceSpec general(const Potential& v1, const Potential& v2, const Interval& lambda);
    static InterfaceSpec dislocation(const Potential& v0, const Interval& tau, const Interval& lambda);
    static InterfaceSpec dislocation(const Potential& v0, const Interval& tau_right, const Interval& tau_left,
                                     const Interval& lambda);

    InterfaceKind kind() const { return kind_; }
    const Potential& v1() const { return v1_; }
    const Potential& v2() const { return v2_; }
    const Potential& base() const { return base_; }
    const Interval& tau() const { return tau_right_; }
    const Interval& tau_left() const { return tau_left_; }
    bool equal_shifts() const { return tau_right_ == tau_left_; }
    const Interval& lambda() const { return lambda_; }

private:
    InterfaceSpec(const Potential& v1, const Potential& v2, const Interval& lambda);

    InterfaceKind kind_ = InterfaceKind::General;
    Potential v1_, v2_, base_;
    Interval tau_right_, tau_left_;
    Interval lambda_;
};

// Throws SpectralConditionFailure unless sup lambda < inf V for every V given.
void require_below_spectrum(const Interval& lambda, double inf_v, const char* what);

}  // namespace sgscert
