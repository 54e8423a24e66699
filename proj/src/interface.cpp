#include "sgscert/interface.hpp"

#include <algorithm>

#include "sgscert/errors.hpp"

namespace sgscert {

const char* to_string(InterfaceKind k)
{
    return k == InterfaceKind::General ? "general" : "dislocation";
}

void require_below_spectrum(const Interval& lambda, double inf_v, const char* what)
{
    if (!(lambda.hi() < inf_v)) {
        throw SpectralConditionFailure("spectral condition violated: sup lambda = " + format_double(lambda.hi()) +
                                       " is not below inf " + what + " = " + format_double(inf_v));
    }
}

InterfaceSpec::InterfaceSpec(const Potential& v1, const Potential& v2, const Interval& lambda)
    : v1_(v1), v2_(v2), base_(v1), lambda_(lambda)
{
    require_below_spectrum(lambda, std::min(v1.inf_over_period(), v2.inf_over_period()), "min(V1, V2)");
}

InterfaceSpec InterfaceSpec::general(const Potential& v1, const Potential& v2, const Interval& lambda)
{
    return InterfaceSpec(v1, v2, lambda);
}

InterfaceSpec InterfaceSpec::dislocation(const Potential& v0, const Interval& tau, const Interval& lambda)
{
    return dislocation(v0, tau, tau, lambda);
}

InterfaceSpec InterfaceSpec::dislocation(const Potential& v0, const Interval& tau_right, const Interval& tau_left,
                                         const Interval& lambda)
{
    InterfaceSpec s(v0.shifted(tau_right), v0.shifted(-tau_left), lambda);
    s.kind_ = InterfaceKind::Dislocation;
    s.base_ = v0;
    s.tau_right_ = tau_right;
    s.tau_left_ = tau_left;
    return s;
}

}  // namespace sgscert
