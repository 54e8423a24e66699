#include "sgscert/criteria.hpp"

namespace sgscert {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::ExistsUnconditionally: return "ExistsUnconditionally";
    case Verdict::ExistsIfC1LeC2: return "ExistsIf(c1<=c2)";
    case Verdict::ExistsIfC1GeC2: return "ExistsIf(c1>=c2)";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

std::string ExistenceVerdict::reason() const
{
    switch (verdict) {
    case Verdict::ExistsUnconditionally:
        return kind == InterfaceKind::Dislocation
                   ? "dislocation interface with I1 < 0 or I2 < 0 (c1 = c2): a strong ground state exists for any "
                     "Gamma0 and p"
                   : "I1 < 0 and I2 < 0: a strong ground state exists for any Gamma1, Gamma2 and p";
    case Verdict::ExistsIfC1LeC2: return "I1 < 0: a strong ground state exists whenever c1 <= c2";
    case Verdict::ExistsIfC1GeC2: return "I2 < 0: a strong ground state exists whenever c1 >= c2";
    case Verdict::Inconclusive: return "neither criterion integral is certified negative";
    }
    return "";
}

ExistenceVerdict existence_verdict(const CriterionResult& result, InterfaceKind kind)
{
    bool n1 = result.sign1() == Sign::Negative;
    bool n2 = result.sign2() == Sign::Negative;
    ExistenceVerdict v;
    v.kind = kind;
    if (kind == InterfaceKind::Dislocation) {
        v.verdict = n1 || n2 ? Verdict::ExistsUnconditionally : Verdict::Inconclusive;
    } else if (n1 && n2) {
        v.verdict = Verdict::ExistsUnconditionally;
    } else if (n1) {
        v.verdict = Verdict::ExistsIfC1LeC2;
    } else if (n2) {
        v.verdict = Verdict::ExistsIfC1GeC2;
    } else {
        v.verdict = Verdict::Inconclusive;
    }
    return v;
}

}  // namespace sgscert
