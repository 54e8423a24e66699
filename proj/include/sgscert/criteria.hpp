#pragma once

#include <string>

#include "sgscert/interface.hpp"
#include "sgscert/interval.hpp"

namespace sgscert {

struct CriterionResult {
    Interval I1;
    Interval I2;
    // multiplied by sqrt(a - lambda) sqrt(b - lambda) of the respective side
    bool scaled = false;

    Sign sign1() const { return sign_verdict(I1); }
    Sign sign2() const { return sign_verdict(I2); }
};

enum class Verdict { ExistsUnconditionally, ExistsIfC1LeC2, ExistsIfC1GeC2, Inconclusive };

const char* to_string(Verdict v);

struct ExistenceVerdict {
    Verdict verdict = Verdict::Inconclusive;
    InterfaceKind kind = InterfaceKind::General;

    bool exists() const { return verdict != Verdict::Inconclusive; }
    // One-line justification naming the rule that applied.
    std::string reason() const;
};

ExistenceVerdict existence_verdict(const CriterionResult& result, InterfaceKind kind);

}  // namespace sgscert
