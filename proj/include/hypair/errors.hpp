// hypair: pairings on genus-2 hyperelliptic curves
// Copyright 2026 The hypair Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace hypair {

/// Base class for all library errors. `code()` is a stable machine-readable
/// tag (also used by the CLI for JSON diagnostics on stderr).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define HYPAIR_DEFINE_ERROR(NAME)                                              \
    class NAME : public Error {                                                \
    public:                                                                    \
        explicit NAME(const std::string& what) : Error(#NAME, what) {}         \
    }

// field
HYPAIR_DEFINE_ERROR(CompositeCharacteristic);
HYPAIR_DEFINE_ERROR(SearchExhausted);
HYPAIR_DEFINE_ERROR(DescriptorMismatch);
HYPAIR_DEFINE_ERROR(DivisionByZero);
HYPAIR_DEFINE_ERROR(NotADivisor);
// curve
HYPAIR_DEFINE_ERROR(NotMonic);
HYPAIR_DEFINE_ERROR(DegreeOutOfRange);
HYPAIR_DEFINE_ERROR(SingularCurve);
HYPAIR_DEFINE_ERROR(TooLarge);
HYPAIR_DEFINE_ERROR(PointNotOnCurve);
// jacobian
HYPAIR_DEFINE_ERROR(InvariantViolation);
HYPAIR_DEFINE_ERROR(ZeroEncountered);
HYPAIR_DEFINE_ERROR(NoTorsion);
HYPAIR_DEFINE_ERROR(RetriesExhausted);
HYPAIR_DEFINE_ERROR(ProjectionDegenerate);
// miller
HYPAIR_DEFINE_ERROR(OrderMismatch);
HYPAIR_DEFINE_ERROR(BadH);
// pairings
HYPAIR_DEFINE_ERROR(ZeroInput);
HYPAIR_DEFINE_ERROR(NotInEigenspace);
HYPAIR_DEFINE_ERROR(BadExpansion);
HYPAIR_DEFINE_ERROR(BadSpec);
HYPAIR_DEFINE_ERROR(BadTwistExponent);
HYPAIR_DEFINE_ERROR(UnknownPairing);
// pfsearch
HYPAIR_DEFINE_ERROR(NotCoprime);
// cli / io
HYPAIR_DEFINE_ERROR(ParseError);

#undef HYPAIR_DEFINE_ERROR

}  // namespace hypair
