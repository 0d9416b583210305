#pragma once

#include <stdexcept>
#include <string>

namespace twistor {

class TwistorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TWISTOR_DEFINE_ERROR(Name)                    \
    class Name : public TwistorError {                \
    public:                                           \
        using TwistorError::TwistorError;             \
    }

TWISTOR_DEFINE_ERROR(NonBasicForm);
TWISTOR_DEFINE_ERROR(ZeroSubstitution);
TWISTOR_DEFINE_ERROR(NotAntisymmetric);
TWISTOR_DEFINE_ERROR(DegreeMismatch);
TWISTOR_DEFINE_ERROR(NonPositiveParameter);
TWISTOR_DEFINE_ERROR(RicciNotPositive);
TWISTOR_DEFINE_ERROR(OnFixedRay);
TWISTOR_DEFINE_ERROR(InsufficientSpan);
TWISTOR_DEFINE_ERROR(NotInvertible);

#undef TWISTOR_DEFINE_ERROR

/// The adaptive integrator could not make progress; carries the last accepted state.
class StepUnderflow : public TwistorError {
public:
    StepUnderflow(const std::string& what, double t, double mu, double rho)
        : TwistorError(what), t(t), mu(mu), rho(rho) {}
    double t, mu, rho;
};

}  // namespace twistor
