#pragma once

#include <stdexcept>
#include <string>

namespace avlab {

// all numeric failure modes funnel through this so the CLI can map them to
// exit code 3 with a stable diagnostic name
class NumericError : public std::runtime_error {
public:
    NumericError(std::string name, const std::string& msg)
        : std::runtime_error(name + ": " + msg), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }
private:
    std::string name_;
};

#define AVLAB_DEFINE_ERROR(Name)                                    \
    class Name : public NumericError {                              \
    public:                                                         \
        explicit Name(const std::string& msg)                       \
            : NumericError(#Name, msg) {}                           \
    }

AVLAB_DEFINE_ERROR(PoleAtOne);
AVLAB_DEFINE_ERROR(RangeExceeded);
AVLAB_DEFINE_ERROR(DeltaPole);
AVLAB_DEFINE_ERROR(RangeError);
AVLAB_DEFINE_ERROR(QuadratureNotConverged);
AVLAB_DEFINE_ERROR(BoundaryTooClose);
AVLAB_DEFINE_ERROR(NoConvergence);
AVLAB_DEFINE_ERROR(DepthExceeded);
AVLAB_DEFINE_ERROR(NewtonDiverged);
AVLAB_DEFINE_ERROR(DerivativeVanished);
AVLAB_DEFINE_ERROR(NotFound);
AVLAB_DEFINE_ERROR(AlphaZero);
AVLAB_DEFINE_ERROR(TooCloseToRoot);
AVLAB_DEFINE_ERROR(NearZeroOfZeta);

#undef AVLAB_DEFINE_ERROR

} // namespace avlab
