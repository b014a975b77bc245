#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pathrun {

// Domain error with a stable machine-readable name. The CLI prints the name
// verbatim and exits 1, so names are part of the tool's contract.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(detail.empty() ? name : name + ": " + detail),
          name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define PATHRUN_DEFINE_ERROR(NAME)                       \
    struct NAME : Error {                                \
        explicit NAME(const std::string& detail = "")    \
            : Error(#NAME, detail) {}                    \
    }

PATHRUN_DEFINE_ERROR(NonRectangular);
PATHRUN_DEFINE_ERROR(UnknownChar);
PATHRUN_DEFINE_ERROR(MissingStart);
PATHRUN_DEFINE_ERROR(MissingGoal);
PATHRUN_DEFINE_ERROR(MultipleStarts);
PATHRUN_DEFINE_ERROR(FrameCapExceeded);
PATHRUN_DEFINE_ERROR(PathCapExceeded);
PATHRUN_DEFINE_ERROR(StateBudgetExceeded);
PATHRUN_DEFINE_ERROR(ZeroField);
PATHRUN_DEFINE_ERROR(SlitBlocked);
PATHRUN_DEFINE_ERROR(Unreachable);
PATHRUN_DEFINE_ERROR(EmptyInput);
PATHRUN_DEFINE_ERROR(NoCompletedRuns);
PATHRUN_DEFINE_ERROR(UnknownKey);
PATHRUN_DEFINE_ERROR(BadValue);

#undef PATHRUN_DEFINE_ERROR

}  // namespace pathrun
