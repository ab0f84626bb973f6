#pragma once

#include <stdexcept>
#include <string>

namespace rieszlab {

// Broad classes used by the CLI to map failures onto exit codes.
enum class ErrorClass { config, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

private:
    ErrorClass cls_;
};

#define RIESZLAB_DEFINE_ERROR(Name, Cls)                                              \
    class Name : public Error {                                                       \
    public:                                                                           \
        explicit Name(const std::string& what) : Error(ErrorClass::Cls, #Name ": " + what) {} \
    }

RIESZLAB_DEFINE_ERROR(PoleError, numeric);
RIESZLAB_DEFINE_ERROR(DomainTagError, numeric);
RIESZLAB_DEFINE_ERROR(DecayError, numeric);
RIESZLAB_DEFINE_ERROR(SingularPoint, numeric);
RIESZLAB_DEFINE_ERROR(UnsupportedOrder, numeric);
RIESZLAB_DEFINE_ERROR(EmptyWindow, numeric);
RIESZLAB_DEFINE_ERROR(GridIncompatible, config);
RIESZLAB_DEFINE_ERROR(RangeError, config);
RIESZLAB_DEFINE_ERROR(SpecError, config);
RIESZLAB_DEFINE_ERROR(HypothesisError, config);
RIESZLAB_DEFINE_ERROR(ConfigError, config);

#undef RIESZLAB_DEFINE_ERROR

}  // namespace rieszlab
