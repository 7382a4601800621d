#ifndef LASEKIT_ERROR_HPP
#define LASEKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace lasekit {

enum class ErrorCode {
    InvalidArgument,
    Singular,
    Stiffness,
    StepLimit,
    NotPhysical,
};

/// Base exception for every failure raised by the core library.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), m_code(code)
    {
    }

    ErrorCode code() const noexcept { return m_code; }

private:
    ErrorCode m_code;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what)
{
    throw Error(code, what);
}

}  // namespace lasekit

#endif
