#ifndef BRUSSELAB_ERRORS_HPP
#define BRUSSELAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace brusselab {

// Base of every numeric/domain failure raised by the library. The CLI maps
// these to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParameterError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct DegenerateOnsetError : Error { using Error::Error; };
struct ResonanceError : Error { using Error::Error; };
struct PoleError : Error { using Error::Error; };
struct TruncationError : Error { using Error::Error; };
struct NumericError : Error { using Error::Error; };

} // namespace brusselab

#endif
