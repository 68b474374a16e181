#ifndef FROBSYZ_ERROR_HPP
#define FROBSYZ_ERROR_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frobsyz {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
public:
    DivisionByZero() : Error("division by zero in F_p") {}
};

/// Checked 64-bit arithmetic ran out of room (exponents, q = p^e, rationals).
class OverflowError : public Error {
public:
    using Error::Error;
};

/// The requested construction does not apply to the given parameters.
class InapplicableError : public Error {
public:
    using Error::Error;
};

/// p divides d, so the Fermat curve is singular.
class SmoothnessError : public InapplicableError {
public:
    using InapplicableError::InapplicableError;
};

/// Bookkeeping identities that hold by construction failed.
class InternalError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(std::string("overflow in ") + what);
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(std::string("overflow in ") + what);
    return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError(std::string("overflow in ") + what);
    return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError(std::string("overflow in ") + what);
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b, const char* what) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError(std::string("overflow in ") + what);
    return r;
}

/// base^exp with overflow detection.
inline std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp, const char* what) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < exp; ++i) r = checked_mul(r, base, what);
    return r;
}

}  // namespace detail

}  // namespace frobsyz

#endif  // FROBSYZ_ERROR_HPP
