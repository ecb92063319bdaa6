#ifndef BSS_ERROR_HPP
#define BSS_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bss {

enum class ErrorKind {
    DivisionByZero,
    IndeterminateOperand,
    BackendMismatch,
    NoRootInInterval,
    MultipleRootsInInterval,
    InvalidLiteral,
    UnencodableParameter,
    DecodeError,
    ParameterNotEncodable,
    UnsupportedNode,
    DimensionMismatch,
    NotAStrictOrder,
    DependentBasis,
    SignatureMismatch,
    TransfiniteNotSupported,
    InfiniteUniverse,
    UnboundedEnumerator,
    LevelTooHigh,
    ParseError,
    ValidationError,
    InputMismatch,
    UnboundName,
    Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(ErrorKind::ParseError,
                std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& message() const noexcept { return message_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string message_;
};

class DecodeError : public Error {
public:
    DecodeError(std::size_t position, const std::string& reason)
        : Error(ErrorKind::DecodeError, "at entry " + std::to_string(position) + ": " + reason),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace bss

#endif
