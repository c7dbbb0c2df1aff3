#pragma once

#include <stdexcept>
#include <string>

namespace pcl {

enum class ErrorKind {
    Parse,
    Validation,
    Consistency,
    Augmentation,
    Training,
    Io,
    Usage,
};

const char* to_string(ErrorKind kind);

// Base for every error raised by the toolkit. The kind drives the CLI exit
// code and the category printed in front of the message.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class ParseError : public Error {
public:
    // line is 1-based; 0 means "no line context".
    ParseError(const std::string& source, std::size_t line, const std::string& message);

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string source_;
    std::size_t line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message)
        : Error(ErrorKind::Validation, message) {}
};

class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& message)
        : Error(ErrorKind::Consistency, message) {}
};

class AugmentationError : public Error {
public:
    AugmentationError(std::string source_id, const std::string& message)
        : Error(ErrorKind::Augmentation, source_id + ": " + message),
          source_id_(std::move(source_id)) {}

    const std::string& source_id() const noexcept { return source_id_; }

private:
    std::string source_id_;
};

class TrainingError : public Error {
public:
    explicit TrainingError(const std::string& message)
        : Error(ErrorKind::Training, message) {}
};

class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& message)
        : Error(ErrorKind::Io, path + ": " + message) {}
};

class UsageError : public Error {
public:
    explicit UsageError(const std::string& message)
        : Error(ErrorKind::Usage, message) {}
};

}  // namespace pcl
