#include "pcl/error.hpp"

namespace pcl {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Validation: return "validation error";
    case ErrorKind::Consistency: return "consistency error";
    case ErrorKind::Augmentation: return "augmentation error";
    case ErrorKind::Training: return "training error";
    case ErrorKind::Io: return "i/o error";
    case ErrorKind::Usage: return "usage error";
    }
    return "error";
}

namespace {
std::string located(const std::string& source, std::size_t line, const std::string& message) {
    if (line == 0) return source + ": " + message;
    return source + ":" + std::to_string(line) + ": " + message;
}
}  // namespace

ParseError::ParseError(const std::string& source, std::size_t line, const std::string& message)
    : Error(ErrorKind::Parse, located(source, line, message)), source_(source), line_(line) {}

}  // namespace pcl
