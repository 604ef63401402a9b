#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subtrace {

/// Base class for all subtrace errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Operand shapes do not match; message carries expected vs actual dims.
class DimensionError : public Error {
public:
    DimensionError(const std::string& context, std::size_t expected, std::size_t actual)
        : Error(context + ": expected dimension " + std::to_string(expected) +
                ", got " + std::to_string(actual)) {}
};

/// Numerically rank-deficient input; identifies the offending column.
class RankError : public Error {
public:
    RankError(std::size_t column, double pivot)
        : Error("rank deficiency at column " + std::to_string(column) +
                " (pivot " + std::to_string(pivot) + ")"),
          column_(column) {}
    std::size_t column() const { return column_; }

private:
    std::size_t column_;
};

/// A vector required to lie in a given span does not, or is numerically zero.
class SpanError : public Error {
public:
    explicit SpanError(const std::string& what) : Error(what) {}
};

/// Geometric predicate violated (e.g. update vector rotated past its boundary).
class GeometryError : public Error {
public:
    explicit GeometryError(const std::string& what) : Error(what) {}
};

/// Invalid or inconsistent configuration input.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error(what) {}
};

/// Filesystem failure; message carries the path.
class IoError : public Error {
public:
    IoError(const std::string& path, const std::string& what)
        : Error(path + ": " + what) {}
};

}  // namespace subtrace
