#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hairsynth {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Encoded image bytes could not be parsed.
class FormatError : public Error {
public:
    FormatError(const std::string& what, std::size_t byte_offset);
    std::size_t byte_offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

class UnsupportedBitDepthError : public Error {
public:
    using Error::Error;
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

class ImageTooLargeError : public Error {
public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
public:
    using Error::Error;
};

/// Polygon with fewer than three vertices, zero area or self-intersections.
class GeometryError : public Error {
public:
    using Error::Error;
};

/// A value violates a documented invariant. `field()` is a dotted path
/// ("patches[0].kernel.size") when the value came from a scene document.
class ValidationError : public Error {
public:
    ValidationError(std::string field, const std::string& constraint);
    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

class SceneSyntaxError : public Error {
public:
    SceneSyntaxError(const std::string& what, std::size_t byte_position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Interpolation was asked to divide by a zero coordinate span.
class AxisDispatchError : public Error {
public:
    using Error::Error;
};

/// Failure inside run_pipeline, tagged with where it happened.
class PipelineError : public Error {
public:
    PipelineError(std::size_t patch_index, std::string stage, const std::string& cause);
    std::size_t patch_index() const noexcept { return patch_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    std::size_t patch_;
    std::string stage_;
};

} // namespace hairsynth
