#include "hairsynth/error.hpp"

#include <utility>

namespace hairsynth {

FormatError::FormatError(const std::string& what, std::size_t byte_offset)
    : Error(what + " (at byte offset " + std::to_string(byte_offset) + ")"), offset_(byte_offset) {}

ValidationError::ValidationError(std::string field, const std::string& constraint)
    : Error(field.empty() ? constraint : field + ": " + constraint), field_(std::move(field)),
      constraint_(constraint) {}

SceneSyntaxError::SceneSyntaxError(const std::string& what, std::size_t byte_position)
    : Error("scene syntax error at byte " + std::to_string(byte_position) + ": " + what),
      position_(byte_position) {}

PipelineError::PipelineError(std::size_t patch_index, std::string stage, const std::string& cause)
    : Error("patch " + std::to_string(patch_index) + ", stage " + stage + ": " + cause),
      patch_(patch_index), stage_(std::move(stage)) {}

} // namespace hairsynth
