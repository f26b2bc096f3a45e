#include "vsgsize/errors.hpp"

#include <sstream>

namespace vsgsize {

namespace {

std::string describe(const std::vector<Violation>& violations) {
    std::ostringstream os;
    os << "invalid configuration (" << violations.size() << " violation"
       << (violations.size() == 1 ? "" : "s") << ")";
    for (const auto& v : violations) {
        os << "\n  " << v.field << ": requires " << v.bound;
    }
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(describe(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(std::string message, std::size_t line, std::string field)
    : Error(std::move(message)), line_(line), field_(std::move(field)) {}

IntegrationFault::IntegrationFault(std::int64_t step, double time)
    : Error("non-finite state at step " + std::to_string(step) + " (t = " + std::to_string(time) + " s)"),
      step_(step),
      time_(time) {}

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

}  // namespace vsgsize
