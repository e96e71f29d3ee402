#include "sbc/report.hpp"

#include <sstream>

namespace sbc {

void ValidationReport::add(std::string kind, std::string message, std::vector<std::string> ids) {
  items_.push_back({std::move(kind), std::move(message), std::move(ids)});
}

void ValidationReport::merge(const ValidationReport& other, const std::string& prefix) {
  for (const auto& v : other.items_) items_.push_back({v.kind, prefix + v.message, v.ids});
}

bool ValidationReport::has(const std::string& kind) const {
  for (const auto& v : items_)
    if (v.kind == kind) return true;
  return false;
}

std::string ValidationReport::to_string() const {
  std::ostringstream os;
  for (const auto& v : items_) {
    os << v.kind << ": " << v.message;
    if (!v.ids.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.ids.size(); ++i) os << (i ? ", " : "") << v.ids[i];
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace sbc
