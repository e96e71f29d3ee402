#include "sbc/label.hpp"

#include <mutex>
#include <unordered_set>

namespace sbc {

namespace {

const std::string* intern(std::string_view s) {
  static std::mutex mu;
  static std::unordered_set<std::string> pool;
  std::lock_guard<std::mutex> lock(mu);
  return &*pool.emplace(s).first;
}

}  // namespace

ClassLabel::ClassLabel() : p_(intern("")) {}
ClassLabel::ClassLabel(std::string_view symbol) : p_(intern(symbol)) {}

}  // namespace sbc
