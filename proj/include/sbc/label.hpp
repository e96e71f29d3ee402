#pragma once

#include <compare>
#include <functional>
#include <string>
#include <string_view>

namespace sbc {

/// Interned class symbol. Two labels are equal iff their symbols are equal.
class ClassLabel {
 public:
  ClassLabel();
  explicit ClassLabel(std::string_view symbol);

  const std::string& symbol() const { return *p_; }
  bool empty() const { return p_->empty(); }

  bool operator==(const ClassLabel& o) const { return p_ == o.p_; }
  std::strong_ordering operator<=>(const ClassLabel& o) const {
    if (p_ == o.p_) return std::strong_ordering::equal;
    return *p_ <=> *o.p_;
  }

  const void* key() const { return p_; }

 private:
  const std::string* p_;
};

}  // namespace sbc

template <>
struct std::hash<sbc::ClassLabel> {
  std::size_t operator()(const sbc::ClassLabel& l) const noexcept {
    return std::hash<const void*>()(l.key());
  }
};
