#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace ceger {

// Error wrapper used to construct an Expected in the failed state.
template <class E>
struct Unexpected {
  E error;
};

template <class E>
Unexpected<std::decay_t<E>> unexpected(E&& error) {
  return {std::forward<E>(error)};
}

// Minimal value-or-error holder for data-driven failures (malformed
// command text, pointer overflow, ...). Programming errors still throw.
template <class T, class E>
class Expected {
 public:
  Expected(T value) : storage_(std::in_place_index<0>, std::move(value)) {}
  Expected(Unexpected<E> e) : storage_(std::in_place_index<1>, std::move(e.error)) {}

  bool has_value() const noexcept { return storage_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  const T& value() const& {
    if (!has_value()) throw std::logic_error("Expected::value() on error state");
    return std::get<0>(storage_);
  }
  T& value() & {
    if (!has_value()) throw std::logic_error("Expected::value() on error state");
    return std::get<0>(storage_);
  }
  T&& value() && {
    if (!has_value()) throw std::logic_error("Expected::value() on error state");
    return std::get<0>(std::move(storage_));
  }

  const E& error() const& {
    if (has_value()) throw std::logic_error("Expected::error() on value state");
    return std::get<1>(storage_);
  }

  const T& operator*() const& { return value(); }
  T& operator*() & { return value(); }
  const T* operator->() const { return &value(); }
  T* operator->() { return &value(); }

 private:
  std::variant<T, E> storage_;
};

}  // namespace ceger
