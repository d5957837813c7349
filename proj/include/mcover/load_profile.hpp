#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mcover {

// Machine loads sorted non-decreasingly. Machine identities are dropped, so
// two schedules that differ only by a relabeling of machines share a profile.
template <class T>
class BasicLoadProfile {
 public:
  using value_type = T;

  BasicLoadProfile() = default;

  explicit BasicLoadProfile(std::vector<T> sorted_values) : values_(std::move(sorted_values)) {
    if (!std::is_sorted(values_.begin(), values_.end())) {
      throw std::invalid_argument("LoadProfile: values must be sorted non-decreasingly");
    }
  }

  static BasicLoadProfile from_unsorted(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    return BasicLoadProfile(std::move(values));
  }

  [[nodiscard]] std::size_t size() const { return values_.size(); }
  [[nodiscard]] bool empty() const { return values_.empty(); }
  [[nodiscard]] const T& operator[](std::size_t i) const { return values_[i]; }
  [[nodiscard]] const std::vector<T>& values() const { return values_; }
  [[nodiscard]] auto begin() const { return values_.begin(); }
  [[nodiscard]] auto end() const { return values_.end(); }

  friend bool operator==(const BasicLoadProfile&, const BasicLoadProfile&) = default;

 private:
  std::vector<T> values_;
};

namespace detail {
template <class T>
void require_same_length(const BasicLoadProfile<T>& x, const BasicLoadProfile<T>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("LoadProfile: length mismatch");
}
}  // namespace detail

// x <= y coordinate-wise.
template <class T>
bool profile_dominates(const BasicLoadProfile<T>& x, const BasicLoadProfile<T>& y) {
  detail::require_same_length(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (y[i] < x[i]) return false;
  }
  return true;
}

// Replace entry i by x[i] + delta and restore sorted order.
template <class T>
BasicLoadProfile<T> profile_insert_sorted(const BasicLoadProfile<T>& x, std::size_t i, const T& delta) {
  if (i >= x.size()) throw std::out_of_range("profile_insert_sorted: index out of range");
  std::vector<T> v = x.values();
  T updated = v[i] + delta;
  if (updated < T{}) throw std::invalid_argument("profile_insert_sorted: negative load");
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  v.insert(std::upper_bound(v.begin(), v.end(), updated), std::move(updated));
  return BasicLoadProfile<T>(std::move(v));
}

template <class T>
BasicLoadProfile<T> profile_remove_entry(const BasicLoadProfile<T>& x, std::size_t i) {
  if (i >= x.size()) throw std::out_of_range("profile_remove_entry: index out of range");
  std::vector<T> v = x.values();
  v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
  return BasicLoadProfile<T>(std::move(v));
}

template <class T>
std::size_t profile_hamming(const BasicLoadProfile<T>& x, const BasicLoadProfile<T>& y) {
  detail::require_same_length(x, y);
  std::size_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] == y[i])) ++count;
  }
  return count;
}

}  // namespace mcover
