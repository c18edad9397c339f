// Licensed under the Apache License, Version 2.0.
// Shared helpers: errors, canonical ordering, small hash tables.
#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fhg {

// Raised for malformed input or violated preconditions. The CLI maps it to exit code 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Ids = std::vector<std::string>;

inline std::uint64_t pair_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

// Partial binary operation stored only on its domain.
using PairTable = std::unordered_map<std::uint64_t, int>;

inline int lookup(const PairTable& t, int a, int b) {
  auto it = t.find(pair_key(a, b));
  return it == t.end() ? -1 : it->second;
}

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

template <class V>
using VecMap = std::unordered_map<std::vector<int>, V, VecHash>;

inline std::string join(const Ids& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string tuple_id(const Ids& parts) { return "(" + join(parts, ",") + ")"; }

// Sorts ids and returns perm with perm[old] = new. Throws on duplicates.
inline std::vector<int> canonical_order(Ids& ids, const char* what) {
  std::vector<int> idx(ids.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return ids[a] < ids[b]; });
  std::vector<int> perm(ids.size());
  Ids sorted(ids.size());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    perm[idx[k]] = static_cast<int>(k);
    sorted[k] = ids[idx[k]];
    if (k && sorted[k] == sorted[k - 1]) {
      throw Error(std::string("duplicate ") + what + " id '" + sorted[k] + "'");
    }
  }
  ids = std::move(sorted);
  return perm;
}

// Applies perm to a table of values and/or positions.
template <class T>
std::vector<T> permute_positions(const std::vector<T>& v, const std::vector<int>& perm) {
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

inline std::vector<int> relabel(const std::vector<int>& v, const std::vector<int>& perm) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] < 0 ? v[i] : perm[v[i]];
  return out;
}

inline int find_id(const Ids& sorted, const std::string& id) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it == sorted.end() || *it != id) return -1;
  return static_cast<int>(it - sorted.begin());
}

inline bool is_surjective(const std::vector<int>& f, int target_size) {
  std::vector<char> hit(target_size, 0);
  for (int x : f) hit[x] = 1;
  return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
}

// Representative choice inside orbits. Downstream results must not depend on it.
enum class RepOrder { Least, Greatest };

}  // namespace fhg
