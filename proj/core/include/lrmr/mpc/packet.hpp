#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include "lrmr/rational.hpp"

namespace lrmr::mpc {

/// General purpose message: a tag, up to three integers, an optional
/// rational and an id list. `fixed` is the number of words charged besides
/// the list; the sender sets it to what the message really carries.
struct Packet {
  std::uint32_t tag = 0;
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  Rational q;
  std::vector<std::uint32_t> list;
  std::uint32_t fixed = 1;

  std::uint64_t words() const noexcept { return fixed + list.size(); }
  std::tuple<std::uint32_t, std::uint64_t, std::uint64_t> key() const noexcept { return {tag, a, b}; }
};

inline Packet packet(std::uint32_t tag, std::uint64_t a, std::uint32_t fixed = 1) {
  Packet p;
  p.tag = tag;
  p.a = a;
  p.fixed = fixed;
  return p;
}

inline Packet packet(std::uint32_t tag, std::uint64_t a, std::uint64_t b, std::uint32_t fixed) {
  Packet p = packet(tag, a, fixed);
  p.b = b;
  return p;
}

}  // namespace lrmr::mpc
