#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

namespace nativedil {

using Bytes = std::vector<std::uint8_t>;

Bytes shake256(std::span<const std::uint8_t> input, std::size_t out_len);

// Unbounded deterministic byte stream keyed by (seed, tag).
//
// Block i of the stream is SHAKE256(domain || len(tag) || tag || len(seed) ||
// seed || le64(i)); blocks are concatenated. Streams with distinct tags share
// no absorbed input and are therefore independent.
class XofStream {
 public:
  static constexpr std::size_t kBlockBytes = 1088;

  XofStream(std::span<const std::uint8_t> seed, std::span<const std::uint8_t> tag);
  XofStream(std::span<const std::uint8_t> seed, std::string_view tag);
  ~XofStream();

  XofStream(XofStream&&) noexcept;
  XofStream& operator=(XofStream&&) noexcept;
  XofStream(const XofStream&) = delete;
  XofStream& operator=(const XofStream&) = delete;

  std::uint8_t next_byte();
  void read(std::span<std::uint8_t> out);

  // Next `width` bits (width <= 56) of the stream, least significant bit first.
  std::uint64_t read_bits(unsigned width);

 private:
  struct Absorbed;

  void refill();

  std::unique_ptr<Absorbed> absorbed_;
  std::array<std::uint8_t, kBlockBytes> block_{};
  std::size_t pos_ = kBlockBytes;
  std::uint64_t counter_ = 0;
  std::uint64_t bit_buffer_ = 0;
  unsigned bit_count_ = 0;
};

// Tag helpers: tags are short byte strings, optionally followed by indices.
Bytes make_tag(std::string_view label);
Bytes make_tag(std::string_view label, std::uint32_t a);
Bytes make_tag(std::string_view label, std::uint32_t a, std::uint32_t b);

}  // namespace nativedil
