// Copyright 2026 The ldphh Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LDPHH_WIRE_H_
#define LDPHH_WIRE_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ldphh/core.h"

namespace ldphh::wire {

// Frame layout: "LDPH" | version u8 | msg_type u8 | payload_len u32le | payload.
inline constexpr std::uint8_t kMagic[4] = {'L', 'D', 'P', 'H'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kHeaderSize = 10;
inline constexpr std::uint32_t kMaxPayload = 64u << 20;

enum class MsgType : std::uint8_t {
  kFoReport = 0,
  kPpReport = 1,
  kOneBit = 2,
  kSessionConfig = 3,
  kHistogramResult = 4,
  kAck = 5,
};

class WireError : public Error {
 public:
  using Error::Error;
};
class TruncatedError : public WireError {
 public:
  using WireError::WireError;
};
class BadMagicError : public WireError {
 public:
  using WireError::WireError;
};
class BadVersionError : public WireError {
 public:
  using WireError::WireError;
};
class BadTypeError : public WireError {
 public:
  using WireError::WireError;
};
class BoundsError : public WireError {
 public:
  using WireError::WireError;
};

struct Frame {
  std::uint8_t version = kVersion;
  MsgType type = MsgType::kAck;
  std::vector<std::uint8_t> payload;

  bool operator==(const Frame&) const = default;
};

std::vector<std::uint8_t> encode_frame(const Frame& frame);

// Decodes one frame from the front of `bytes`; `consumed` receives its size.
// Nothing is read past the declared payload.
Frame decode_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

// Parses a header, returning the payload length. Throws on bad magic,
// version, type, or an oversized payload.
std::uint32_t decode_header(std::span<const std::uint8_t, kHeaderSize> header,
                            MsgType* type);

// Report in PP channel (t, k), or the FO channel with t = k = 0.
struct ReportPayload {
  std::uint64_t user = 0;
  std::uint16_t t = 0;
  std::uint32_t k = 0;
  std::uint32_t j = 0;
  std::uint8_t sign = 1;  // 0 = minus, 1 = plus

  static constexpr std::size_t kSize = 19;
  std::vector<std::uint8_t> encode() const;
  static ReportPayload decode(std::span<const std::uint8_t> bytes);

  // Throws BoundsError unless t < T, k < K and j < m.
  void check_bounds(std::uint64_t T, std::uint64_t K, std::uint64_t m) const;

  bool operator==(const ReportPayload&) const = default;
};

struct OneBitPayload {
  std::uint64_t user = 0;
  std::uint8_t bit = 0;

  static constexpr std::size_t kSize = 9;
  std::vector<std::uint8_t> encode() const;
  static OneBitPayload decode(std::span<const std::uint8_t> bytes);

  bool operator==(const OneBitPayload&) const = default;
};

enum class AckStatus : std::uint8_t { kOk = 0, kError = 1, kCloseRequest = 2 };

enum class ErrorCode : std::uint16_t {
  kNone = 0,
  kMalformed = 1,
  kDuplicate = 2,
  kBounds = 3,
  kSessionClosed = 4,
  kUnsupported = 5,
};

struct AckPayload {
  AckStatus status = AckStatus::kOk;
  ErrorCode code = ErrorCode::kNone;
  std::string message;

  std::vector<std::uint8_t> encode() const;
  static AckPayload decode(std::span<const std::uint8_t> bytes);

  bool operator==(const AckPayload&) const = default;
};

// u32le length prefix followed by UTF-8 text.
std::vector<std::uint8_t> encode_text(const std::string& text);
std::string decode_text(std::span<const std::uint8_t> bytes);

Frame make_frame(MsgType type, std::vector<std::uint8_t> payload);

}  // namespace ldphh::wire

#endif  // LDPHH_WIRE_H_
