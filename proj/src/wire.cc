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

#include "ldphh/wire.h"

#include <algorithm>

namespace ldphh::wire {

namespace {

template <class T>
void put(std::vector<std::uint8_t>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(v) >> (8 * i)));
  }
}

template <class T>
T get(std::span<const std::uint8_t> in, std::size_t off) {
  std::uint64_t v = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) v = (v << 8) | in[off + i];
  return static_cast<T>(v);
}

void need(std::span<const std::uint8_t> bytes, std::size_t n, const char* what) {
  if (bytes.size() < n) {
    throw TruncatedError(std::string(what) + ": need " + std::to_string(n) +
                         " bytes, have " + std::to_string(bytes.size()));
  }
}

void exact(std::span<const std::uint8_t> bytes, std::size_t n, const char* what) {
  need(bytes, n, what);
  if (bytes.size() != n) {
    throw BoundsError(std::string(what) + ": expected " + std::to_string(n) +
                      " bytes, got " + std::to_string(bytes.size()));
  }
}

}  // namespace

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
  if (frame.payload.size() > kMaxPayload) throw BoundsError("payload too large");
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  out.reserve(kHeaderSize + frame.payload.size());
  out.push_back(frame.version);
  out.push_back(static_cast<std::uint8_t>(frame.type));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(frame.payload.size()));
  out.insert(out.end(), frame.payload.begin(), frame.payload.end());
  return out;
}

std::uint32_t decode_header(std::span<const std::uint8_t, kHeaderSize> header,
                            MsgType* type) {
  if (!std::equal(kMagic, kMagic + 4, header.begin())) throw BadMagicError("bad magic");
  if (header[4] != kVersion) {
    throw BadVersionError("unsupported version " + std::to_string(header[4]));
  }
  if (header[5] > static_cast<std::uint8_t>(MsgType::kAck)) {
    throw BadTypeError("unknown message type " + std::to_string(header[5]));
  }
  const auto len = get<std::uint32_t>(header, 6);
  if (len > kMaxPayload) throw BoundsError("payload length " + std::to_string(len));
  if (type) *type = static_cast<MsgType>(header[5]);
  return len;
}

Frame decode_frame(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  need(bytes, kHeaderSize, "frame header");
  Frame f;
  const std::uint32_t len = decode_header(bytes.first<kHeaderSize>(), &f.type);
  need(bytes, kHeaderSize + len, "frame payload");
  f.version = bytes[4];
  f.payload.assign(bytes.begin() + kHeaderSize, bytes.begin() + kHeaderSize + len);
  if (consumed) *consumed = kHeaderSize + len;
  return f;
}

std::vector<std::uint8_t> ReportPayload::encode() const {
  std::vector<std::uint8_t> out;
  out.reserve(kSize);
  put(out, user);
  put(out, t);
  put(out, k);
  put(out, j);
  put(out, sign);
  return out;
}

ReportPayload ReportPayload::decode(std::span<const std::uint8_t> bytes) {
  exact(bytes, kSize, "report payload");
  ReportPayload r;
  r.user = get<std::uint64_t>(bytes, 0);
  r.t = get<std::uint16_t>(bytes, 8);
  r.k = get<std::uint32_t>(bytes, 10);
  r.j = get<std::uint32_t>(bytes, 14);
  r.sign = bytes[18];
  if (r.sign > 1) throw BoundsError("sign byte must be 0 or 1");
  return r;
}

void ReportPayload::check_bounds(std::uint64_t T, std::uint64_t K, std::uint64_t m) const {
  if (t >= T || k >= K || j >= m) {
    throw BoundsError("report (t=" + std::to_string(t) + ", k=" + std::to_string(k) +
                      ", j=" + std::to_string(j) + ") outside T=" + std::to_string(T) +
                      ", K=" + std::to_string(K) + ", m=" + std::to_string(m));
  }
}

std::vector<std::uint8_t> OneBitPayload::encode() const {
  std::vector<std::uint8_t> out;
  out.reserve(kSize);
  put(out, user);
  put(out, bit);
  return out;
}

OneBitPayload OneBitPayload::decode(std::span<const std::uint8_t> bytes) {
  exact(bytes, kSize, "one-bit payload");
  OneBitPayload p;
  p.user = get<std::uint64_t>(bytes, 0);
  p.bit = bytes[8];
  if (p.bit > 1) throw BoundsError("bit byte must be 0 or 1");
  return p;
}

std::vector<std::uint8_t> AckPayload::encode() const {
  std::vector<std::uint8_t> out;
  put(out, static_cast<std::uint8_t>(status));
  put(out, static_cast<std::uint16_t>(code));
  out.insert(out.end(), message.begin(), message.end());
  return out;
}

AckPayload AckPayload::decode(std::span<const std::uint8_t> bytes) {
  need(bytes, 3, "ack payload");
  AckPayload a;
  if (bytes[0] > static_cast<std::uint8_t>(AckStatus::kCloseRequest)) {
    throw BoundsError("unknown ack status");
  }
  a.status = static_cast<AckStatus>(bytes[0]);
  a.code = static_cast<ErrorCode>(get<std::uint16_t>(bytes, 1));
  a.message.assign(bytes.begin() + 3, bytes.end());
  return a;
}

std::vector<std::uint8_t> encode_text(const std::string& text) {
  std::vector<std::uint8_t> out;
  put(out, static_cast<std::uint32_t>(text.size()));
  out.insert(out.end(), text.begin(), text.end());
  return out;
}

std::string decode_text(std::span<const std::uint8_t> bytes) {
  need(bytes, 4, "text length");
  const auto len = get<std::uint32_t>(bytes, 0);
  exact(bytes, 4 + static_cast<std::size_t>(len), "text payload");
  return std::string(bytes.begin() + 4, bytes.end());
}

Frame make_frame(MsgType type, std::vector<std::uint8_t> payload) {
  Frame f;
  f.type = type;
  f.payload = std::move(payload);
  return f;
}

}  // namespace ldphh::wire
