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

#include "ldphh/transport.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstdio>
#include <cstring>

namespace ldphh {

namespace {

using wire::AckPayload;
using wire::AckStatus;
using wire::ErrorCode;
using wire::Frame;
using wire::MsgType;

constexpr std::chrono::milliseconds kDrainTime{2000};

bool read_exact(int fd, std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    const ssize_t r = ::recv(fd, buf + got, n - got, 0);
    if (r == 0) {
      if (got == 0) return false;
      throw wire::TruncatedError("connection closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      if (got == 0) return false;
      throw Error(std::string("recv failed: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

void write_all(int fd, const std::vector<std::uint8_t>& bytes) {
  std::size_t sent = 0;
  while (sent < bytes.size()) {
    const ssize_t r = ::send(fd, bytes.data() + sent, bytes.size() - sent, MSG_NOSIGNAL);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw Error(std::string("send failed: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(r);
  }
}

// Returns nullopt on a clean end of stream.
std::optional<Frame> read_frame_from(int fd) {
  std::array<std::uint8_t, wire::kHeaderSize> header;
  if (!read_exact(fd, header.data(), header.size())) return std::nullopt;
  Frame f;
  const std::uint32_t len = wire::decode_header(header, &f.type);
  f.version = header[4];
  f.payload.resize(len);
  if (len > 0 && !read_exact(fd, f.payload.data(), len)) {
    throw wire::TruncatedError("connection closed before payload");
  }
  return f;
}

Frame ack_frame(AckStatus status, ErrorCode code, const std::string& message) {
  AckPayload a{status, code, message};
  return wire::make_frame(MsgType::kAck, a.encode());
}

std::string estimates_csv(const FrequencyOracle& fo, std::uint64_t d) {
  std::string out = "item,estimated_frequency\n";
  char buf[64];
  const auto est = fo.estimate_all(d);
  for (Item v = 0; v < d; ++v) {
    std::snprintf(buf, sizeof(buf), "%llu,%.17g\n", static_cast<unsigned long long>(v),
                  est[v]);
    out += buf;
  }
  return out;
}

}  // namespace

std::string to_string(SessionKind kind) {
  switch (kind) {
    case SessionKind::kFo:
      return "fo";
    case SessionKind::kHist:
      return "hist";
    case SessionKind::kFoOneBit:
      return "fo-onebit";
    case SessionKind::kHistOneBit:
      return "hist-onebit";
  }
  return "hist";
}

SessionKind parse_session_kind(const std::string& s) {
  if (s == "fo") return SessionKind::kFo;
  if (s == "hist") return SessionKind::kHist;
  if (s == "fo-onebit") return SessionKind::kFoOneBit;
  if (s == "hist-onebit") return SessionKind::kHistOneBit;
  throw InvalidArgument("unknown session kind: " + s);
}

KeyValueConfig SessionConfig::to_kv() const {
  KeyValueConfig kv;
  char buf[64];
  kv.set("kind", to_string(kind));
  kv.set("d", std::to_string(d));
  kv.set("n", std::to_string(n));
  std::snprintf(buf, sizeof(buf), "%.17g", eps);
  kv.set("eps", buf);
  std::snprintf(buf, sizeof(buf), "%.17g", beta);
  kv.set("beta", buf);
  kv.set("k", std::to_string(k_override));
  kv.set("seed", std::to_string(master_seed));
  kv.set("code", to_string(code));
  kv.set("run", std::to_string(run));
  return kv;
}

SessionConfig SessionConfig::from_kv(const KeyValueConfig& kv) {
  SessionConfig c;
  c.kind = parse_session_kind(kv.get("kind").value_or(to_string(c.kind)));
  c.d = kv.get_u64("d", c.d);
  c.n = kv.get_u64("n", c.n);
  c.eps = kv.get_double("eps", c.eps);
  c.beta = kv.get_double("beta", c.beta);
  c.k_override = kv.get_u64("k", c.k_override);
  c.master_seed = kv.get_u64("seed", c.master_seed);
  c.code = parse_code_kind(kv.get("code").value_or(to_string(c.code)));
  c.run = kv.get_u64("run", c.run);
  return c;
}

std::vector<std::uint8_t> SessionConfig::encode() const {
  return wire::encode_text(to_kv().dump());
}

SessionConfig SessionConfig::decode(std::span<const std::uint8_t> bytes) {
  return from_kv(KeyValueConfig::parse(wire::decode_text(bytes)));
}

FoParams SessionConfig::fo_params() const { return derive_fo_params(d, n, eps, beta); }

HhParams SessionConfig::hh_params() const {
  return derive_hh_params(d, n, eps, beta,
                          k_override ? std::optional<std::uint64_t>(k_override)
                                     : std::nullopt);
}

Frame report_frame(std::uint64_t user, const AddressedReport& r) {
  wire::ReportPayload p;
  p.user = user;
  p.t = r.fo ? 0 : r.t;
  p.k = r.fo ? 0 : r.k;
  p.j = r.report.position;
  p.sign = r.report.sign > 0 ? 1 : 0;
  return wire::make_frame(r.fo ? MsgType::kFoReport : MsgType::kPpReport, p.encode());
}

Frame onebit_frame(std::uint64_t user, bool bit) {
  wire::OneBitPayload p{user, static_cast<std::uint8_t>(bit ? 1 : 0)};
  return wire::make_frame(MsgType::kOneBit, p.encode());
}

Frame close_frame() { return ack_frame(AckStatus::kCloseRequest, ErrorCode::kNone, ""); }

Frame config_request_frame() { return wire::make_frame(MsgType::kSessionConfig, {}); }

// ---- session ----

ClientEncoder::ClientEncoder(const SessionConfig& config, Prf priv)
    : config_(config), pub_(config.pub()), priv_(std::move(priv)) {
  switch (config_.kind) {
    case SessionKind::kFo:
      m_fo_ = config_.fo_params().m_fo;
      break;
    case SessionKind::kFoOneBit:
      m_fo_ = config_.fo_params().m_fo;
      onebit_ = std::make_unique<OneBitStructure>(
          OneBitStructure::fo_only(pub_, m_fo_, config_.eps));
      break;
    case SessionKind::kHist:
      hh_ = std::make_unique<HhStructure>(
          HhStructure::make(config_.hh_params(), config_.code, pub_));
      break;
    case SessionKind::kHistOneBit:
      hh_ = std::make_unique<HhStructure>(
          HhStructure::make(config_.hh_params(), config_.code, pub_));
      onebit_ = std::make_unique<OneBitStructure>(OneBitStructure::composite(*hh_));
      break;
  }
}

ClientEncoder::~ClientEncoder() = default;

void ClientEncoder::frames(std::uint64_t user, const MaybeItem& v,
                           std::vector<Frame>& out) const {
  if (v && *v >= config_.d) throw InvalidArgument("item outside the universe");
  if (onebit_) {
    out.push_back(onebit_frame(user, onebit_client(v, user, config_.run, *onebit_, priv_)));
    return;
  }
  Rng rng = user_rng(priv_, user, config_.run);
  if (hh_) {
    for (const auto& r : hh_client_reports(v, *hh_, rng)) out.push_back(report_frame(user, r));
    return;
  }
  AddressedReport r;
  r.fo = true;
  r.report = fo_user_report(v, m_fo_, pub_, config_.eps, rng);
  out.push_back(report_frame(user, r));
}

AggregationSession::AggregationSession(const SessionConfig& config)
    : config_(config), pub_(config.pub()) {
  switch (config.kind) {
    case SessionKind::kFo:
      fo_.emplace(config.fo_params().m_fo, config.eps);
      break;
    case SessionKind::kFoOneBit:
      onebit_ = std::make_unique<OneBitStructure>(
          OneBitStructure::fo_only(pub_, config.fo_params().m_fo, config.eps));
      bits_.assign(config.n, 0);
      break;
    case SessionKind::kHist:
      hh_ = std::make_unique<HhStructure>(
          HhStructure::make(config.hh_params(), config.code, pub_));
      hh_agg_ = std::make_unique<HhAggregator>(*hh_);
      break;
    case SessionKind::kHistOneBit:
      hh_ = std::make_unique<HhStructure>(
          HhStructure::make(config.hh_params(), config.code, pub_));
      onebit_ = std::make_unique<OneBitStructure>(OneBitStructure::composite(*hh_));
      bits_.assign(config.n, 0);
      break;
  }
}

AggregationSession::~AggregationSession() = default;

Frame AggregationSession::error(ErrorCode code, const std::string& message) const {
  return ack_frame(AckStatus::kError, code, message);
}

std::uint64_t AggregationSession::absorbed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return absorbed_;
}

std::string AggregationSession::result_csv() const {
  std::lock_guard<std::mutex> lock(mu_);
  return result_;
}

std::vector<std::uint8_t> AggregationSession::state_bytes() const {
  std::lock_guard<std::mutex> lock(mu_);
  std::vector<std::uint8_t> out;
  auto append = [&out](const AggregateState& s) {
    const auto b = s.serialize();
    out.insert(out.end(), b.begin(), b.end());
  };
  if (hh_agg_) {
    for (std::uint32_t t = 0; t < hh_->T(); ++t) {
      for (std::uint64_t k = 0; k < hh_->K(); ++k) append(hh_agg_->channel(t, k));
    }
    append(hh_agg_->fo());
  } else if (fo_) {
    append(*fo_);
  } else {
    out = bits_;
  }
  return out;
}

Frame AggregationSession::handle(const Frame& request) {
  try {
    switch (request.type) {
      case MsgType::kFoReport:
      case MsgType::kPpReport:
        return handle_report(request);
      case MsgType::kOneBit:
        return handle_onebit(request);
      case MsgType::kSessionConfig:
        return wire::make_frame(MsgType::kSessionConfig, config_.encode());
      case MsgType::kAck: {
        const auto ack = AckPayload::decode(request.payload);
        if (ack.status != AckStatus::kCloseRequest) {
          return error(ErrorCode::kUnsupported, "only close requests are accepted");
        }
        return finalize();
      }
      case MsgType::kHistogramResult:
        return error(ErrorCode::kUnsupported, "clients cannot send results");
    }
  } catch (const wire::BoundsError& e) {
    return error(ErrorCode::kBounds, e.what());
  } catch (const wire::WireError& e) {
    return error(ErrorCode::kMalformed, e.what());
  }
  return error(ErrorCode::kUnsupported, "unknown request");
}

Frame AggregationSession::handle_report(const Frame& request) {
  const auto p = wire::ReportPayload::decode(request.payload);
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) return error(ErrorCode::kSessionClosed, "session is closed");
  const bool fo = request.type == MsgType::kFoReport;
  AggregateState* target = nullptr;
  if (fo) {
    if (!fo_ && !hh_agg_) return error(ErrorCode::kUnsupported, "session takes no reports");
    const std::uint64_t m = fo_ ? fo_->m() : hh_->m_fo();
    p.check_bounds(1, 1, m);
  } else {
    if (!hh_agg_) return error(ErrorCode::kUnsupported, "session takes no PP reports");
    p.check_bounds(hh_->T(), hh_->K(), hh_->m_pp());
  }
  if (!seen_.emplace(static_cast<std::uint8_t>(request.type), p.user, p.t, p.k).second) {
    return error(ErrorCode::kDuplicate, "duplicate report for user " + std::to_string(p.user));
  }
  const SparseReport r{p.j, static_cast<std::int8_t>(p.sign ? +1 : -1)};
  if (fo_) {
    target = &*fo_;
    target->absorb(r);
  } else {
    AddressedReport a;
    a.fo = fo;
    a.t = p.t;
    a.k = p.k;
    a.report = r;
    hh_agg_->absorb(a);
  }
  ++absorbed_;
  return ack_frame(AckStatus::kOk, ErrorCode::kNone, "");
}

Frame AggregationSession::handle_onebit(const Frame& request) {
  const auto p = wire::OneBitPayload::decode(request.payload);
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) return error(ErrorCode::kSessionClosed, "session is closed");
  if (!onebit_) return error(ErrorCode::kUnsupported, "session takes no one-bit messages");
  if (p.user >= config_.n) {
    return error(ErrorCode::kBounds, "user id " + std::to_string(p.user) + " >= n");
  }
  if (!seen_.emplace(static_cast<std::uint8_t>(MsgType::kOneBit), p.user, 0, 0).second) {
    return error(ErrorCode::kDuplicate, "duplicate bit for user " + std::to_string(p.user));
  }
  bits_[p.user] = p.bit;
  ++absorbed_;
  return ack_frame(AckStatus::kOk, ErrorCode::kNone, "");
}

Frame AggregationSession::finalize() {
  std::lock_guard<std::mutex> lock(mu_);
  if (closed_) return error(ErrorCode::kSessionClosed, "session is closed");
  try {
    switch (config_.kind) {
      case SessionKind::kFo: {
        FrequencyOracle oracle(pub_, fo_->m(), fo_->eps());
        oracle.mutable_state() = *fo_;
        result_ = estimates_csv(oracle, config_.d);
        break;
      }
      case SessionKind::kFoOneBit: {
        FrequencyOracle oracle(pub_, onebit_->m_fo(), onebit_->eps_channel());
        for (const auto& y : onebit_server_collect(bits_, *onebit_, config_.run)) {
          oracle.absorb({y[onebit_->fo_component()].position,
                         y[onebit_->fo_component()].sign});
        }
        result_ = estimates_csv(oracle, config_.d);
        break;
      }
      case SessionKind::kHist:
        result_ = histogram_csv(hh_agg_->finalize().histogram);
        break;
      case SessionKind::kHistOneBit: {
        HhAggregator agg(*hh_);
        for (const auto& y : onebit_server_collect(bits_, *onebit_, config_.run)) {
          for (const auto& r : as_reports(y, *onebit_)) agg.absorb(r);
        }
        result_ = histogram_csv(agg.finalize().histogram);
        break;
      }
    }
  } catch (const Error& e) {
    closed_ = true;
    return error(ErrorCode::kMalformed, std::string("finalize failed: ") + e.what());
  }
  closed_ = true;
  return wire::make_frame(MsgType::kHistogramResult, wire::encode_text(result_));
}

// ---- server ----

AggregationServer::AggregationServer(AggregationSession& session,
                                     const std::string& host, std::uint16_t port)
    : session_(session) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error("socket failed");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw InvalidArgument("bad IPv4 listen address: " + host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0 ||
      ::listen(listen_fd_, 64) != 0) {
    const std::string why = std::strerror(errno);
    ::close(listen_fd_);
    throw Error("cannot listen on " + host + ":" + std::to_string(port) + ": " + why);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

AggregationServer::~AggregationServer() {
  stop();
  for (auto& t : threads_) {
    if (t.joinable()) t.join();
  }
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void AggregationServer::run() {
  while (!session_.closed() && !stopping_) {
    pollfd pfd{listen_fd_, POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 50);
    if (ready <= 0 || !(pfd.revents & POLLIN)) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    const int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
    std::lock_guard<std::mutex> lock(mu_);
    conns_.push_back(fd);
    threads_.emplace_back([this, fd] { serve_connection(fd); });
  }
  // Connections still open after the close get a short grace period to read
  // their last replies and hang up.
  const auto deadline = std::chrono::steady_clock::now() + kDrainTime;
  for (;;) {
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (conns_.empty()) break;
      if (std::chrono::steady_clock::now() >= deadline) {
        for (int fd : conns_) ::shutdown(fd, SHUT_RDWR);
        break;
      }
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  std::vector<std::thread> threads;
  {
    std::lock_guard<std::mutex> lock(mu_);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
}

void AggregationServer::stop() {
  stopping_ = true;
  std::lock_guard<std::mutex> lock(mu_);
  for (int fd : conns_) ::shutdown(fd, SHUT_RDWR);
}

void AggregationServer::serve_connection(int fd) {
  try {
    for (;;) {
      std::optional<Frame> request;
      try {
        request = read_frame_from(fd);
      } catch (const wire::WireError& e) {
        // The stream cannot be resynchronised after a bad header.
        write_all(fd, wire::encode_frame(ack_frame(AckStatus::kError, ErrorCode::kMalformed,
                                                   e.what())));
        break;
      }
      if (!request) break;
      write_all(fd, wire::encode_frame(session_.handle(*request)));
    }
  } catch (const Error&) {
    // Connection dropped; the session is unaffected.
  }
  std::lock_guard<std::mutex> lock(mu_);
  conns_.erase(std::remove(conns_.begin(), conns_.end(), fd), conns_.end());
  ::close(fd);
}

// ---- client ----

AggregationClient::AggregationClient(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || !res) {
    throw Error("cannot resolve " + host);
  }
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  if (fd_ < 0 || ::connect(fd_, res->ai_addr, res->ai_addrlen) != 0) {
    const std::string why = std::strerror(errno);
    ::freeaddrinfo(res);
    if (fd_ >= 0) ::close(fd_);
    throw Error("cannot connect to " + host + ":" + std::to_string(port) + ": " + why);
  }
  ::freeaddrinfo(res);
  const int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

AggregationClient::~AggregationClient() {
  if (fd_ >= 0) ::close(fd_);
}

void AggregationClient::send_all(const std::vector<std::uint8_t>& bytes) {
  write_all(fd_, bytes);
}

Frame AggregationClient::read_frame() {
  auto f = read_frame_from(fd_);
  if (!f) throw wire::TruncatedError("server closed the connection");
  return *f;
}

Frame AggregationClient::request(const Frame& frame) {
  send_all(wire::encode_frame(frame));
  return read_frame();
}

std::vector<Frame> AggregationClient::request_batch(const std::vector<Frame>& frames) {
  constexpr std::size_t kChunk = 256;
  std::vector<Frame> replies;
  replies.reserve(frames.size());
  for (std::size_t start = 0; start < frames.size(); start += kChunk) {
    const std::size_t end = std::min(frames.size(), start + kChunk);
    std::vector<std::uint8_t> bytes;
    for (std::size_t i = start; i < end; ++i) {
      const auto b = wire::encode_frame(frames[i]);
      bytes.insert(bytes.end(), b.begin(), b.end());
    }
    send_all(bytes);
    for (std::size_t i = start; i < end; ++i) replies.push_back(read_frame());
  }
  return replies;
}

SessionConfig AggregationClient::fetch_config() {
  const Frame reply = request(config_request_frame());
  if (reply.type != MsgType::kSessionConfig) throw Error("unexpected reply to config request");
  return SessionConfig::decode(reply.payload);
}

SubmitSummary AggregationClient::submit(const std::vector<Frame>& frames) {
  SubmitSummary summary;
  for (const Frame& reply : request_batch(frames)) {
    if (reply.type != MsgType::kAck) throw Error("unexpected reply to a submission");
    const auto ack = AckPayload::decode(reply.payload);
    if (ack.status == AckStatus::kOk) {
      ++summary.accepted;
    } else if (ack.code == ErrorCode::kDuplicate) {
      ++summary.duplicates;
    } else if (ack.code == ErrorCode::kSessionClosed) {
      throw SessionClosedError(ack.message);
    } else {
      throw ServerError(ack.code, ack.message);
    }
  }
  return summary;
}

std::string AggregationClient::close_session() {
  const Frame reply = request(close_frame());
  if (reply.type == MsgType::kHistogramResult) return wire::decode_text(reply.payload);
  const auto ack = AckPayload::decode(reply.payload);
  if (ack.code == ErrorCode::kSessionClosed) throw SessionClosedError(ack.message);
  throw ServerError(ack.code, ack.message);
}

}  // namespace ldphh
