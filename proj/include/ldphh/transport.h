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

#ifndef LDPHH_TRANSPORT_H_
#define LDPHH_TRANSPORT_H_

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "ldphh/codec.h"
#include "ldphh/core.h"
#include "ldphh/freq_oracle.h"
#include "ldphh/heavy_hitter.h"
#include "ldphh/onebit.h"
#include "ldphh/wire.h"

namespace ldphh {

enum class SessionKind { kFo, kHist, kFoOneBit, kHistOneBit };

std::string to_string(SessionKind kind);
SessionKind parse_session_kind(const std::string& s);

// Everything a server and its clients must agree on.
struct SessionConfig {
  SessionKind kind = SessionKind::kHist;
  std::uint64_t d = 1024;
  std::uint64_t n = 1000;
  double eps = 1.0;
  double beta = 0.1;
  std::uint64_t k_override = 0;  // 0 selects the default K
  std::uint64_t master_seed = 0;
  CodeKind code = CodeKind::kConcatenated;
  std::uint64_t run = 0;

  KeyValueConfig to_kv() const;
  static SessionConfig from_kv(const KeyValueConfig& kv);
  std::vector<std::uint8_t> encode() const;
  static SessionConfig decode(std::span<const std::uint8_t> bytes);

  PublicRandomness pub() const { return Prf::from_seed(master_seed); }
  FoParams fo_params() const;
  HhParams hh_params() const;
  bool operator==(const SessionConfig&) const = default;
};

// Frames carrying one user's messages.
wire::Frame report_frame(std::uint64_t user, const AddressedReport& r);
wire::Frame onebit_frame(std::uint64_t user, bool bit);
wire::Frame close_frame();
wire::Frame config_request_frame();

// Builds the frames one user sends in a session, drawing the user's private
// coins from `priv` exactly as the in-process runs do.
class ClientEncoder {
 public:
  ClientEncoder(const SessionConfig& config, Prf priv);
  ~ClientEncoder();

  const SessionConfig& config() const { return config_; }

  void frames(std::uint64_t user, const MaybeItem& v, std::vector<wire::Frame>& out) const;

 private:
  SessionConfig config_;
  PublicRandomness pub_;
  Prf priv_;
  std::uint64_t m_fo_ = 0;
  std::unique_ptr<HhStructure> hh_;
  std::unique_ptr<OneBitStructure> onebit_;
};

// Transport-independent server state. Thread-safe; every request frame gets
// exactly one reply frame. Reports are deduplicated on (message type, user,
// t, k). A close request is a barrier: it finalizes the session and answers
// with the histogram-result CSV, and every later submission is rejected with
// a session-closed error.
class AggregationSession {
 public:
  explicit AggregationSession(const SessionConfig& config);
  ~AggregationSession();

  const SessionConfig& config() const { return config_; }

  wire::Frame handle(const wire::Frame& request);

  bool closed() const { return closed_.load(); }
  std::uint64_t absorbed() const;

  // Result CSV; empty until closed.
  std::string result_csv() const;

  // Serialized aggregates (or the bit vector in one-bit sessions), for
  // determinism checks.
  std::vector<std::uint8_t> state_bytes() const;

 private:
  wire::Frame error(wire::ErrorCode code, const std::string& message) const;
  wire::Frame handle_report(const wire::Frame& request);
  wire::Frame handle_onebit(const wire::Frame& request);
  wire::Frame finalize();

  SessionConfig config_;
  PublicRandomness pub_;
  std::unique_ptr<HhStructure> hh_;
  std::unique_ptr<HhAggregator> hh_agg_;
  std::unique_ptr<OneBitStructure> onebit_;
  std::optional<AggregateState> fo_;
  std::vector<std::uint8_t> bits_;
  std::set<std::tuple<std::uint8_t, std::uint64_t, std::uint16_t, std::uint32_t>> seen_;
  std::uint64_t absorbed_ = 0;
  std::string result_;
  std::atomic<bool> closed_{false};
  mutable std::mutex mu_;
};

// Blocking TCP front end for a session; one thread per connection.
class AggregationServer {
 public:
  // Binds and listens immediately; port 0 picks an ephemeral port.
  AggregationServer(AggregationSession& session, const std::string& host,
                    std::uint16_t port);
  ~AggregationServer();

  std::uint16_t port() const { return port_; }

  // Accepts connections until the session closes, then waits for open
  // connections to finish (or until stop()).
  void run();

  // Shuts down the listener and all connections.
  void stop();

 private:
  void serve_connection(int fd);

  AggregationSession& session_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  std::mutex mu_;
  std::vector<int> conns_;
  std::vector<std::thread> threads_;
};

class ServerError : public Error {
 public:
  ServerError(wire::ErrorCode code, const std::string& message)
      : Error(message), code_(code) {}
  wire::ErrorCode code() const { return code_; }

 private:
  wire::ErrorCode code_;
};

class SessionClosedError : public ServerError {
 public:
  explicit SessionClosedError(const std::string& message)
      : ServerError(wire::ErrorCode::kSessionClosed, message) {}
};

struct SubmitSummary {
  std::uint64_t accepted = 0;
  std::uint64_t duplicates = 0;
};

class AggregationClient {
 public:
  AggregationClient(const std::string& host, std::uint16_t port);
  ~AggregationClient();
  AggregationClient(const AggregationClient&) = delete;
  AggregationClient& operator=(const AggregationClient&) = delete;

  wire::Frame request(const wire::Frame& frame);

  // Pipelines frames in bounded chunks; replies come back in order.
  std::vector<wire::Frame> request_batch(const std::vector<wire::Frame>& frames);

  SessionConfig fetch_config();

  // Submits report or one-bit frames. Duplicates are counted, not errors;
  // a closed session throws SessionClosedError, other rejections ServerError.
  SubmitSummary submit(const std::vector<wire::Frame>& frames);

  // Closes the session and returns the result CSV.
  std::string close_session();

 private:
  void send_all(const std::vector<std::uint8_t>& bytes);
  wire::Frame read_frame();

  int fd_ = -1;
};

}  // namespace ldphh

#endif  // LDPHH_TRANSPORT_H_
