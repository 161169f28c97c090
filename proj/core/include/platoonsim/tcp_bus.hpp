#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "platoonsim/bus.hpp"

namespace platoonsim::bus {

/// Broker served over TCP. The broker core runs on a single event-loop thread;
/// each connection's frames are processed in arrival order and its writes are
/// queued, so per-connection ordering is preserved.
class TcpBroker {
 public:
  /// Port 0 binds an ephemeral port; see port().
  TcpBroker(std::uint16_t port, std::size_t max_clients);
  ~TcpBroker();

  TcpBroker(const TcpBroker&) = delete;
  TcpBroker& operator=(const TcpBroker&) = delete;

  std::uint16_t port() const;

  /// Injects a PUB envelope originating inside the process.
  void publish(const BusEnvelope& env);

  std::size_t client_count() const;
  std::size_t subscription_count() const;

  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Blocking client for TcpBroker.
class TcpClient {
 public:
  TcpClient(const std::string& host, std::uint16_t port, std::string client_id);
  ~TcpClient();

  TcpClient(const TcpClient&) = delete;
  TcpClient& operator=(const TcpClient&) = delete;

  /// Sends SUB and waits for the matching SUBACK.
  void subscribe(const std::string& filter);
  void unsubscribe(const std::string& filter);
  void publish(const std::string& topic, const std::string& payload, std::int64_t ts);

  /// Next PUB delivered to this client, or nullopt on timeout/disconnect.
  std::optional<BusEnvelope> receive(std::chrono::milliseconds timeout);

  /// Writes raw bytes; used to exercise the broker's error handling.
  void send_raw(const std::string& bytes);

  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace platoonsim::bus
