#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace platoonsim::bus {

enum class Kind { kConnect, kSuback, kSub, kUnsub, kPub };

const char* to_string(Kind kind);

struct BusEnvelope {
  Kind kind = Kind::kPub;
  std::string client_id;
  std::string topic;
  std::string payload;  // opaque bytes, PUB only
  std::int64_t ts = 0;  // simulated time [ns]

  bool operator==(const BusEnvelope&) const = default;
};

inline constexpr std::size_t kMaxPayload = 65536;
inline constexpr std::size_t kMaxFrame = 1u << 20;

class EncodeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input; the connection that produced it must be closed.
class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool valid_publish_topic(std::string_view topic);
bool valid_filter(std::string_view filter);

/// 4-byte big-endian length followed by compact JSON with keys in the fixed
/// order t, cid, topic, ts, pl. `pl` is base64 and only present for PUB.
std::string encode_frame(const BusEnvelope& env);

struct Decoded {
  BusEnvelope envelope;
  std::size_t consumed = 0;
};

/// Decodes the first frame; nullopt if the buffer holds an incomplete frame.
std::optional<Decoded> try_decode_frame(std::span<const std::byte> bytes);
std::optional<Decoded> try_decode_frame(std::string_view bytes);

/// Like try_decode_frame but a partial frame is an error.
Decoded decode_frame(std::string_view bytes);

bool match_topic(std::string_view filter, std::string_view topic);

using Sink = std::function<void(const BusEnvelope&)>;

/// Transport-agnostic broker core: subscription table plus fan-out. Not
/// thread-safe; callers serialize access.
class Broker {
 public:
  explicit Broker(std::size_t max_clients = 64) : max_clients_(max_clients) {}

  /// Throws std::runtime_error when the id is taken or the client limit is
  /// reached.
  void connect(const std::string& client_id, Sink sink);
  void disconnect(const std::string& client_id);

  /// Returns the SUBACK envelope sent to the client.
  BusEnvelope subscribe(const std::string& client_id, const std::string& filter);
  void unsubscribe(const std::string& client_id, const std::string& filter);

  /// Delivers to every connected client holding a matching filter, once per
  /// client. Returns the recipients.
  std::set<std::string> publish(const BusEnvelope& env);

  /// Dispatches CONNECT-less control envelopes (SUB, UNSUB, PUB) from a
  /// connected client.
  void handle(const BusEnvelope& env);

  std::size_t client_count() const { return clients_.size(); }
  std::size_t subscription_count() const;
  bool empty() const { return clients_.empty(); }

 private:
  struct Client {
    Sink sink;
    std::set<std::string> filters;
  };

  std::size_t max_clients_;
  std::map<std::string, Client> clients_;
};

/// Client endpoint of the in-process bus. Deliveries are queued in an inbox.
class LoopbackClient {
 public:
  LoopbackClient(Broker& broker, std::string client_id);
  ~LoopbackClient();

  LoopbackClient(const LoopbackClient&) = delete;
  LoopbackClient& operator=(const LoopbackClient&) = delete;

  const std::string& id() const { return id_; }

  void subscribe(const std::string& filter);
  void unsubscribe(const std::string& filter);
  std::set<std::string> publish(const std::string& topic, std::string payload, std::int64_t ts);

  std::deque<BusEnvelope>& inbox() { return inbox_; }
  std::optional<BusEnvelope> poll();

 private:
  Broker& broker_;
  std::string id_;
  std::deque<BusEnvelope> inbox_;
};

}  // namespace platoonsim::bus
