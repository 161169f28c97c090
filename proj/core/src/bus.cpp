#include "platoonsim/bus.hpp"

#include <sodium.h>

#include <nlohmann/json.hpp>

namespace platoonsim::bus {

using json = nlohmann::ordered_json;

const char* to_string(Kind kind) {
  switch (kind) {
    case Kind::kConnect:
      return "CONNECT";
    case Kind::kSuback:
      return "SUBACK";
    case Kind::kSub:
      return "SUB";
    case Kind::kUnsub:
      return "UNSUB";
    case Kind::kPub:
      return "PUB";
  }
  return "?";
}

namespace {

std::optional<Kind> kind_from(std::string_view s) {
  for (Kind k : {Kind::kConnect, Kind::kSuback, Kind::kSub, Kind::kUnsub, Kind::kPub}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find('/', start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string base64_encode(const std::string& bin) {
  const std::size_t len = sodium_base64_ENCODED_LEN(bin.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(len, '\0');
  sodium_bin2base64(out.data(), len, reinterpret_cast<const unsigned char*>(bin.data()), bin.size(),
                    sodium_base64_VARIANT_ORIGINAL);
  out.resize(len - 1);  // drop the terminator
  return out;
}

std::optional<std::string> base64_decode(const std::string& text) {
  std::string out(text.size() / 4 * 3 + 3, '\0');
  std::size_t bin_len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(reinterpret_cast<unsigned char*>(out.data()), out.size(), text.data(),
                        text.size(), nullptr, &bin_len, &end, sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    return std::nullopt;
  }
  out.resize(bin_len);
  return out;
}

/// Empty string when valid, otherwise the reason.
std::string check_envelope(const BusEnvelope& env) {
  if (env.client_id.empty()) return "empty client id";
  switch (env.kind) {
    case Kind::kConnect:
      if (!env.topic.empty()) return "CONNECT carries no topic";
      break;
    case Kind::kPub:
      if (!valid_publish_topic(env.topic)) return "invalid publish topic '" + env.topic + "'";
      if (env.payload.size() > kMaxPayload) return "payload exceeds " + std::to_string(kMaxPayload) + " bytes";
      return {};
    case Kind::kSub:
    case Kind::kUnsub:
    case Kind::kSuback:
      if (!valid_filter(env.topic)) return "invalid topic filter '" + env.topic + "'";
      break;
  }
  if (!env.payload.empty()) return std::string(to_string(env.kind)) + " carries no payload";
  return {};
}

}  // namespace

bool valid_publish_topic(std::string_view topic) {
  if (topic.empty()) return false;
  for (char c : topic) {
    if (c == '+' || c == '#' || c == '\0') return false;
  }
  return true;
}

bool valid_filter(std::string_view filter) {
  if (filter.empty()) return false;
  if (filter.find('\0') != std::string_view::npos) return false;
  const auto parts = split(filter);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto seg = parts[i];
    if (seg.find('#') != std::string_view::npos && (seg != "#" || i + 1 != parts.size())) return false;
    if (seg.find('+') != std::string_view::npos && seg != "+") return false;
  }
  return true;
}

bool match_topic(std::string_view filter, std::string_view topic) {
  const auto f = split(filter);
  const auto t = split(topic);
  std::size_t i = 0;
  for (; i < f.size(); ++i) {
    if (f[i] == "#") return true;
    if (i >= t.size()) return false;
    if (f[i] != "+" && f[i] != t[i]) return false;
  }
  return i == t.size();
}

std::string encode_frame(const BusEnvelope& env) {
  if (const std::string why = check_envelope(env); !why.empty()) throw EncodeError(why);
  json j;
  j["t"] = to_string(env.kind);
  j["cid"] = env.client_id;
  j["topic"] = env.topic;
  j["ts"] = env.ts;
  if (env.kind == Kind::kPub) j["pl"] = base64_encode(env.payload);
  const std::string body = j.dump();
  if (body.size() > kMaxFrame) throw EncodeError("frame exceeds 1 MiB");
  std::string out;
  out.reserve(4 + body.size());
  const auto n = static_cast<std::uint32_t>(body.size());
  out.push_back(static_cast<char>((n >> 24) & 0xff));
  out.push_back(static_cast<char>((n >> 16) & 0xff));
  out.push_back(static_cast<char>((n >> 8) & 0xff));
  out.push_back(static_cast<char>(n & 0xff));
  out += body;
  return out;
}

std::optional<Decoded> try_decode_frame(std::string_view bytes) {
  if (bytes.size() < 4) return std::nullopt;
  const auto b = [&](std::size_t i) { return static_cast<std::uint32_t>(static_cast<unsigned char>(bytes[i])); };
  const std::uint32_t n = (b(0) << 24) | (b(1) << 16) | (b(2) << 8) | b(3);
  if (n > kMaxFrame) throw FrameError("frame length " + std::to_string(n) + " exceeds 1 MiB");
  if (bytes.size() < 4 + static_cast<std::size_t>(n)) return std::nullopt;

  json j;
  try {
    j = json::parse(bytes.substr(4, n));
  } catch (const json::exception& e) {
    throw FrameError(std::string("frame is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw FrameError("frame body is not an object");

  BusEnvelope env;
  const auto field = [&](const char* key) -> const json& {
    auto it = j.find(key);
    if (it == j.end()) throw FrameError(std::string("frame lacks '") + key + "'");
    return *it;
  };
  const json& t = field("t");
  const json& cid = field("cid");
  const json& topic = field("topic");
  const json& ts = field("ts");
  if (!t.is_string() || !cid.is_string() || !topic.is_string() || !ts.is_number_integer()) {
    throw FrameError("frame field has the wrong type");
  }
  const auto kind = kind_from(t.get<std::string>());
  if (!kind) throw FrameError("unknown frame type '" + t.get<std::string>() + "'");
  env.kind = *kind;
  env.client_id = cid.get<std::string>();
  env.topic = topic.get<std::string>();
  env.ts = ts.get<std::int64_t>();
  std::size_t expected_keys = 4;
  if (env.kind == Kind::kPub) {
    const json& pl = field("pl");
    if (!pl.is_string()) throw FrameError("'pl' must be a base64 string");
    auto payload = base64_decode(pl.get<std::string>());
    if (!payload) throw FrameError("'pl' is not valid base64");
    env.payload = std::move(*payload);
    expected_keys = 5;
  }
  if (j.size() != expected_keys) throw FrameError("frame has unexpected keys");
  if (const std::string why = check_envelope(env); !why.empty()) throw FrameError(why);
  return Decoded{std::move(env), 4 + static_cast<std::size_t>(n)};
}

std::optional<Decoded> try_decode_frame(std::span<const std::byte> bytes) {
  return try_decode_frame(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

Decoded decode_frame(std::string_view bytes) {
  auto d = try_decode_frame(bytes);
  if (!d) throw FrameError("truncated frame");
  return std::move(*d);
}

void Broker::connect(const std::string& client_id, Sink sink) {
  if (client_id.empty()) throw std::runtime_error("empty client id");
  if (clients_.contains(client_id)) throw std::runtime_error("client id already connected: " + client_id);
  if (clients_.size() >= max_clients_) throw std::runtime_error("client limit reached");
  clients_.emplace(client_id, Client{std::move(sink), {}});
}

void Broker::disconnect(const std::string& client_id) { clients_.erase(client_id); }

BusEnvelope Broker::subscribe(const std::string& client_id, const std::string& filter) {
  auto it = clients_.find(client_id);
  if (it == clients_.end()) throw std::runtime_error("unknown client: " + client_id);
  if (!valid_filter(filter)) throw std::invalid_argument("invalid topic filter: " + filter);
  it->second.filters.insert(filter);
  BusEnvelope ack{Kind::kSuback, client_id, filter, {}, 0};
  if (it->second.sink) it->second.sink(ack);
  return ack;
}

void Broker::unsubscribe(const std::string& client_id, const std::string& filter) {
  auto it = clients_.find(client_id);
  if (it == clients_.end()) throw std::runtime_error("unknown client: " + client_id);
  it->second.filters.erase(filter);
}

std::set<std::string> Broker::publish(const BusEnvelope& env) {
  if (env.kind != Kind::kPub) throw std::invalid_argument("publish expects a PUB envelope");
  if (!valid_publish_topic(env.topic)) throw std::invalid_argument("invalid publish topic: " + env.topic);
  std::set<std::string> recipients;
  for (auto& [id, client] : clients_) {
    for (const auto& filter : client.filters) {
      if (match_topic(filter, env.topic)) {
        recipients.insert(id);
        if (client.sink) client.sink(env);
        break;
      }
    }
  }
  return recipients;
}

void Broker::handle(const BusEnvelope& env) {
  switch (env.kind) {
    case Kind::kSub:
      subscribe(env.client_id, env.topic);
      return;
    case Kind::kUnsub:
      unsubscribe(env.client_id, env.topic);
      return;
    case Kind::kPub:
      publish(env);
      return;
    case Kind::kConnect:
    case Kind::kSuback:
      throw std::invalid_argument(std::string("broker cannot handle ") + to_string(env.kind));
  }
}

std::size_t Broker::subscription_count() const {
  std::size_t n = 0;
  for (const auto& [id, client] : clients_) n += client.filters.size();
  return n;
}

LoopbackClient::LoopbackClient(Broker& broker, std::string client_id)
    : broker_(broker), id_(std::move(client_id)) {
  broker_.connect(id_, [this](const BusEnvelope& env) {
    if (env.kind == Kind::kPub) inbox_.push_back(env);
  });
}

LoopbackClient::~LoopbackClient() { broker_.disconnect(id_); }

void LoopbackClient::subscribe(const std::string& filter) { broker_.subscribe(id_, filter); }

void LoopbackClient::unsubscribe(const std::string& filter) { broker_.unsubscribe(id_, filter); }

std::set<std::string> LoopbackClient::publish(const std::string& topic, std::string payload, std::int64_t ts) {
  if (payload.size() > kMaxPayload) throw EncodeError("payload exceeds " + std::to_string(kMaxPayload) + " bytes");
  return broker_.publish(BusEnvelope{Kind::kPub, id_, topic, std::move(payload), ts});
}

std::optional<BusEnvelope> LoopbackClient::poll() {
  if (inbox_.empty()) return std::nullopt;
  BusEnvelope env = std::move(inbox_.front());
  inbox_.pop_front();
  return env;
}

}  // namespace platoonsim::bus
