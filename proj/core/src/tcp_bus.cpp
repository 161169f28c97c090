#include "platoonsim/tcp_bus.hpp"

#include <deque>
#include <future>
#include <mutex>
#include <thread>

#include <boost/asio.hpp>

namespace platoonsim::bus {

namespace asio = boost::asio;
using asio::ip::tcp;

// ---------------------------------------------------------------- broker

namespace {

class Session : public std::enable_shared_from_this<Session> {
 public:
  Session(tcp::socket socket, Broker& core, std::mutex& mu)
      : socket_(std::move(socket)), core_(core), mu_(mu) {}

  void start() { read(); }

  void send(std::string frame) {
    const bool idle = writes_.empty();
    writes_.push_back(std::move(frame));
    if (idle) write();
  }

  void close() {
    if (closed_) return;
    closed_ = true;
    if (!cid_.empty()) {
      std::lock_guard lock(mu_);
      core_.disconnect(cid_);
    }
    boost::system::error_code ec;
    socket_.shutdown(tcp::socket::shutdown_both, ec);
    socket_.close(ec);
  }

 private:
  void read() {
    auto self = shared_from_this();
    socket_.async_read_some(asio::buffer(chunk_), [this, self](boost::system::error_code ec, std::size_t n) {
      if (ec) {
        close();
        return;
      }
      buffer_.append(chunk_.data(), n);
      if (process()) read();
    });
  }

  /// Handles every complete frame in the buffer. False once the session is
  /// closed.
  bool process() {
    try {
      while (auto d = try_decode_frame(buffer_)) {
        buffer_.erase(0, d->consumed);
        dispatch(d->envelope);
        if (closed_) return false;
      }
    } catch (const std::exception&) {
      close();
      return false;
    }
    return !closed_;
  }

  void dispatch(const BusEnvelope& env) {
    std::lock_guard lock(mu_);
    if (cid_.empty()) {
      if (env.kind != Kind::kConnect) throw FrameError("first frame must be CONNECT");
      std::weak_ptr<Session> weak = shared_from_this();
      core_.connect(env.client_id, [weak](const BusEnvelope& out) {
        if (auto s = weak.lock()) s->send(encode_frame(out));
      });
      cid_ = env.client_id;
      return;
    }
    if (env.kind == Kind::kConnect || env.client_id != cid_) throw FrameError("unexpected client id or CONNECT");
    core_.handle(env);
  }

  void write() {
    auto self = shared_from_this();
    asio::async_write(socket_, asio::buffer(writes_.front()), [this, self](boost::system::error_code ec, std::size_t) {
      if (ec) {
        close();
        return;
      }
      writes_.pop_front();
      if (!writes_.empty()) write();
    });
  }

  tcp::socket socket_;
  Broker& core_;
  std::mutex& mu_;
  std::string cid_;
  std::array<char, 4096> chunk_{};
  std::string buffer_;
  std::deque<std::string> writes_;
  bool closed_ = false;
};

}  // namespace

struct TcpBroker::Impl {
  asio::io_context io;
  tcp::acceptor acceptor;
  Broker core;
  mutable std::mutex mu;
  std::vector<std::weak_ptr<Session>> sessions;
  std::thread thread;

  Impl(std::uint16_t port, std::size_t max_clients)
      : acceptor(io, tcp::endpoint(asio::ip::address_v4::loopback(), port)), core(max_clients) {}

  void accept() {
    acceptor.async_accept([this](boost::system::error_code ec, tcp::socket socket) {
      if (ec) return;
      auto s = std::make_shared<Session>(std::move(socket), core, mu);
      sessions.push_back(s);
      s->start();
      accept();
    });
  }
};

TcpBroker::TcpBroker(std::uint16_t port, std::size_t max_clients)
    : impl_(std::make_unique<Impl>(port, max_clients)) {
  impl_->accept();
  impl_->thread = std::thread([this] { impl_->io.run(); });
}

TcpBroker::~TcpBroker() { stop(); }

std::uint16_t TcpBroker::port() const { return impl_->acceptor.local_endpoint().port(); }

void TcpBroker::publish(const BusEnvelope& env) {
  asio::post(impl_->io, [this, env] {
    std::lock_guard lock(impl_->mu);
    impl_->core.publish(env);
  });
}

std::size_t TcpBroker::client_count() const {
  std::lock_guard lock(impl_->mu);
  return impl_->core.client_count();
}

std::size_t TcpBroker::subscription_count() const {
  std::lock_guard lock(impl_->mu);
  return impl_->core.subscription_count();
}

void TcpBroker::stop() {
  if (!impl_ || !impl_->thread.joinable()) return;
  asio::post(impl_->io, [this] {
    boost::system::error_code ec;
    impl_->acceptor.close(ec);
    for (auto& w : impl_->sessions) {
      if (auto s = w.lock()) s->close();
    }
    impl_->sessions.clear();
  });
  // Let pending writes drain, then stop.
  asio::post(impl_->io, [this] { impl_->io.stop(); });
  impl_->thread.join();
}

// ---------------------------------------------------------------- client

struct TcpClient::Impl {
  asio::io_context io;
  tcp::socket socket{io};
  std::string id;
  std::string buffer;
  std::deque<BusEnvelope> pending;
  bool open = false;

  void send(const BusEnvelope& env) {
    if (!open) throw std::runtime_error("bus client is closed");
    asio::write(socket, asio::buffer(encode_frame(env)));
  }

  /// Next frame of any kind, or nullopt on timeout or disconnect.
  std::optional<BusEnvelope> read_frame(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (auto d = try_decode_frame(buffer)) {
        buffer.erase(0, d->consumed);
        return std::move(d->envelope);
      }
      if (!open) return std::nullopt;
      const auto remaining = deadline - std::chrono::steady_clock::now();
      if (remaining <= std::chrono::steady_clock::duration::zero()) return std::nullopt;

      std::array<char, 4096> chunk{};
      bool done = false;
      boost::system::error_code result;
      std::size_t got = 0;
      socket.async_read_some(asio::buffer(chunk), [&](boost::system::error_code ec, std::size_t n) {
        done = true;
        result = ec;
        got = n;
      });
      io.restart();
      io.run_for(remaining);
      if (!done) {
        socket.cancel();
        io.restart();
        io.run();
      }
      if (result) {
        if (result != asio::error::operation_aborted) open = false;
        if (!done || result == asio::error::operation_aborted) return std::nullopt;
        continue;
      }
      buffer.append(chunk.data(), got);
    }
  }
};

TcpClient::TcpClient(const std::string& host, std::uint16_t port, std::string client_id)
    : impl_(std::make_unique<Impl>()) {
  impl_->id = std::move(client_id);
  tcp::resolver resolver(impl_->io);
  asio::connect(impl_->socket, resolver.resolve(host, std::to_string(port)));
  impl_->socket.set_option(tcp::no_delay(true));
  impl_->open = true;
  impl_->send(BusEnvelope{Kind::kConnect, impl_->id, "", "", 0});
}

TcpClient::~TcpClient() { close(); }

void TcpClient::subscribe(const std::string& filter) {
  impl_->send(BusEnvelope{Kind::kSub, impl_->id, filter, "", 0});
  for (;;) {
    auto env = impl_->read_frame(std::chrono::seconds(5));
    if (!env) throw std::runtime_error("no SUBACK for " + filter);
    if (env->kind == Kind::kSuback && env->topic == filter) return;
    if (env->kind == Kind::kPub) impl_->pending.push_back(std::move(*env));
  }
}

void TcpClient::unsubscribe(const std::string& filter) {
  impl_->send(BusEnvelope{Kind::kUnsub, impl_->id, filter, "", 0});
}

void TcpClient::publish(const std::string& topic, const std::string& payload, std::int64_t ts) {
  impl_->send(BusEnvelope{Kind::kPub, impl_->id, topic, payload, ts});
}

std::optional<BusEnvelope> TcpClient::receive(std::chrono::milliseconds timeout) {
  if (!impl_->pending.empty()) {
    BusEnvelope env = std::move(impl_->pending.front());
    impl_->pending.pop_front();
    return env;
  }
  const auto deadline = std::chrono::steady_clock::now() + timeout;
  for (;;) {
    const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
    auto env = impl_->read_frame(std::max(left, std::chrono::milliseconds(0)));
    if (!env) return std::nullopt;
    if (env->kind == Kind::kPub) return env;
  }
}

void TcpClient::send_raw(const std::string& bytes) {
  if (!impl_->open) throw std::runtime_error("bus client is closed");
  asio::write(impl_->socket, asio::buffer(bytes));
}

void TcpClient::close() {
  if (!impl_ || !impl_->open) return;
  impl_->open = false;
  boost::system::error_code ec;
  impl_->socket.shutdown(tcp::socket::shutdown_both, ec);
  impl_->socket.close(ec);
}

}  // namespace platoonsim::bus
