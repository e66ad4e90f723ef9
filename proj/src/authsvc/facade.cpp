#include "credsim/authsvc/facade.hpp"

#include <poll.h>
#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <system_error>

#include "json.hpp"

namespace credsim {
namespace {

using nlohmann::json;

SecondFactor parse_factor(const std::string& s) {
  if (s == "none") return SecondFactor::None;
  if (s == "validOtp") return SecondFactor::ValidOtp;
  if (s == "interceptedOtp") return SecondFactor::InterceptedOtp;
  throw std::invalid_argument("unknown secondFactor '" + s + "'");
}

class Fd {
 public:
  explicit Fd(int fd) : fd_(fd) {}
  Fd(const Fd&) = delete;
  Fd& operator=(const Fd&) = delete;
  ~Fd() {
    if (fd_ >= 0) ::close(fd_);
  }
  int get() const noexcept { return fd_; }

 private:
  int fd_;
};

[[noreturn]] void throw_errno(const char* what) { throw std::system_error(errno, std::generic_category(), what); }

bool write_all(int fd, std::string_view data) {
  while (!data.empty()) {
    const auto n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
  return true;
}

}  // namespace

std::string handle_facade_line(AuthService& svc, std::string_view line) {
  try {
    const auto req = json::parse(line);
    if (!req.is_object()) throw std::invalid_argument("request must be a JSON object");
    for (const auto& [key, _] : req.items()) {
      if (key != "tick" && key != "sourceIp" && key != "username" && key != "password" && key != "secondFactor") {
        throw std::invalid_argument("unknown field '" + key + "'");
      }
    }
    LoginAttempt attempt;
    attempt.tick = req.at("tick").get<Tick>();
    attempt.sourceIp = IpId{req.at("sourceIp").get<std::uint32_t>()};
    attempt.username = req.at("username").get<std::string>();
    attempt.password = req.at("password").get<std::string>();
    attempt.secondFactorPresented = parse_factor(req.value("secondFactor", std::string("none")));
    return json{{"outcome", std::string(to_string(svc.authenticate(attempt)))}}.dump();
  } catch (const std::exception& e) {
    return json{{"error", e.what()}}.dump();
  }
}

std::size_t serve_facade(AuthService& svc, const FacadeOptions& opts, const std::atomic<bool>& stop) {
  Fd listener(::socket(AF_UNIX, SOCK_STREAM, 0));
  if (listener.get() < 0) throw_errno("socket");

  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  const auto path = opts.socketPath.string();
  if (path.size() >= sizeof(addr.sun_path)) throw std::invalid_argument("socket path too long: " + path);
  std::memcpy(addr.sun_path, path.c_str(), path.size() + 1);
  ::unlink(path.c_str());
  if (::bind(listener.get(), reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0) throw_errno("bind");
  if (::listen(listener.get(), 4) < 0) throw_errno("listen");

  std::size_t served = 0;
  const auto done = [&] { return stop.load() || (opts.maxRequests != 0 && served >= opts.maxRequests); };

  while (!done()) {
    pollfd pfd{listener.get(), POLLIN, 0};
    const int ready = ::poll(&pfd, 1, 100);
    if (ready < 0) {
      if (errno == EINTR) continue;
      throw_errno("poll");
    }
    if (ready == 0) continue;
    Fd client(::accept(listener.get(), nullptr, nullptr));
    if (client.get() < 0) continue;

    std::string buffer;
    char chunk[4096];
    while (!done()) {
      pollfd cp{client.get(), POLLIN, 0};
      const int r = ::poll(&cp, 1, 100);
      if (r == 0) continue;
      if (r < 0 && errno == EINTR) continue;
      const auto n = ::recv(client.get(), chunk, sizeof(chunk), 0);
      if (n <= 0) break;
      buffer.append(chunk, static_cast<std::size_t>(n));
      std::size_t pos;
      bool alive = true;
      while (alive && (pos = buffer.find('\n')) != std::string::npos && !done()) {
        auto line = buffer.substr(0, pos);
        buffer.erase(0, pos + 1);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        alive = write_all(client.get(), handle_facade_line(svc, line) + "\n");
        ++served;
      }
      if (!alive) break;
    }
  }
  ::unlink(path.c_str());
  return served;
}

}  // namespace credsim
