#include <sys/socket.h>
#include <sys/un.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstring>
#include <thread>

#include <gtest/gtest.h>

#include "credsim/authsvc/facade.hpp"
#include "test_support.hpp"
#include "json.hpp"

namespace credsim {
namespace {

using testing_support::simple_accounts;
using testing_support::TempDir;

AuthService banning_service() {
  DefenseStack d;
  d.ban.enabled = true;
  return AuthService(ServiceConfig{d}, simple_accounts(3), RngStream(2));
}

TEST(Facade, HandlesOneLine) {
  auto svc = banning_service();
  EXPECT_EQ(handle_facade_line(svc, R"({"tick":0,"sourceIp":1,"username":"user1","password":"pw1"})"),
            R"({"outcome":"Success"})");
  EXPECT_EQ(handle_facade_line(svc, R"({"tick":0,"sourceIp":1,"username":"user1","password":"x"})"),
            R"({"outcome":"WrongPassword"})");
}

TEST(Facade, ErrorsComeBackAsJson) {
  auto svc = banning_service();
  for (const char* bad : {"not json", "[1]", R"({"tick":0})", R"({"tick":0,"sourceIp":1,"username":"u",
                           "password":"p","extra":1})",
                          R"({"tick":0,"sourceIp":1,"username":"u","password":"p","secondFactor":"sms"})"}) {
    const auto reply = nlohmann::json::parse(handle_facade_line(svc, bad));
    EXPECT_TRUE(reply.contains("error")) << bad;
  }
}

std::string round_trip(const std::string& path, const std::vector<std::string>& lines) {
  const int fd = ::socket(AF_UNIX, SOCK_STREAM, 0);
  sockaddr_un addr{};
  addr.sun_family = AF_UNIX;
  std::strncpy(addr.sun_path, path.c_str(), sizeof(addr.sun_path) - 1);
  for (int i = 0; i < 200; ++i) {
    if (::connect(fd, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) == 0) break;
    std::this_thread::sleep_for(std::chrono::milliseconds(10));
  }
  std::string request;
  for (const auto& l : lines) request += l + "\n";
  ::send(fd, request.data(), request.size(), 0);
  std::string reply;
  char buf[1024];
  std::size_t newlines = 0;
  while (newlines < lines.size()) {
    const auto n = ::recv(fd, buf, sizeof(buf), 0);
    if (n <= 0) break;
    reply.append(buf, static_cast<std::size_t>(n));
    newlines = static_cast<std::size_t>(std::count(reply.begin(), reply.end(), '\n'));
  }
  ::close(fd);
  return reply;
}

TEST(Facade, SocketRoundTrip) {
  TempDir dir("facade");
  const auto sock = (dir / "login.sock").string();
  auto svc = banning_service();
  std::atomic<bool> stop{false};
  std::size_t served = 0;
  std::thread server([&] { served = serve_facade(svc, FacadeOptions{sock, 5}, stop); });

  const std::string wrong = R"({"tick":0,"sourceIp":4,"username":"user0","password":"x"})";
  const auto reply = round_trip(sock, {wrong, wrong, wrong,
                                       R"({"tick":1,"sourceIp":4,"username":"user0","password":"pw0"})", "oops"});
  server.join();
  EXPECT_EQ(served, 5u);
  EXPECT_EQ(reply.substr(0, reply.find("IpBanned")),
            std::string(R"({"outcome":"WrongPassword"})" "\n").append(R"({"outcome":"WrongPassword"})" "\n")
                .append(R"({"outcome":"WrongPassword"})" "\n").append(R"({"outcome":")"));
  EXPECT_NE(reply.find(R"({"error":)"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(sock));
}

TEST(Facade, StopFlagEndsAnIdleServer) {
  TempDir dir("facade-stop");
  auto svc = banning_service();
  std::atomic<bool> stop{false};
  std::thread server([&] { serve_facade(svc, FacadeOptions{dir / "s.sock", 0}, stop); });
  std::this_thread::sleep_for(std::chrono::milliseconds(50));
  stop = true;
  server.join();
  SUCCEED();
}

}  // namespace
}  // namespace credsim
