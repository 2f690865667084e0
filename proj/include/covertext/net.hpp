#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>

namespace covertext {

// Thin RAII wrapper over a connected TCP socket.
class TcpConn {
 public:
  TcpConn() = default;
  explicit TcpConn(int fd) : fd_(fd) {}
  TcpConn(TcpConn&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
  TcpConn& operator=(TcpConn&& other) noexcept;
  ~TcpConn();

  void send_all(std::span<const std::uint8_t> data);
  std::size_t recv_some(std::uint8_t* buf, std::size_t want);  // 0 on EOF
  void recv_exact(std::uint8_t* buf, std::size_t n);
  void close();
  bool open() const { return fd_ >= 0; }

 private:
  int fd_ = -1;
};

TcpConn tcp_connect(const std::string& host, std::uint16_t port);

class TcpServer {
 public:
  explicit TcpServer(std::uint16_t port);  // port 0 picks an ephemeral port
  ~TcpServer();

  std::uint16_t port() const { return port_; }
  // Accepts the first connection and closes the listener, so a reconnect
  // attempt mid-session is refused.
  TcpConn accept_one();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

}  // namespace covertext
