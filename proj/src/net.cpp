#include "covertext/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "covertext/error.hpp"

namespace covertext {

TcpConn& TcpConn::operator=(TcpConn&& other) noexcept {
  if (this != &other) {
    close();
    fd_ = other.fd_;
    other.fd_ = -1;
  }
  return *this;
}

TcpConn::~TcpConn() { close(); }

void TcpConn::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void TcpConn::send_all(std::span<const std::uint8_t> data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd_, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n <= 0) throw Error(Errc::IoError, std::string("send: ") + std::strerror(errno));
    sent += std::size_t(n);
  }
}

std::size_t TcpConn::recv_some(std::uint8_t* buf, std::size_t want) {
  for (;;) {
    ssize_t n = ::recv(fd_, buf, want, 0);
    if (n == 0) return 0;
    if (n > 0) return std::size_t(n);
    if (errno == EINTR) continue;
    throw Error(Errc::IoError, std::string("recv: ") + std::strerror(errno));
  }
}

void TcpConn::recv_exact(std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    std::size_t r = recv_some(buf + got, n - got);
    if (r == 0) throw Error(Errc::Truncated, "connection closed mid-frame");
    got += r;
  }
}

TcpConn tcp_connect(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  std::string service = std::to_string(port);
  int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res);
  if (rc != 0)
    throw Error(Errc::IoError, "resolve " + host + ": " + gai_strerror(rc));
  int fd = -1;
  for (addrinfo* ai = res; ai; ai = ai->ai_next) {
    fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd);
    fd = -1;
  }
  ::freeaddrinfo(res);
  if (fd < 0)
    throw Error(Errc::IoError,
                "connect " + host + ":" + service + ": " + std::strerror(errno));
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpConn(fd);
}

TcpServer::TcpServer(std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw Error(Errc::IoError, std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0)
    throw Error(Errc::IoError,
                "bind 127.0.0.1:" + std::to_string(port) + ": " + std::strerror(errno));
  if (::listen(fd_, 1) != 0)
    throw Error(Errc::IoError, std::string("listen: ") + std::strerror(errno));
  socklen_t len = sizeof(addr);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
}

TcpServer::~TcpServer() {
  if (fd_ >= 0) ::close(fd_);
}

TcpConn TcpServer::accept_one() {
  int conn = ::accept(fd_, nullptr, nullptr);
  if (conn < 0) throw Error(Errc::IoError, std::string("accept: ") + std::strerror(errno));
  ::close(fd_);
  fd_ = -1;
  int one = 1;
  ::setsockopt(conn, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  return TcpConn(conn);
}

}  // namespace covertext
