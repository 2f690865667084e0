#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <span>

namespace covertext {

// One endpoint of a lossless, ordered, duplex in-process byte stream.
// send() blocks when the peer's buffer is at capacity (backpressure);
// recv() blocks until data or EOF. Closing an endpoint lets the peer drain
// buffered bytes and then read EOF.
class ByteChannel {
 public:
  void send(std::span<const std::uint8_t> data);
  // Returns bytes read (>= 1), or 0 on EOF.
  std::size_t recv(std::uint8_t* buf, std::size_t want);
  // Reads exactly n bytes; throws Truncated on early EOF.
  void recv_exact(std::uint8_t* buf, std::size_t n);
  void close();

  ~ByteChannel();

 private:
  friend std::pair<std::shared_ptr<ByteChannel>, std::shared_ptr<ByteChannel>> channel_pair(
      std::size_t capacity);

  struct Pipe {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<std::uint8_t> data;
    std::size_t capacity = 0;
    bool closed = false;
  };

  std::shared_ptr<Pipe> out_;  // written by this endpoint
  std::shared_ptr<Pipe> in_;   // read by this endpoint
};

std::pair<std::shared_ptr<ByteChannel>, std::shared_ptr<ByteChannel>> channel_pair(
    std::size_t capacity = 1 << 16);

}  // namespace covertext
