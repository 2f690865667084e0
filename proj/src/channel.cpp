#include "covertext/channel.hpp"

#include <algorithm>

#include "covertext/error.hpp"

namespace covertext {

void ByteChannel::send(std::span<const std::uint8_t> data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    std::unique_lock<std::mutex> lock(out_->mu);
    out_->cv.wait(lock, [&] { return out_->closed || out_->data.size() < out_->capacity; });
    if (out_->closed) throw Error(Errc::IoError, "send on closed channel");
    std::size_t room = out_->capacity - out_->data.size();
    std::size_t take = std::min(room, data.size() - sent);
    out_->data.insert(out_->data.end(), data.begin() + sent, data.begin() + sent + take);
    sent += take;
    out_->cv.notify_all();
  }
}

std::size_t ByteChannel::recv(std::uint8_t* buf, std::size_t want) {
  if (want == 0) return 0;
  std::unique_lock<std::mutex> lock(in_->mu);
  in_->cv.wait(lock, [&] { return in_->closed || !in_->data.empty(); });
  if (in_->data.empty()) return 0;  // closed and drained
  std::size_t take = std::min(want, in_->data.size());
  std::copy_n(in_->data.begin(), take, buf);
  in_->data.erase(in_->data.begin(), in_->data.begin() + std::ptrdiff_t(take));
  in_->cv.notify_all();
  return take;
}

void ByteChannel::recv_exact(std::uint8_t* buf, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    std::size_t r = recv(buf + got, n - got);
    if (r == 0) throw Error(Errc::Truncated, "channel closed mid-message");
    got += r;
  }
}

void ByteChannel::close() {
  for (auto& pipe : {out_, in_}) {
    if (!pipe) continue;
    std::lock_guard<std::mutex> lock(pipe->mu);
    pipe->closed = true;
    pipe->cv.notify_all();
  }
}

ByteChannel::~ByteChannel() { close(); }

std::pair<std::shared_ptr<ByteChannel>, std::shared_ptr<ByteChannel>> channel_pair(
    std::size_t capacity) {
  auto a = std::make_shared<ByteChannel>();
  auto b = std::make_shared<ByteChannel>();
  auto ab = std::make_shared<ByteChannel::Pipe>();
  auto ba = std::make_shared<ByteChannel::Pipe>();
  ab->capacity = ba->capacity = capacity;
  a->out_ = ab;
  a->in_ = ba;
  b->out_ = ba;
  b->in_ = ab;
  return {a, b};
}

}  // namespace covertext
