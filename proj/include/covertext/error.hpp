#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace covertext {

enum class Errc {
  LengthMismatch,
  UnknownProfile,
  MessageTooLong,
  BadK,
  BadV,
  BadLength,
  TooLong,
  TooFewSamples,
  BadElement,
  BudgetExhausted,
  NotEnoughFrames,
  ProtocolDesync,
  NotReady,
  EntropyTooLow,
  DomainMismatch,
  ShapeMismatch,
  BadMagic,
  BadVersion,
  Truncated,
  BadGroup,
  BadConfig,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + std::move(what)),
        code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Thrown by the rejection sampler when no attempt within the budget hit the
// target block. Carries the attempt count for diagnostics.
class BudgetExhaustedError : public Error {
 public:
  explicit BudgetExhaustedError(std::uint64_t attempts, std::string ctx = {})
      : Error(Errc::BudgetExhausted,
              "no hit after " + std::to_string(attempts) + " attempts" +
                  (ctx.empty() ? "" : " (" + ctx + ")")),
        attempts_(attempts) {}
  std::uint64_t attempts() const { return attempts_; }

 private:
  std::uint64_t attempts_;
};

}  // namespace covertext
