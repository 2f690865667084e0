#include "covertext/error.hpp"

namespace covertext {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::UnknownProfile: return "UnknownProfile";
    case Errc::MessageTooLong: return "MessageTooLong";
    case Errc::BadK: return "BadK";
    case Errc::BadV: return "BadV";
    case Errc::BadLength: return "BadLength";
    case Errc::TooLong: return "TooLong";
    case Errc::TooFewSamples: return "TooFewSamples";
    case Errc::BadElement: return "BadElement";
    case Errc::BudgetExhausted: return "BudgetExhausted";
    case Errc::NotEnoughFrames: return "NotEnoughFrames";
    case Errc::ProtocolDesync: return "ProtocolDesync";
    case Errc::NotReady: return "NotReady";
    case Errc::EntropyTooLow: return "EntropyTooLow";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::BadMagic: return "BadMagic";
    case Errc::BadVersion: return "BadVersion";
    case Errc::Truncated: return "Truncated";
    case Errc::BadGroup: return "BadGroup";
    case Errc::BadConfig: return "BadConfig";
    case Errc::IoError: return "IoError";
  }
  return "Error";
}

}  // namespace covertext
