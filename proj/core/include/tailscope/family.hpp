#pragma once

#include <string>

#include "tailscope/errors.hpp"

namespace tailscope {

// Tail decay classes the classifier can report. ExponentialOrThinner covers
// everything whose tail profile stays bounded (exponential, Gaussian, finite
// support, ...).
enum class TailFamily {
  Power,
  SubExponential,
  NearExponential,
  ExponentialOrThinner,
};

inline const char* family_token(TailFamily f) {
  switch (f) {
    case TailFamily::Power: return "power";
    case TailFamily::SubExponential: return "subexp";
    case TailFamily::NearExponential: return "nearexp";
    case TailFamily::ExponentialOrThinner: return "expthin";
  }
  return "?";
}

inline TailFamily family_from_token(const std::string& token) {
  if (token == "power") return TailFamily::Power;
  if (token == "subexp") return TailFamily::SubExponential;
  if (token == "nearexp") return TailFamily::NearExponential;
  if (token == "expthin") return TailFamily::ExponentialOrThinner;
  throw InvalidArgumentError("unknown tail family: " + token);
}

}  // namespace tailscope
