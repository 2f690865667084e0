#pragma once

#include <optional>
#include <string>
#include <vector>

#include "covertext/cover.hpp"
#include "covertext/extract.hpp"
#include "covertext/frame.hpp"
#include "covertext/params.hpp"
#include "covertext/scheme.hpp"

namespace covertext {

struct BatteryTest {
  std::string name;
  double statistic = 0;
  double z = 0;              // signed, where meaningful
  double p = 1;              // already corrected for the test's internal multiplicity
  bool applicable = true;
  bool pass = true;
  std::string detail;
};

struct BatteryReport {
  std::vector<BatteryTest> tests;
  double family_alpha = 1e-3;
  bool pass = true;

  const BatteryTest* find(const std::string& name) const;
  std::string text() const;   // line-oriented report
  std::string json() const;
};

struct ObserverKeys {
  BitStr sk0;  // decrypts frames sent to P0
  BitStr sk1;  // decrypts frames sent to P1
};

// The Honest-vs-Subliminal distinguisher battery. Five tests, each aimed at
// one hybrid boundary of the indistinguishability argument:
//   decrypt-support   every frame decrypts to a cover-support message
//   bit-frequency     per-ciphertext-bit two-sample z tests
//   ext-output        chi-square two-sample test on seeded-extractor outputs
//                     of post-seed-phase frames (seed quality / rejection
//                     sampling detectability)
//   gt-pairs          GT statistics of consecutive same-party pairs
//   ext-correlation   joint distribution of consecutive extractor outputs
//                     (key-exchange / SKE pseudorandomness)
// Each test's p value is Bonferroni-corrected for its internal comparisons;
// the verdict rejects when any test's corrected p falls at or below
// family_alpha divided by the number of applicable p-tests.
//
// seed_hint overrides the per-transcript seeds; by default each transcript's
// seed is recomputed from its own first d exchange-rounds, exactly as the
// parties (and any eavesdropper) would.
BatteryReport battery(const Transcript& transcript_a, const Transcript& transcript_b,
                      const SecurityParams& params, const Scheme& scheme,
                      const std::optional<ObserverKeys>& observer_keys,
                      const CoverDist* dist = nullptr,
                      const std::optional<HashSeed>& seed_hint = std::nullopt,
                      double family_alpha = 1e-3);

}  // namespace covertext
