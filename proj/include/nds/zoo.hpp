#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nds/system.hpp"

namespace nds {

// Nonautonomous full shift: level k holds truncated words whose digit j draws
// from the alphabet of absolute level k+j; the map drops the leading symbol.
struct ShiftSpec {
  std::vector<int> alphabet;  // sizes m_k, each >= 2
  bool cycle = true;          // repeat pattern cyclically; else extend last
  int truncation = 14;        // word length at level 0
  std::string label = "shift";
};

std::unique_ptr<NdSystem> make_na_shift(const ShiftSpec& spec);

// Expanding chain x -> 2x on growing intervals [0, 2^k], discretized on a
// shared grid. The three metric kinds give the same maps but different
// geometry per level.
struct DoublingChainSpec {
  GridMetric metric = GridMetric::Euclidean;
  double delta = 1e-4;
  int levels = 33;
  std::string label = "doubling";
};

std::unique_ptr<NdSystem> make_doubling_chain(const DoublingChainSpec& spec);

// Repeller driven by a nonautonomous family of affine contractions of [0,1].
// branches[r] lists (ratio, offset) pairs, ordered by offset, used at step
// r+1 of the construction; level-k carriers are the depth-limited nets of the
// surviving sets, and the map removes the leading branch choice.
struct NifsSpec {
  std::vector<std::vector<std::pair<double, double>>> branches;
  bool cycle = true;
  int depth = 11;       // branch word length at level 0
  double min_gap = 1e-6;
  std::string label = "nifs";
};

struct NifsRepeller {
  std::unique_ptr<NdSystem> system;
  std::vector<double> net;  // level-0 carrier values
  double net_radius = 0.0;  // certified covering radius of the net
};

NifsRepeller make_nifs_repeller(const NifsSpec& spec);

// Alphabet pattern made of maximal blocks: block i repeats its size 2^i
// times, alternating between 2 and 4.
std::vector<int> geometric_blocks_alphabet(int length);

struct BoxCountReport {
  double dimension = 0.0;
  std::vector<std::int64_t> counts;  // occupied boxes per scale
  std::vector<double> log_scales;
};

// Box-counting dimension of a subset of [0,1] represented by sample values;
// boxes have side base^-m for m in [m_lo, m_hi], slope fit by least squares.
BoxCountReport box_count_dimension(std::span<const double> values, double base,
                                   int m_lo, int m_hi);

// Canonical instances used across the test suites.
std::unique_ptr<NdSystem> make_shift_2(int truncation = 14);
std::unique_ptr<NdSystem> make_shift_24(int truncation = 14);
std::unique_ptr<NdSystem> make_shift_blocks(int truncation = 66);
NifsRepeller make_nifs_cantor(int depth = 11);
NifsRepeller make_nifs_alt23(int depth = 9);

}  // namespace nds
