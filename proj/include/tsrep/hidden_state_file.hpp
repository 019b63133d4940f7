#pragma once

#include "tsrep/provider.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsrep {

inline constexpr int kHiddenStateFormatVersion = 1;

/// Header of a hidden-state interchange file.
///
/// Layout (all integers little-endian):
///   u32 header_length, header_length bytes of JSON
///   payload: per sample, per variate, per layer: u32 seq', seq' x D_l f32 row-major
///   u32 CRC32 of the payload bytes
struct HiddenStateHeader {
  int format_version = kHiddenStateFormatVersion;
  std::string model_id;
  std::string dataset;
  Split split = Split::train;
  std::size_t samples = 0;
  std::size_t variates = 0;
  std::vector<std::size_t> dims;  // D_1..D_L
};

/// [sample][variate] -> hidden states
using HiddenStateTable = std::vector<std::vector<HiddenStates>>;

struct HiddenStateFile {
  HiddenStateHeader header;
  HiddenStateTable states;
};

std::string encode_hidden_states(const HiddenStateHeader& header, const HiddenStateTable& states);
HiddenStateFile decode_hidden_states(const std::string& bytes);

void write_hidden_states(const std::string& path, const HiddenStateHeader& header,
                         const HiddenStateTable& states);
HiddenStateFile read_hidden_states(const std::string& path);

}  // namespace tsrep
