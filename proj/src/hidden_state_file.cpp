#include "tsrep/hidden_state_file.hpp"

#include <json.hpp>
#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tsrep {

static_assert(std::endian::native == std::endian::little, "interchange codec assumes little-endian host");

namespace {

void put_u32(std::string& out, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

void put_f32(std::string& out, float v) {
  char b[4];
  std::memcpy(b, &v, 4);
  out.append(b, 4);
}

class Reader {
public:
  Reader(const std::string& bytes, std::size_t begin, std::size_t end)
      : bytes_(bytes), pos_(begin), end_(end) {}

  std::uint32_t u32() {
    need(4);
    std::uint32_t v;
    std::memcpy(&v, bytes_.data() + pos_, 4);
    pos_ += 4;
    return v;
  }
  float f32() {
    need(4);
    float v;
    std::memcpy(&v, bytes_.data() + pos_, 4);
    pos_ += 4;
    return v;
  }
  bool done() const { return pos_ == end_; }

private:
  void need(std::size_t n) const {
    if (end_ - pos_ < n) throw DataError("hidden-state file: payload shorter than header implies");
  }
  const std::string& bytes_;
  std::size_t pos_;
  std::size_t end_;
};

std::uint32_t crc_of(const char* data, std::size_t n) {
  uLong crc = crc32(0L, Z_NULL, 0);
  // zlib takes uInt lengths
  while (n > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(n, 1u << 30));
    crc = crc32(crc, reinterpret_cast<const Bytef*>(data), chunk);
    data += chunk;
    n -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

}  // namespace

std::string encode_hidden_states(const HiddenStateHeader& header, const HiddenStateTable& states) {
  if (states.size() != header.samples) throw DataError("hidden-state file: sample count mismatch");
  nlohmann::ordered_json j;
  j["format_version"] = header.format_version;
  j["model_id"] = header.model_id;
  j["dataset"] = header.dataset;
  j["split"] = to_string(header.split);
  j["N"] = header.samples;
  j["V"] = header.variates;
  j["L"] = header.dims.size();
  j["dims"] = header.dims;
  j["dtype"] = "f32";
  j["endianness"] = "little";
  const std::string json = j.dump();

  std::string payload;
  for (const auto& sample : states) {
    if (sample.size() != header.variates) throw DataError("hidden-state file: variate count mismatch");
    for (const auto& hs : sample) {
      if (hs.layers.size() != header.dims.size())
        throw DataError("hidden-state file: layer count mismatch");
      for (std::size_t l = 0; l < hs.layers.size(); ++l) {
        const auto& m = hs.layers[l];
        if (static_cast<std::size_t>(m.cols()) != header.dims[l])
          throw DataError("hidden-state file: layer width mismatch");
        put_u32(payload, static_cast<std::uint32_t>(m.rows()));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          for (Eigen::Index c = 0; c < m.cols(); ++c) put_f32(payload, static_cast<float>(m(r, c)));
      }
    }
  }

  std::string out;
  put_u32(out, static_cast<std::uint32_t>(json.size()));
  out += json;
  out += payload;
  put_u32(out, crc_of(payload.data(), payload.size()));
  return out;
}

HiddenStateFile decode_hidden_states(const std::string& bytes) {
  if (bytes.size() < 8) throw DataError("hidden-state file: truncated");
  std::uint32_t hlen;
  std::memcpy(&hlen, bytes.data(), 4);
  if (bytes.size() < 8 + static_cast<std::size_t>(hlen)) throw DataError("hidden-state file: truncated header");

  HiddenStateFile f;
  try {
    const auto j = nlohmann::json::parse(bytes.begin() + 4, bytes.begin() + 4 + hlen);
    f.header.format_version = j.at("format_version").get<int>();
    f.header.model_id = j.at("model_id").get<std::string>();
    f.header.dataset = j.at("dataset").get<std::string>();
    f.header.split = parse_split(j.at("split").get<std::string>());
    f.header.samples = j.at("N").get<std::size_t>();
    f.header.variates = j.at("V").get<std::size_t>();
    f.header.dims = j.at("dims").get<std::vector<std::size_t>>();
    if (j.at("L").get<std::size_t>() != f.header.dims.size())
      throw DataError("hidden-state file: L does not match dims");
    if (j.at("dtype").get<std::string>() != "f32" || j.at("endianness").get<std::string>() != "little")
      throw DataError("hidden-state file: unsupported dtype or endianness");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("hidden-state file: bad header: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("hidden-state file: bad header: ") + e.what());
  }
  if (f.header.format_version != kHiddenStateFormatVersion)
    throw DataError("hidden-state file: unsupported format version");
  if (f.header.dims.empty()) throw DataError("hidden-state file: L must be >= 1");

  const std::size_t begin = 4 + hlen;
  const std::size_t end = bytes.size() - 4;
  std::uint32_t stored;
  std::memcpy(&stored, bytes.data() + end, 4);
  if (crc_of(bytes.data() + begin, end - begin) != stored)
    throw DataError("hidden-state file: payload checksum mismatch");

  Reader rd(bytes, begin, end);
  f.states.resize(f.header.samples);
  for (auto& sample : f.states) {
    sample.resize(f.header.variates);
    for (auto& hs : sample) {
      for (const auto d : f.header.dims) {
        const auto seq = rd.u32();
        if (seq == 0) throw DataError("hidden-state file: empty layer");
        Matrix m(static_cast<Eigen::Index>(seq), static_cast<Eigen::Index>(d));
        for (Eigen::Index r = 0; r < m.rows(); ++r)
          for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = static_cast<double>(rd.f32());
        hs.layers.push_back(std::move(m));
      }
      hs.validate();
    }
  }
  if (!rd.done()) throw DataError("hidden-state file: trailing payload bytes (shape inconsistency)");
  return f;
}

void write_hidden_states(const std::string& path, const HiddenStateHeader& header,
                         const HiddenStateTable& states) {
  const auto bytes = encode_hidden_states(header, states);
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + tmp + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) throw DataError("cannot rename to '" + path + "'");
}

HiddenStateFile read_hidden_states(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("hidden-state file not found: '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return decode_hidden_states(buf.str());
}

}  // namespace tsrep
