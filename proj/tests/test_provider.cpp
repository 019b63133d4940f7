#include "tsrep/hidden_state_file.hpp"
#include "tsrep/provider.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

using namespace tsrep;

namespace {

std::string temp_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("tsrep_provider_" + name);
  std::filesystem::create_directories(p);
  return p.string();
}

RowVector random_series(Eigen::Index T, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  RowVector x(T);
  for (Eigen::Index t = 0; t < T; ++t) x(t) = g(rng);
  return x;
}

bool identical(const HiddenStates& a, const HiddenStates& b) {
  if (a.layers.size() != b.layers.size()) return false;
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    if (a.layers[l].rows() != b.layers[l].rows() || a.layers[l].cols() != b.layers[l].cols()) return false;
    if (std::memcmp(a.layers[l].data(), b.layers[l].data(), sizeof(double) * a.layers[l].size()) != 0) return false;
  }
  return true;
}

// bitwise reflected CRC-32 (polynomial 0xEDB88320)
std::uint32_t crc32_bitwise(const std::string& s) {
  std::uint32_t c = 0xFFFFFFFFu;
  for (unsigned char b : s) {
    c ^= b;
    for (int k = 0; k < 8; ++k) c = (c >> 1) ^ (0xEDB88320u & (0u - (c & 1u)));
  }
  return ~c;
}

void put_le(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s += static_cast<char>((v >> (8 * i)) & 0xFF);
}

std::uint32_t get_le(const std::string& s, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + i]);
  return v;
}

HiddenStateTable small_table(std::size_t N, std::size_t V, std::vector<std::size_t> dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1, 1);
  HiddenStateTable t(N, std::vector<HiddenStates>(V));
  for (auto& s : t)
    for (auto& hs : s)
      for (auto d : dims) {
        Matrix m(1 + static_cast<Eigen::Index>(rng() % 4), static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
        hs.layers.push_back(m);
      }
  return t;
}

}  // namespace

TEST_CASE("mock: affine rescaling gives bit-identical states") {
  MockProvider p(ProviderSpec{});
  const auto x = random_series(100, 4);
  const auto base = p.extract(x);
  for (double a : {0.5, 2.0, 3.0, 10.0})
    for (double b : {-3.0, 0.0, 5.0, 7.0}) {
      const RowVector y = (a * x.array() + b).matrix();
      CHECK(identical(p.extract(y), base));
    }
}

TEST_CASE("mock: shapes") {
  ProviderSpec spec;
  MockProvider p(spec);
  const auto single = p.extract(random_series(16, 1));
  REQUIRE(single.num_layers() == 4);
  for (const auto& m : single.layers) {
    CHECK(m.rows() == 1);
    CHECK(m.cols() == 32);
  }
  const auto longer = p.extract(random_series(40, 1));
  CHECK(longer.layers[0].rows() == 3);
  CHECK_THROWS_AS(p.extract(random_series(1, 1)), DataError);
}

TEST_CASE("mock: constant series equals zero series") {
  MockProvider p(ProviderSpec{});
  CHECK(identical(p.extract(RowVector::Constant(50, 4.25)), p.extract(RowVector::Zero(50))));
}

TEST_CASE("mock: determinism and model identity") {
  ProviderSpec a;
  const auto x = random_series(64, 9);
  CHECK(identical(MockProvider(a).extract(x), mock_extract(x, a)));
  ProviderSpec b = a;
  b.model_id = "other";
  CHECK_FALSE(identical(MockProvider(b).extract(x), MockProvider(a).extract(x)));
  b = a;
  b.layers = 0;
  CHECK_THROWS_AS(MockProvider{b}, ConfigError);
}

TEST_CASE("instance_normalize") {
  const RowVector x = (RowVector(4) << 1, 2, 3, 4).finished();
  const RowVector z = instance_normalize(x);
  CHECK(std::abs(z.mean()) < 1e-6);
  CHECK(z(3) == doctest::Approx(3.0 / std::sqrt(5.0)).epsilon(1e-6));
}

TEST_CASE("interchange: byte layout") {
  HiddenStateHeader h;
  h.model_id = "m";
  h.dataset = "d";
  h.split = Split::test;
  h.samples = 1;
  h.variates = 1;
  h.dims = {2};
  HiddenStateTable t(1, std::vector<HiddenStates>(1));
  t[0][0].layers.push_back((Matrix(1, 2) << 0.5, -2.0).finished());
  const auto bytes = encode_hidden_states(h, t);

  const auto hlen = get_le(bytes, 0);
  const auto header = nlohmann::json::parse(bytes.substr(4, hlen));
  CHECK(header.at("format_version") == 1);
  CHECK(header.at("model_id") == "m");
  CHECK(header.at("dataset") == "d");
  CHECK(header.at("split") == "test");
  CHECK(header.at("N") == 1);
  CHECK(header.at("V") == 1);
  CHECK(header.at("L") == 1);
  CHECK(header.at("dims") == nlohmann::json::array({2}));
  CHECK(header.at("dtype") == "f32");
  CHECK(header.at("endianness") == "little");

  std::string payload;
  put_le(payload, 1);
  float vals[2] = {0.5f, -2.0f};
  for (float f : vals) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    put_le(payload, u);
  }
  CHECK(bytes.substr(4 + hlen, payload.size()) == payload);
  CHECK(bytes.size() == 4 + hlen + payload.size() + 4);
  CHECK(get_le(bytes, bytes.size() - 4) == crc32_bitwise(payload));
}

TEST_CASE("interchange: round trip at f32 precision") {
  const auto dir = temp_dir("rt");
  HiddenStateHeader h;
  h.model_id = "mock";
  h.dataset = "toy";
  h.split = Split::train;
  h.samples = 3;
  h.variates = 2;
  h.dims = {5, 3};
  const auto t = small_table(3, 2, h.dims, 2);
  ProviderSpec spec;
  spec.kind = ProviderKind::file;
  spec.directory = dir;
  FileProvider fp(spec);
  write_hidden_states(fp.path_for("toy", Split::train, false), h, t);
  CHECK_FALSE(std::filesystem::exists(fp.path_for("toy", Split::train, false) + ".tmp"));

  for (std::size_t i = 0; i < 3; ++i)
    for (Eigen::Index v = 0; v < 2; ++v) {
      const auto got = file_extract("toy", Split::train, i, v, spec);
      REQUIRE(got.num_layers() == 2);
      for (std::size_t l = 0; l < 2; ++l) {
        const Matrix expect = t[i][v].layers[l].cast<float>().cast<double>();
        CHECK(got.layers[l] == expect);
      }
    }
  try {
    file_extract("toy", Split::train, 0, 2, spec);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("variate out of range") != std::string::npos);
  }
  CHECK_THROWS_AS(file_extract("toy", Split::test, 0, 0, spec), DataError);
}

TEST_CASE("interchange: corruption is detected") {
  HiddenStateHeader h;
  h.model_id = "mock";
  h.dataset = "x";
  h.samples = 2;
  h.variates = 1;
  h.dims = {4};
  const auto bytes = encode_hidden_states(h, small_table(2, 1, h.dims, 5));

  const auto truncated = bytes.substr(0, bytes.size() - 7);
  try {
    decode_hidden_states(truncated);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("checksum") != std::string::npos);
  }
  auto flipped = bytes;
  flipped[flipped.size() - 9] ^= 0x10;
  CHECK_THROWS_AS(decode_hidden_states(flipped), DataError);
  CHECK_THROWS_AS(decode_hidden_states(bytes.substr(0, 6)), DataError);

  h.samples = 3;  // header disagrees with the table
  CHECK_THROWS_AS(encode_hidden_states(h, small_table(2, 1, h.dims, 5)), DataError);
}

TEST_CASE("file provider without directory") {
  ProviderSpec spec;
  spec.kind = ProviderKind::file;
  CHECK_THROWS_AS(make_provider(spec), ConfigError);
}
