#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"

#include "coherence/errors.hpp"
#include "coherence/io.hpp"

using namespace coherence;

namespace {

std::string parse_error(const Json& j, bool channel) {
  try {
    if (channel)
      channel_from_json(j);
    else
      state_from_json(j);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("state round trip") {
  Rng rng(1);
  const DensityMatrix rho = random_density(3, 2, rng);
  const DensityMatrix back = state_from_json(Json::parse(state_to_json(rho).dump()));
  CHECK(max_abs(back.matrix() - rho.matrix()) == 0.0);
}

TEST_CASE("channel round trip") {
  Rng rng(2);
  const KrausChannel ch = random_channel(2, 3, rng);
  const KrausChannel back = channel_from_json(Json::parse(channel_to_json(ch).dump()));
  REQUIRE(back.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) CHECK(max_abs(back.kraus()[k] - ch.kraus()[k]) == 0.0);
}

TEST_CASE("malformed input names the offending field") {
  CHECK(parse_error(Json::parse(R"({"matrix": [[[1,0]]]})"), false).find("dim") != std::string::npos);
  CHECK(parse_error(Json::parse(R"({"dim": 2, "matrix": [[[1,0],[0,0]],[[0,0]]]})"), false).find("matrix[1]") !=
        std::string::npos);
  CHECK(parse_error(Json::parse(R"({"dim": 1, "matrix": [[[1,"x"]]]})"), false).find("matrix[0][0]") !=
        std::string::npos);
  CHECK(parse_error(Json::parse(R"({"dim": 2, "matrix": [[[1,0]]]})"), false) != "");
  CHECK(parse_error(Json::parse(R"({"dim_in": 1, "dim_out": 1})"), true).find("kraus") != std::string::npos);
  CHECK(parse_error(Json::parse(R"({"dim_in": 2, "dim_out": 2, "kraus": [[[[1,0]]]]})"), true).find("kraus[0]") !=
        std::string::npos);
}

TEST_CASE("invalid density matrices report violated invariants") {
  const Json j = Json::parse(R"({"dim": 2, "matrix": [[[1,0],[0.9,0]],[[0.9,0],[-0.1,0]]]})");
  try {
    state_from_json(j);
    FAIL("expected InvalidStateError");
  } catch (const InvalidStateError& e) {
    CHECK(std::string(e.what()).find("positive") != std::string::npos);
  }
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto truncated = dir / "coherence_io_truncated.json";
  std::ofstream(truncated) << R"({"dim": 2, "matr)";
  CHECK_THROWS_AS(read_json_file(truncated), ParseError);
  CHECK_THROWS_AS(read_json_file(dir / "coherence_io_missing.json"), ParseError);
  std::filesystem::remove(truncated);
  CHECK(channel_from_json(read_json_file(COHERENCE_DATA_DIR "/example_channel.json")).size() == 2);
}
