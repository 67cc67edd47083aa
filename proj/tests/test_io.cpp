#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "corpus.hpp"
#include "nchad/io.hpp"

using namespace nchad;

namespace {

std::filesystem::path tempPath(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nchad_io_" + name);
}

}  // namespace

TEST_CASE("matrix round trips") {
  SUBCASE("Fourier matrix over the scalar shape") {
    const NCMatrix f = fourier(2, AlgebraShape::scalar());
    const auto path = tempPath("f2.json");
    saveMatrix(f, path.string());
    const NCMatrix back = loadMatrix(path.string());
    CHECK(opDistance(back, f) == 0.0);
    std::filesystem::remove(path);
  }

  SUBCASE("noncommutative matrix is value-exact and save is byte-stable") {
    const NCMatrix m = corpus::deformedF2F2(23);
    const std::string text1 = serializeMatrix(m);
    const NCMatrix back = parseMatrix(text1);
    CHECK(opDistance(back, m) == 0.0);
    CHECK(serializeMatrix(back) == text1);
  }
}

TEST_CASE("parse failures carry distinct codes") {
  SUBCASE("malformed JSON") {
    try {
      (void)parseMatrix("{not json");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::BadJson);
    }
  }

  SUBCASE("wrong version") {
    try {
      (void)parseMatrix(R"({"version":2,"rows":1,"cols":1,"shape":[1],"entries":[[[[[1,0]]]]]})");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::BadVersion);
    }
  }

  SUBCASE("row count mismatch") {
    try {
      (void)parseMatrix(R"({"version":1,"rows":2,"cols":1,"shape":[1],"entries":[[[[[1,0]]]]]})");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::DimMismatch);
    }
  }

  SUBCASE("fiber block size mismatch") {
    try {
      (void)parseMatrix(R"({"version":1,"rows":1,"cols":1,"shape":[2],"entries":[[[[[1,0]]]]]})");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::DimMismatch);
    }
  }

  SUBCASE("NaN string") {
    try {
      (void)parseMatrix(
          R"({"version":1,"rows":1,"cols":1,"shape":[1],"entries":[[[[[["NaN",0]]]]]]})");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::NonFinite);
    }
  }

  SUBCASE("overflowing literal") {
    try {
      (void)parseMatrix(
          R"({"version":1,"rows":1,"cols":1,"shape":[1],"entries":[[[[[[1e999,0]]]]]]})");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::NonFinite);
    }
  }

  SUBCASE("missing file") {
    try {
      (void)loadMatrix("/nonexistent/nchad/matrix.json");
      FAIL("expected IoError");
    } catch (const IoError& e) {
      CHECK(e.code() == IoErrorCode::FileAccess);
    }
  }
}

TEST_CASE("json writer") {
  SUBCASE("objects, arrays and escaping") {
    JsonWriter w;
    w.beginObject();
    w.key("name").value("a\"b\\c\n");
    w.key("values").beginArray().value(1).value(0.5).value(true).endArray();
    w.key("nested").beginObject().key("x").value(-2).endObject();
    w.endObject();
    CHECK(w.str() ==
          "{\"name\":\"a\\\"b\\\\c\\n\",\"values\":[1,0.5,true],\"nested\":{\"x\":-2}}");
  }

  SUBCASE("17 significant digits round-trip doubles") {
    const double v = 1.0 / 3.0;
    const std::string s = formatDouble(v);
    CHECK(std::stod(s) == v);
    CHECK(formatDouble(0.5) == "0.5");
  }

  SUBCASE("non-finite floats are refused") {
    CHECK_THROWS_AS(formatDouble(std::numeric_limits<double>::infinity()), std::logic_error);
  }
}
