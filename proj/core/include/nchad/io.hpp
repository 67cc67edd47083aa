#pragma once

#include <string>

#include "nchad/hadamard.hpp"

namespace nchad {

enum class IoErrorCode {
  BadJson,      // unparsable JSON or missing/mistyped structure
  BadVersion,   // unsupported file version
  DimMismatch,  // internally inconsistent dimensions
  NonFinite,    // NaN or infinite float
  FileAccess,   // unreadable/unwritable path
};

std::string ioErrorCodeName(IoErrorCode code);

class IoError : public std::runtime_error {
public:
  IoError(IoErrorCode code, const std::string& message)
      : std::runtime_error(ioErrorCodeName(code) + ": " + message), code_(code) {}

  IoErrorCode code() const noexcept { return code_; }

private:
  IoErrorCode code_;
};

// Matrix file, version 1: {"version":1,"rows":R,"cols":C,"shape":[K...],
// "entries":[[entry...]...]} where an entry is one [re,im]-pair grid per
// fiber. Serialization prints floats with 17 significant digits, so
// save/load round-trips are value-exact and repeated saves byte-identical.
NCMatrix loadMatrix(const std::string& path);
void saveMatrix(const NCMatrix& m, const std::string& path);

NCMatrix parseMatrix(const std::string& text);
std::string serializeMatrix(const NCMatrix& m);

// Minimal deterministic JSON emitter used for all reports: insertion-order
// keys, %.17g floats, no locale dependence.
class JsonWriter {
public:
  JsonWriter& beginObject();
  JsonWriter& endObject();
  JsonWriter& beginArray();
  JsonWriter& endArray();
  JsonWriter& key(const std::string& name);
  JsonWriter& value(double v);
  JsonWriter& value(long long v);
  JsonWriter& value(int v) { return value(static_cast<long long>(v)); }
  JsonWriter& value(std::uint64_t v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& raw(const std::string& fragment);

  const std::string& str() const { return out_; }

private:
  std::string out_;
  std::vector<bool> needComma_{};

  void preValue();
};

std::string formatDouble(double v);

}  // namespace nchad
