#include "nchad/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace nchad {

std::string ioErrorCodeName(IoErrorCode code) {
  switch (code) {
    case IoErrorCode::BadJson: return "BAD_JSON";
    case IoErrorCode::BadVersion: return "BAD_VERSION";
    case IoErrorCode::DimMismatch: return "DIM_MISMATCH";
    case IoErrorCode::NonFinite: return "NONFINITE";
    case IoErrorCode::FileAccess: return "FILE_ACCESS";
  }
  return "UNKNOWN";
}

namespace {

using nlohmann::json;

double readFinite(const json& node, const std::string& where) {
  if (node.is_string()) {
    // "NaN"/"Infinity" smuggled in as strings get the non-finite code.
    throw IoError(IoErrorCode::NonFinite, "non-numeric float at " + where);
  }
  if (!node.is_number()) {
    throw IoError(IoErrorCode::BadJson, "expected a number at " + where);
  }
  const double v = node.get<double>();
  if (!std::isfinite(v)) {
    throw IoError(IoErrorCode::NonFinite, "non-finite float at " + where);
  }
  return v;
}

}  // namespace

NCMatrix parseMatrix(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::out_of_range& e) {
    // id 406: number literal does not fit a double
    throw IoError(e.id == 406 ? IoErrorCode::NonFinite : IoErrorCode::BadJson, e.what());
  } catch (const json::exception& e) {
    throw IoError(IoErrorCode::BadJson, e.what());
  }
  if (!doc.is_object()) {
    throw IoError(IoErrorCode::BadJson, "top level must be an object");
  }
  if (!doc.contains("version") || !doc["version"].is_number_integer()) {
    throw IoError(IoErrorCode::BadJson, "missing integer 'version'");
  }
  if (doc["version"].get<int>() != 1) {
    throw IoError(IoErrorCode::BadVersion,
                  "unsupported version " + std::to_string(doc["version"].get<int>()));
  }
  for (const char* field : {"rows", "cols"}) {
    if (!doc.contains(field) || !doc[field].is_number_integer()) {
      throw IoError(IoErrorCode::BadJson, std::string("missing integer '") + field + "'");
    }
  }
  const int rows = doc["rows"].get<int>();
  const int cols = doc["cols"].get<int>();
  if (rows < 1 || cols < 1) {
    throw IoError(IoErrorCode::DimMismatch, "rows and cols must be positive");
  }
  if (!doc.contains("shape") || !doc["shape"].is_array() || doc["shape"].empty()) {
    throw IoError(IoErrorCode::BadJson, "missing non-empty array 'shape'");
  }
  std::vector<int> fibers;
  for (const auto& f : doc["shape"]) {
    if (!f.is_number_integer() || f.get<int>() < 1) {
      throw IoError(IoErrorCode::DimMismatch, "fiber dimensions must be positive integers");
    }
    fibers.push_back(f.get<int>());
  }
  const AlgebraShape shape(fibers);

  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw IoError(IoErrorCode::BadJson, "missing array 'entries'");
  }
  const auto& entries = doc["entries"];
  if (static_cast<int>(entries.size()) != rows) {
    throw IoError(IoErrorCode::DimMismatch,
                  "entries has " + std::to_string(entries.size()) + " rows, expected " +
                      std::to_string(rows));
  }

  NCMatrix out(shape, rows, cols);
  for (int i = 0; i < rows; ++i) {
    const auto& rowNode = entries[static_cast<std::size_t>(i)];
    if (!rowNode.is_array() || static_cast<int>(rowNode.size()) != cols) {
      throw IoError(IoErrorCode::DimMismatch, "row " + std::to_string(i) + " has wrong length");
    }
    for (int j = 0; j < cols; ++j) {
      const auto& entryNode = rowNode[static_cast<std::size_t>(j)];
      const std::string where = "entry (" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (!entryNode.is_array() || static_cast<int>(entryNode.size()) != shape.fiberCount()) {
        throw IoError(IoErrorCode::DimMismatch, where + " must list one block per fiber");
      }
      std::vector<Eigen::MatrixXcd> blocks;
      for (int x = 0; x < shape.fiberCount(); ++x) {
        const int k = shape.fiberDim(x);
        const auto& blockNode = entryNode[static_cast<std::size_t>(x)];
        if (!blockNode.is_array() || static_cast<int>(blockNode.size()) != k) {
          throw IoError(IoErrorCode::DimMismatch,
                        where + " fiber " + std::to_string(x) + " must be " + std::to_string(k) +
                            "x" + std::to_string(k));
        }
        Eigen::MatrixXcd block(k, k);
        for (int r = 0; r < k; ++r) {
          const auto& rNode = blockNode[static_cast<std::size_t>(r)];
          if (!rNode.is_array() || static_cast<int>(rNode.size()) != k) {
            throw IoError(IoErrorCode::DimMismatch,
                          where + " fiber " + std::to_string(x) + " row " + std::to_string(r) +
                              " has wrong length");
          }
          for (int c = 0; c < k; ++c) {
            const auto& pair = rNode[static_cast<std::size_t>(c)];
            if (!pair.is_array() || pair.size() != 2) {
              throw IoError(IoErrorCode::BadJson, where + " values must be [re,im] pairs");
            }
            const double re = readFinite(pair[0], where);
            const double im = readFinite(pair[1], where);
            block(r, c) = Complex(re, im);
          }
        }
        blocks.push_back(std::move(block));
      }
      out.set(i, j, AlgElem(shape, std::move(blocks)));
    }
  }
  return out;
}

std::string formatDouble(double v) {
  if (!std::isfinite(v)) {
    throw std::logic_error("formatDouble: refusing to emit a non-finite float");
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string serializeMatrix(const NCMatrix& m) {
  JsonWriter w;
  w.beginObject();
  w.key("version").value(1);
  w.key("rows").value(m.rows());
  w.key("cols").value(m.cols());
  w.key("shape").beginArray();
  for (int f : m.shape().fibers()) {
    w.value(f);
  }
  w.endArray();
  w.key("entries").beginArray();
  for (int i = 0; i < m.rows(); ++i) {
    w.beginArray();
    for (int j = 0; j < m.cols(); ++j) {
      w.beginArray();
      for (int x = 0; x < m.shape().fiberCount(); ++x) {
        const auto& block = m.at(i, j).block(x);
        w.beginArray();
        for (int r = 0; r < block.rows(); ++r) {
          w.beginArray();
          for (int c = 0; c < block.cols(); ++c) {
            w.beginArray();
            w.value(block(r, c).real());
            w.value(block(r, c).imag());
            w.endArray();
          }
          w.endArray();
        }
        w.endArray();
      }
      w.endArray();
    }
    w.endArray();
  }
  w.endArray();
  w.endObject();
  return w.str();
}

NCMatrix loadMatrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(IoErrorCode::FileAccess, "cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parseMatrix(buf.str());
}

void saveMatrix(const NCMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError(IoErrorCode::FileAccess, "cannot open " + path + " for writing");
  }
  out << serializeMatrix(m) << '\n';
  if (!out) {
    throw IoError(IoErrorCode::FileAccess, "write failed for " + path);
  }
}

// --- JsonWriter --------------------------------------------------------

void JsonWriter::preValue() {
  if (!needComma_.empty() && needComma_.back()) {
    out_ += ',';
  }
  if (!needComma_.empty()) {
    needComma_.back() = true;
  }
}

JsonWriter& JsonWriter::beginObject() {
  preValue();
  out_ += '{';
  needComma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::endObject() {
  out_ += '}';
  needComma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::beginArray() {
  preValue();
  out_ += '[';
  needComma_.push_back(false);
  return *this;
}

JsonWriter& JsonWriter::endArray() {
  out_ += ']';
  needComma_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& name) {
  if (!needComma_.empty() && needComma_.back()) {
    out_ += ',';
  }
  if (!needComma_.empty()) {
    needComma_.back() = false;  // the upcoming value completes the pair
  }
  out_ += '"';
  out_ += name;
  out_ += "\":";
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  preValue();
  out_ += formatDouble(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  preValue();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
  preValue();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  preValue();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  preValue();
  out_ += '"';
  for (char ch : v) {
    switch (ch) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out_ += buf;
        } else {
          out_ += ch;
        }
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::raw(const std::string& fragment) {
  preValue();
  out_ += fragment;
  return *this;
}

}  // namespace nchad
