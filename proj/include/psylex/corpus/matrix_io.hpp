#pragma once

// Matrix persistence.
//
// CSV: header `doc_id,<col>...`, one row per document, values written with the
// shortest representation that parses back to the same double.
//
// Binary cache (all integers little-endian):
//   magic   "PSYLXMAT" (8 bytes)
//   version u8 = 1
//   rows    u64
//   cols    u64
//   cols x  (u32 byte length, UTF-8 bytes)   column names
//   rows x  (u32 byte length, UTF-8 bytes)   row ids
//   rows*cols IEEE-754 binary64, row-major

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <string>
#include <string_view>
#include <system_error>

#include "psylex/corpus/load.hpp"
#include "psylex/csv.hpp"
#include "psylex/error.hpp"
#include "psylex/matrix.hpp"

namespace psylex {

inline constexpr std::string_view kMatrixMagic = "PSYLXMAT";
inline constexpr std::uint8_t kMatrixVersion = 1;

namespace detail {

inline void check_savable(const Matrix& m) {
  if (m.cols() == 0) throw Error("cannot save a matrix without columns");
  if (m.values.size() != m.rows() * m.cols()) throw Error("matrix shape does not match its values");
}

inline std::string shortest(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

template <class T>
void put_le(std::string& out, T v) {
  static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);
  char bytes[sizeof(T)];
  std::memcpy(bytes, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view data) : data_(data) {}

  template <class T>
  T get() {
    need(sizeof(T));
    char bytes[sizeof(T)];
    std::memcpy(bytes, data_.data() + pos_, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
    pos_ += sizeof(T);
    T v;
    std::memcpy(&v, bytes, sizeof(T));
    return v;
  }

  std::string_view bytes(std::size_t n) {
    need(n);
    auto s = data_.substr(pos_, n);
    pos_ += n;
    return s;
  }

  std::string string() { return std::string(bytes(get<std::uint32_t>())); }
  bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error("matrix cache is truncated at byte " + std::to_string(pos_));
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::string matrix_to_csv(const Matrix& m) {
  detail::check_savable(m);
  std::string out;
  std::vector<std::string> row{"doc_id"};
  row.insert(row.end(), m.columns.begin(), m.columns.end());
  csv::append_record(out, row);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    row.assign(1, m.row_ids[r]);
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::shortest(m.at(r, c)));
    csv::append_record(out, row);
  }
  return out;
}

inline Matrix matrix_from_csv(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty() || records.front().fields.size() < 2 || records.front().fields[0] != "doc_id")
    throw ParseError("matrix CSV needs a header `doc_id,<column>...`", 1);
  Matrix m;
  m.columns.assign(records.front().fields.begin() + 1, records.front().fields.end());
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& f = records[r].fields;
    if (f.size() != m.cols() + 1)
      throw ParseError("expected " + std::to_string(m.cols() + 1) + " columns", records[r].line);
    m.row_ids.push_back(f[0]);
    for (std::size_t c = 1; c < f.size(); ++c) {
      double v = 0;
      const auto [ptr, ec] = std::from_chars(f[c].data(), f[c].data() + f[c].size(), v);
      if (ec != std::errc() || ptr != f[c].data() + f[c].size())
        throw ParseError("not a number: '" + f[c] + "'", records[r].line);
      m.values.push_back(v);
    }
  }
  return m;
}

inline std::string matrix_to_binary(const Matrix& m) {
  detail::check_savable(m);
  std::string out(kMatrixMagic);
  out.push_back(static_cast<char>(kMatrixVersion));
  detail::put_le<std::uint64_t>(out, m.rows());
  detail::put_le<std::uint64_t>(out, m.cols());
  for (const auto* names : {&m.columns, &m.row_ids})
    for (const auto& s : *names) {
      detail::put_le<std::uint32_t>(out, static_cast<std::uint32_t>(s.size()));
      out += s;
    }
  for (double v : m.values) detail::put_le<double>(out, v);
  return out;
}

inline Matrix matrix_from_binary(std::string_view data) {
  detail::Reader in(data);
  if (data.size() < kMatrixMagic.size() || in.bytes(kMatrixMagic.size()) != kMatrixMagic)
    throw Error("not a matrix cache (bad magic bytes)");
  const auto version = in.get<std::uint8_t>();
  if (version != kMatrixVersion)
    throw Error("unsupported matrix cache version " + std::to_string(version) + " (expected " +
                std::to_string(kMatrixVersion) + ")");
  const auto rows = in.get<std::uint64_t>();
  const auto cols = in.get<std::uint64_t>();
  if (cols == 0 || rows > data.size() || cols > data.size() || (rows && cols > data.size() / 8 / rows))
    throw Error("matrix cache has an implausible shape");
  Matrix m;
  for (std::uint64_t c = 0; c < cols; ++c) m.columns.push_back(in.string());
  for (std::uint64_t r = 0; r < rows; ++r) m.row_ids.push_back(in.string());
  m.values.reserve(rows * cols);
  for (std::uint64_t i = 0; i < rows * cols; ++i) m.values.push_back(in.get<double>());
  if (!in.done()) throw Error("trailing bytes after matrix cache");
  return m;
}

enum class MatrixFormat { csv, binary };

/// `.csv` means CSV; anything else is the binary cache.
inline MatrixFormat matrix_format_for(const std::filesystem::path& path) {
  return path.extension() == ".csv" ? MatrixFormat::csv : MatrixFormat::binary;
}

inline void save_matrix(const Matrix& m, const std::filesystem::path& path) {
  write_file(path, matrix_format_for(path) == MatrixFormat::csv ? matrix_to_csv(m) : matrix_to_binary(m));
}

inline Matrix load_matrix(const std::filesystem::path& path) {
  const auto data = read_file(path);
  return matrix_format_for(path) == MatrixFormat::csv ? matrix_from_csv(data) : matrix_from_binary(data);
}

}  // namespace psylex
