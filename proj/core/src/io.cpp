#include "pedkin/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

#include "pedkin/error.hpp"

namespace pedkin {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool is_blank_or_comment(std::string_view line) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '#';
  }
  return true;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<Sex> parse_sex(std::string_view token) {
  const std::string t = lower(token);
  if (t == "m" || t == "1" || t == "male") return Sex::male;
  if (t == "f" || t == "2" || t == "female") return Sex::female;
  if (t == "u" || t == "0" || t == "unknown" || t == "-9" || t == "na") return Sex::unknown;
  return std::nullopt;
}

std::optional<double> parse_double(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_failure, "cannot open '" + path.string() + "'");
  return in;
}

void check_stream(const std::ostream& out) {
  if (!out) throw Error(ErrorCode::io_failure, "write failed");
}

}  // namespace

Pedigree parse_pedigree(std::istream& in, const PedigreeOptions& options) {
  std::vector<PedigreeRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (columns == 0) {
      if (tokens.size() != 4 && tokens.size() != 5) {
        throw Error(ErrorCode::malformed_input,
                    "expected 4 or 5 columns, found " + std::to_string(tokens.size()), line_no);
      }
      columns = tokens.size();
    } else if (tokens.size() != columns) {
      throw Error(ErrorCode::malformed_input,
                  "expected " + std::to_string(columns) + " columns, found " +
                      std::to_string(tokens.size()),
                  line_no);
    }
    const std::size_t off = columns - 4;
    const auto sex = parse_sex(tokens[off + 3]);
    if (!sex) {
      throw Error(ErrorCode::malformed_input,
                  "unrecognised sex code '" + std::string(tokens[off + 3]) + "'", line_no);
    }
    if (tokens[off] == "0") {
      throw Error(ErrorCode::malformed_input, "individual id '0' is reserved", line_no);
    }
    PedigreeRecord r;
    r.id = std::string(tokens[off]);
    if (tokens[off + 1] != "0") r.father = std::string(tokens[off + 1]);
    if (tokens[off + 2] != "0") r.mother = std::string(tokens[off + 2]);
    r.sex = *sex;
    records.push_back(std::move(r));
  }
  if (in.bad()) throw Error(ErrorCode::io_failure, "read failed");
  return Pedigree::from_records(records, options);
}

Pedigree read_pedigree_file(const std::filesystem::path& path, const PedigreeOptions& options) {
  auto in = open_input(path);
  return parse_pedigree(in, options);
}

void write_pedigree(const Pedigree& pedigree, std::ostream& out) {
  for (const Individual& p : pedigree.individuals()) {
    out << p.id << '\t' << (p.is_founder() ? "0" : pedigree.id(p.father)) << '\t'
        << (p.is_founder() ? "0" : pedigree.id(p.mother)) << '\t' << to_string(p.sex) << '\n';
  }
  check_stream(out);
}

void write_kinship_matrix(const KinshipMatrix& matrix, MatrixFormat format, std::ostream& out) {
  out << "# diagonal=" << to_string(matrix.diagonal()) << '\n';
  const std::size_t n = matrix.size();
  const auto& ids = matrix.ids();
  if (format == MatrixFormat::dense) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "\t" : "") << ids[j];
    out << '\n';
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out << (j ? "\t" : "") << format_double(matrix(i, j));
      out << '\n';
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        const double v = matrix(i, j);
        if (v == 0.0) continue;
        out << ids[i] << '\t' << ids[j] << '\t' << format_double(v) << '\n';
      }
    }
  }
  check_stream(out);
}

KinshipMatrix read_kinship_matrix(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  Diagonal diagonal = Diagonal::inbreeding;
  std::vector<std::string> ids;
  std::vector<double> values;
  bool have_header = false;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) {
      const auto pos = line.find("diagonal=");
      if (pos != std::string::npos) {
        const auto token = split_ws(std::string_view(line).substr(pos + 9));
        const auto d = token.empty() ? std::nullopt : parse_diagonal(token[0]);
        if (!d) throw Error(ErrorCode::malformed_input, "bad diagonal convention", line_no);
        diagonal = *d;
      }
      continue;
    }
    const auto tokens = split_ws(line);
    if (!have_header) {
      for (auto t : tokens) ids.emplace_back(t);
      have_header = true;
      values.reserve(ids.size() * ids.size());
      continue;
    }
    if (tokens.size() != ids.size()) {
      throw Error(ErrorCode::malformed_input, "row has " + std::to_string(tokens.size()) +
                                                  " values, expected " + std::to_string(ids.size()),
                  line_no);
    }
    if (++rows > ids.size()) throw Error(ErrorCode::malformed_input, "too many rows", line_no);
    for (auto t : tokens) {
      auto v = parse_double(t);
      if (!v) throw Error(ErrorCode::malformed_input, "bad value '" + std::string(t) + "'", line_no);
      values.push_back(*v);
    }
  }
  if (rows != ids.size()) {
    throw Error(ErrorCode::malformed_input, "expected " + std::to_string(ids.size()) +
                                                " rows, found " + std::to_string(rows));
  }
  const std::size_t n = ids.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (values[i * n + j] != values[j * n + i]) {
        throw Error(ErrorCode::conflicting_entry,
                    "matrix is not symmetric at (" + ids[i] + ", " + ids[j] + ")");
      }
    }
  }
  return KinshipMatrix(std::move(ids), diagonal, std::move(values));
}

FounderKinship read_founder_kinship(std::istream& in, const Pedigree& pedigree) {
  std::vector<std::string> founder_ids;
  for (Index f : pedigree.founders()) founder_ids.push_back(pedigree.id(f));
  const std::size_t F = founder_ids.size();
  std::map<std::string, std::size_t> position;
  for (std::size_t k = 0; k < F; ++k) position.emplace(founder_ids[k], k);

  std::vector<double> matrix(F * F, 0.0);
  std::vector<char> set(F * F, 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    const auto tokens = split_ws(line);
    if (tokens.size() != 3) {
      throw Error(ErrorCode::malformed_input, "expected 'founder_i founder_j value'", line_no);
    }
    std::size_t pos[2];
    for (int k = 0; k < 2; ++k) {
      const std::string id(tokens[k]);
      auto it = position.find(id);
      if (it == position.end()) {
        throw Error(pedigree.find(id) ? ErrorCode::not_a_founder : ErrorCode::unknown_id,
                    "'" + id + "' is not a founder of the pedigree", line_no);
      }
      pos[k] = it->second;
    }
    const auto v = parse_double(tokens[2]);
    if (!v) throw Error(ErrorCode::malformed_input, "bad value '" + std::string(tokens[2]) + "'", line_no);
    if (!(*v >= 0.0 && *v <= 1.0)) {
      throw Error(ErrorCode::value_out_of_range, "value " + std::string(tokens[2]) + " outside [0, 1]",
                  line_no);
    }
    const std::size_t a = pos[0] * F + pos[1];
    const std::size_t b = pos[1] * F + pos[0];
    if (set[a] && matrix[a] != *v) {
      throw Error(ErrorCode::conflicting_entry,
                  "conflicting entries for (" + std::string(tokens[0]) + ", " +
                      std::string(tokens[1]) + ")",
                  line_no);
    }
    matrix[a] = matrix[b] = *v;
    set[a] = set[b] = 1;
  }
  if (in.bad()) throw Error(ErrorCode::io_failure, "read failed");
  return FounderKinship::full(std::move(founder_ids), std::move(matrix));
}

FounderKinship read_founder_kinship_file(const std::filesystem::path& path,
                                         const Pedigree& pedigree) {
  auto in = open_input(path);
  return read_founder_kinship(in, pedigree);
}

std::vector<std::string> read_id_list(std::istream& in) {
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (is_blank_or_comment(line)) continue;
    for (auto t : split_ws(line)) ids.emplace_back(t);
  }
  return ids;
}

std::vector<std::string> read_id_list_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_id_list(in);
}

}  // namespace pedkin
