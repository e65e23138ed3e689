#include "longmem/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "longmem/errors.hpp"

namespace longmem {

using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

std::string model_to_json(const LongMemoryModel& model) {
  json j;
  j["kind"] = model.kind() == ModelKind::FI ? "FI" : "FARIMA";
  j["d"] = model.d();
  j["ar"] = model.ar();
  j["ma"] = model.ma();
  j["sigma2"] = model.sigma2();
  return j.dump();
}

LongMemoryModel model_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw IoError(std::string("model JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("d")) throw IoError("model JSON needs an object with \"d\"");
  try {
    const std::string kind = j.value("kind", std::string("FI"));
    const double d = j.at("d").get<double>();
    const double sigma2 = j.value("sigma2", 1.0);
    auto ar = j.value("ar", std::vector<double>{});
    auto ma = j.value("ma", std::vector<double>{});
    if (kind == "FI") {
      if (!ar.empty() || !ma.empty()) throw IoError("FI model cannot carry ar/ma coefficients");
      return LongMemoryModel::fi(d, sigma2);
    }
    if (kind == "FARIMA") return LongMemoryModel::farima(d, std::move(ar), std::move(ma), sigma2);
    throw IoError("model kind must be FI or FARIMA, got " + kind);
  } catch (const json::exception& e) {
    throw IoError(std::string("model JSON: ") + e.what());
  }
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw IoError("CSV has no column named " + std::string(name));
}

std::string to_csv(const CsvTable& table) {
  std::string out;
  for (const auto& c : table.comments) out += "# " + c + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ',';
    out += table.header[i];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

double parse_number(std::string_view cell, std::size_t line_no) {
  while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
  while (!cell.empty() && (cell.back() == ' ' || cell.back() == '\r')) cell.remove_suffix(1);
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
    throw IoError("line " + std::to_string(line_no) + ": not a number: '" + std::string(cell) + "'");
  }
  return v;
}

}  // namespace

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '#') {
      line.remove_prefix(1);
      if (!line.empty() && line.front() == ' ') line.remove_prefix(1);
      table.comments.emplace_back(line);
      continue;
    }
    const auto cells = split(line);
    if (!have_header) {
      for (auto c : cells) table.header.emplace_back(c);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw IoError("line " + std::to_string(line_no) + ": expected " +
                    std::to_string(table.header.size()) + " cells");
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) row.push_back(parse_number(c, line_no));
    table.rows.push_back(std::move(row));
  }
  if (!have_header) throw IoError("CSV has no header line");
  return table;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot rename onto " + path.string() + ": " + ec.message());
  }
}

CsvTable index_value_table(std::span<const double> values) {
  CsvTable t;
  t.header = {"index", "value"};
  for (std::size_t i = 0; i < values.size(); ++i) t.rows.push_back({static_cast<double>(i), values[i]});
  return t;
}

std::vector<double> read_series_csv(const std::filesystem::path& path) {
  const CsvTable t = parse_csv(read_file(path));
  const std::size_t col = t.column("value");
  std::vector<double> out;
  out.reserve(t.rows.size());
  for (const auto& row : t.rows) out.push_back(row[col]);
  return out;
}

void write_ark_model(const std::filesystem::path& csv_path, const ArkModel& model) {
  CsvTable t;
  t.header = {"j", "phi_j"};
  for (std::size_t j = 1; j <= model.k; ++j) t.rows.push_back({static_cast<double>(j), model.phi[j - 1]});
  json side;
  side["k"] = model.k;
  side["v"] = model.v;
  side["partials"] = model.partials;
  std::filesystem::path json_path = csv_path;
  json_path += ".json";
  write_file_atomic(csv_path, to_csv(t));
  write_file_atomic(json_path, side.dump() + "\n");
}

ArkModel read_ark_model(const std::filesystem::path& csv_path) {
  const CsvTable t = parse_csv(read_file(csv_path));
  const std::size_t jc = t.column("j"), pc = t.column("phi_j");
  std::filesystem::path json_path = csv_path;
  json_path += ".json";
  ArkModel m;
  try {
    const json side = json::parse(read_file(json_path));
    m.k = side.at("k").get<std::size_t>();
    m.v = side.at("v").get<double>();
    m.partials = side.at("partials").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw IoError(std::string("AR(k) sidecar: ") + e.what());
  }
  if (t.rows.size() != m.k) throw IoError("AR(k) CSV row count does not match k");
  m.phi.resize(m.k);
  for (std::size_t i = 0; i < m.k; ++i) {
    if (t.rows[i][jc] != static_cast<double>(i + 1)) throw IoError("AR(k) CSV rows out of order");
    m.phi[i] = t.rows[i][pc];
  }
  return m;
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace longmem
