#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "infodist/distances.hpp"
#include "infodist/error.hpp"

namespace infodist {
namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (quoted) throw MalformedMatrix("unterminated quote on line " + std::to_string(line_no));
  fields.push_back(std::move(cur));
  return fields;
}

double parse_value(const std::string& s, std::size_t line_no) {
  if (s == "inf") return kInfinity;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v) || v < 0.0) {
    throw MalformedMatrix("bad distance '" + s + "' on line " + std::to_string(line_no));
  }
  return v;
}

Fingerprint parse_fingerprint_line(const std::string& line) {
  Fingerprint fp;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    if (key == "method") fp.method = val;
    else if (key == "backend") fp.backend = val;
    else if (key == "base") fp.log_base = std::strtod(val.c_str(), nullptr);
    else if (key == "version") fp.tool_version = val;
    else if (key == "seed" && val != "-") fp.seed = std::strtoull(val.c_str(), nullptr, 10);
  }
  return fp;
}

Method method_or_default(const std::string& name) {
  try {
    return parse_method(name);
  } catch (const Error&) {
    return Method::ncd;
  }
}

DistanceMatrix assemble(std::vector<std::string> labels, const std::vector<std::vector<double>>& rows,
                        Fingerprint fp) {
  const std::size_t n = labels.size();
  if (n < 2) throw MalformedMatrix("matrix needs at least 2 labels");
  if (rows.size() != n) throw MalformedMatrix("expected " + std::to_string(n) + " rows");
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) {
      throw MalformedMatrix("row '" + labels[i] + "' has " + std::to_string(rows[i].size()) +
                            " values, expected " + std::to_string(n));
    }
    if (rows[i][i] != 0.0) throw MalformedMatrix("non-zero diagonal at '" + labels[i] + "'");
  }
  const Method method = method_or_default(fp.method);
  DistanceMatrix m(std::move(labels), method, std::move(fp));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rows[i][j] != rows[j][i]) {
        throw MalformedMatrix("asymmetric cell (" + m.labels()[i] + ", " + m.labels()[j] + ")");
      }
      const double v = rows[i][j];
      m.set(i, j, DistanceValue{v, v, 1.0, method});
    }
  }
  return m;
}

}  // namespace

std::string to_csv(const DistanceMatrix& m) {
  std::ostringstream out;
  out << "# infodist " << m.fingerprint().to_string() << "\n";
  for (const auto& l : m.labels()) out << "," << csv_field(l);
  out << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << csv_field(m.labels()[i]);
    for (std::size_t j = 0; j < m.size(); ++j) out << "," << format_distance(m(i, j));
    out << "\n";
  }
  return out.str();
}

std::string to_phylip(const DistanceMatrix& m) {
  std::ostringstream out;
  out << "    " << m.size() << "\n";
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::string name = m.labels()[i].substr(0, 10);
    name.resize(10, ' ');
    out << name;
    for (std::size_t j = 0; j < m.size(); ++j) out << " " << format_distance(m(i, j));
    out << "\n";
  }
  return out.str();
}

std::string to_json(const DistanceMatrix& m) {
  using nlohmann::ordered_json;
  ordered_json doc;
  const auto& fp = m.fingerprint();
  doc["fingerprint"] = {{"method", fp.method},
                        {"backend", fp.backend},
                        {"log_base", fp.log_base},
                        {"seed", fp.seed ? ordered_json(*fp.seed) : ordered_json(nullptr)},
                        {"tool_version", fp.tool_version}};
  doc["labels"] = m.labels();
  auto& cells = doc["cells"] = ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = ordered_json::array();
    for (std::size_t j = 0; j < m.size(); ++j) {
      const double v = m(i, j);
      if (std::isinf(v)) row.push_back("inf");
      else row.push_back(std::strtod(format_distance(v).c_str(), nullptr));
    }
    cells.push_back(std::move(row));
  }
  return doc.dump(2) + "\n";
}

DistanceMatrix parse_csv_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  Fingerprint fp;
  std::vector<std::string> header;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      fp = parse_fingerprint_line(line.substr(1));
      continue;
    }
    auto fields = split_csv_line(line, line_no);
    if (header.empty()) {
      header.assign(fields.begin() + 1, fields.end());
      continue;
    }
    if (fields.size() != header.size() + 1) {
      throw MalformedMatrix("line " + std::to_string(line_no) + " has " +
                            std::to_string(fields.size()) + " fields");
    }
    if (fields[0] != header[labels.size()]) {
      throw MalformedMatrix("row label '" + fields[0] + "' does not match column order");
    }
    labels.push_back(fields[0]);
    std::vector<double> row;
    for (std::size_t k = 1; k < fields.size(); ++k) row.push_back(parse_value(fields[k], line_no));
    rows.push_back(std::move(row));
    if (labels.size() > header.size()) throw MalformedMatrix("more rows than columns");
  }
  if (labels.size() != header.size()) throw MalformedMatrix("missing rows");
  return assemble(std::move(labels), rows, std::move(fp));
}

DistanceMatrix parse_json_matrix(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw MalformedMatrix(std::string("invalid JSON: ") + e.what());
  }
  try {
    Fingerprint fp;
    if (doc.contains("fingerprint")) {
      const auto& f = doc["fingerprint"];
      fp.method = f.value("method", "");
      fp.backend = f.value("backend", "");
      fp.log_base = f.value("log_base", 2.0);
      fp.tool_version = f.value("tool_version", "");
      if (f.contains("seed") && !f["seed"].is_null()) fp.seed = f["seed"].get<std::uint64_t>();
    }
    auto labels = doc.at("labels").get<std::vector<std::string>>();
    std::vector<std::vector<double>> rows;
    for (const auto& r : doc.at("cells")) {
      std::vector<double> row;
      for (const auto& c : r) {
        if (c.is_string()) row.push_back(parse_value(c.get<std::string>(), 0));
        else row.push_back(c.get<double>());
      }
      rows.push_back(std::move(row));
    }
    return assemble(std::move(labels), rows, std::move(fp));
  } catch (const nlohmann::json::exception& e) {
    throw MalformedMatrix(std::string("bad matrix document: ") + e.what());
  }
}

DistanceMatrix parse_phylip_matrix(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) throw MalformedMatrix("empty PHYLIP input");
  const long n = std::strtol(line.c_str(), nullptr, 10);
  if (n < 2) throw MalformedMatrix("bad taxon count '" + line + "'");
  std::vector<std::string> labels;
  std::vector<std::vector<double>> rows;
  while (static_cast<long>(labels.size()) < n && std::getline(in, line)) {
    ++line_no;
    if (line.size() < 10) throw MalformedMatrix("short PHYLIP row on line " + std::to_string(line_no));
    std::string name = line.substr(0, 10);
    name.erase(name.find_last_not_of(' ') + 1);
    labels.push_back(name);
    std::istringstream vals(line.substr(10));
    std::vector<double> row;
    std::string tok;
    while (vals >> tok) row.push_back(parse_value(tok, line_no));
    rows.push_back(std::move(row));
  }
  return assemble(std::move(labels), rows, Fingerprint{});
}

DistanceMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedMatrix("cannot open '" + path + "'", {path});
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_matrix(text);
  if (path.size() > 4 && (path.ends_with(".phy") || path.ends_with(".phylip"))) {
    return parse_phylip_matrix(text);
  }
  return parse_csv_matrix(text);
}

}  // namespace infodist
