#include "formexp/chart_file.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "formexp/errors.hpp"
#include "formexp/expression.hpp"

namespace formexp {

namespace {

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

bool identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

struct PendingSymbol {
  std::string i, j, k, poly;
  std::size_t line;
};

// "key = value"
std::pair<std::string_view, std::string_view> split_assignment(std::string_view s, std::size_t line) {
  auto eq = s.find('=');
  if (eq == std::string_view::npos) throw ChartFileError("expected 'key = value'", line);
  return {trim(s.substr(0, eq)), trim(s.substr(eq + 1))};
}

}  // namespace

ChartFile parse_chart_file(std::string_view text, std::optional<int> max_weight) {
  std::vector<Coordinate> coords;
  Truncation trunc;
  bool torsion_free = false;
  std::vector<PendingSymbol> pending;
  std::string section;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    auto hash = raw.find('#');
    std::string_view line = trim(raw.substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ChartFileError("unterminated section header", line_no);
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "coordinates" && section != "christoffel" && section != "truncation" && section != "flags")
        throw ChartFileError("unknown section '" + section + "'", line_no);
      continue;
    }
    if (section.empty()) throw ChartFileError("content before the first section", line_no);
    if (section == "coordinates") {
      auto w = words(line);
      if (w.size() != 2 || !identifier(w[0])) throw ChartFileError("expected 'name degree'", line_no);
      auto d = to_int(w[1]);
      if (!d) throw ChartFileError("degree must be an integer", line_no);
      coords.push_back({std::string(w[0]), *d});
    } else if (section == "christoffel") {
      auto [lhs, rhs] = split_assignment(line, line_no);
      auto w = words(lhs);
      if (w.size() != 3) throw ChartFileError("expected 'i j k = poly'", line_no);
      if (rhs.empty()) throw ChartFileError("missing polynomial", line_no);
      pending.push_back({std::string(w[0]), std::string(w[1]), std::string(w[2]), std::string(rhs), line_no});
    } else if (section == "truncation") {
      auto [key, value] = split_assignment(line, line_no);
      auto v = to_int(value);
      if (!v) throw ChartFileError("truncation value must be an integer", line_no);
      if (key == "Q") trunc.max_sym_weight = *v;
      else if (key == "P") trunc.max_form_degree = *v;
      else if (key == "B") trunc.max_base_degree = *v;
      else throw ChartFileError("unknown truncation key '" + std::string(key) + "'", line_no);
    } else {
      auto [key, value] = split_assignment(line, line_no);
      if (key != "torsion_free") throw ChartFileError("unknown flag '" + std::string(key) + "'", line_no);
      if (value == "true") torsion_free = true;
      else if (value == "false") torsion_free = false;
      else throw ChartFileError("flag value must be true or false", line_no);
    }
  }

  if (max_weight) trunc.max_sym_weight = *max_weight;
  ChartPtr chart;
  try {
    chart = Chart::make(coords, trunc);
  } catch (const std::invalid_argument& e) {
    throw ChartFileError(e.what(), 0);
  }

  auto index = [&](const std::string& s, std::size_t line) {
    if (auto v = to_int(s)) {
      if (*v < 1 || *v > chart->dim()) throw ChartFileError("coordinate index out of range", line);
      return *v - 1;
    }
    if (auto c = chart->find_coordinate(s)) return *c;
    throw ChartFileError("unknown coordinate '" + s + "'", line);
  };
  auto symbols = Connection::empty_table(chart);
  std::map<std::size_t, std::size_t> seen;
  for (const auto& p : pending) {
    int i = index(p.i, p.line), j = index(p.j, p.line), k = index(p.k, p.line);
    std::size_t s = Connection::slot(chart->dim(), i, j, k);
    if (seen.count(s)) throw ChartFileError("duplicate Christoffel entry", p.line);
    seen[s] = p.line;
    try {
      symbols[s] = parse_poly(chart, p.poly, kind_bit(GenKind::Base));
    } catch (const ParseError& e) {
      throw ChartFileError(std::string("bad Christoffel polynomial: ") + e.what(), p.line);
    }
    int want = chart->coordinate_degree(k) - chart->coordinate_degree(i) - chart->coordinate_degree(j);
    Degree d = symbols[s].degree();
    if (d.kind == Degree::Kind::Heterogeneous || (d.homogeneous() && d.value != want))
      throw ChartFileError("Christoffel symbol " + p.i + " " + p.j + " " + p.k + " must be homogeneous of degree " +
                               std::to_string(want),
                           p.line);
  }
  try {
    return {chart, Connection(chart, std::move(symbols), torsion_free)};
  } catch (const std::invalid_argument& e) {
    throw ChartFileError(e.what(), 0);
  }
}

ChartFile load_chart_file(const std::string& path, std::optional<int> max_weight) {
  std::ifstream in(path);
  if (!in) throw ChartFileError("cannot open chart file '" + path + "'", 0);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_chart_file(ss.str(), max_weight);
}

std::string format_chart_file(const ChartFile& file) {
  const Chart& chart = *file.chart;
  std::ostringstream os;
  os << "[coordinates]\n";
  for (const auto& c : chart.coordinates()) os << c.name << ' ' << c.degree << '\n';
  os << "\n[christoffel]\n";
  const int n = chart.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const GradedPoly& g = file.connection.gamma(i, j, k);
        if (g.is_zero()) continue;
        os << chart.coordinate(i).name << ' ' << chart.coordinate(j).name << ' ' << chart.coordinate(k).name << " = "
           << format_poly(g) << '\n';
      }
  const Truncation& t = chart.truncation();
  os << "\n[truncation]\nQ = " << t.max_sym_weight << "\nP = " << t.max_form_degree << "\nB = " << t.max_base_degree
     << "\n\n[flags]\ntorsion_free = " << (file.connection.torsion_free() ? "true" : "false") << '\n';
  return os.str();
}

}  // namespace formexp
