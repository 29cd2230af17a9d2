#include "rigidity/config.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rigidity {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::string strip_comment(std::string_view line) {
  bool in_string = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (line[i] == '#' && !in_string) return std::string(line.substr(0, i));
  }
  return std::string(line);
}

class RecipeParser {
 public:
  explicit RecipeParser(std::string_view s) : s_(s) {}

  Recipe parse() {
    Recipe r = node();
    skip();
    if (pos_ != s_.size()) fail("trailing text");
    return r;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("recipe '" + std::string(s_) + "': " + what + " at position " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string ident() {
    skip();
    const std::size_t a = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (a == pos_) fail("expected a name");
    return std::string(s_.substr(a, pos_ - a));
  }
  double number() {
    skip();
    const std::size_t a = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || std::strchr("+-.eE", s_[pos_])))
      ++pos_;
    try {
      std::size_t used = 0;
      const std::string tok(s_.substr(a, pos_ - a));
      const double v = std::stod(tok, &used);
      if (used != tok.size()) fail("malformed number");
      return v;
    } catch (const std::logic_error&) {
      fail("expected a number");
    }
  }
  int integer() {
    const double v = number();
    if (v != static_cast<double>(static_cast<long long>(v))) fail("expected an integer");
    return static_cast<int>(v);
  }
  std::shared_ptr<const Recipe> sub() { return std::make_shared<const Recipe>(node()); }

  Recipe node() {
    const std::string name = ident();
    Recipe r;
    if (name == "klein") {
      r.kind = Recipe::Kind::Klein;
      return r;
    }
    expect('(');
    if (name == "sym_power") {
      r.kind = Recipe::Kind::SymPower;
      r.n = integer();
      if (r.n < 2) fail("sym_power needs d >= 2");
    } else if (name == "exterior") {
      r.kind = Recipe::Kind::Exterior;
      r.n = integer();
      expect(',');
      r.child = sub();
    } else if (name == "adjoint") {
      r.kind = Recipe::Kind::Adjoint;
      r.child = sub();
    } else if (name == "perturb") {
      r.kind = Recipe::Kind::Perturb;
      r.eps = number();
      if (!(r.eps >= 0.0)) fail("perturb needs eps >= 0");
      expect(',');
      const int seed = integer();
      if (seed < 0) fail("perturb needs a nonnegative seed");
      r.seed = static_cast<std::uint64_t>(seed);
      expect(',');
      r.child = sub();
    } else {
      fail("unknown recipe '" + name + "'");
    }
    expect(')');
    return r;
  }
};

struct Entry {
  nlohmann::json value;
  int line = 0;
  bool used = false;
};

using Table = std::map<std::string, Entry>;  // "section.key" or "key"

class Reader {
 public:
  explicit Reader(Table& t) : t_(t) {}

  template <class T>
  bool get(const std::string& key, T& out) {
    auto it = t_.find(key);
    if (it == t_.end()) return false;
    it->second.used = true;
    try {
      out = it->second.value.get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("line " + std::to_string(it->second.line) + ": '" + key + "' has the wrong type");
    }
    return true;
  }

  template <class T>
  void require(const std::string& key, T& out) {
    if (!get(key, out)) throw ConfigError("missing required key '" + key + "'");
  }

  void check_unused() const {
    for (const auto& [k, e] : t_)
      if (!e.used) throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + k + "'");
  }

 private:
  Table& t_;
};

void positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError("'" + key + "' must be positive");
}

}  // namespace

std::string Recipe::str() const {
  switch (kind) {
    case Kind::Klein: return "klein";
    case Kind::SymPower: return "sym_power(" + std::to_string(n) + ")";
    case Kind::Exterior: return "exterior(" + std::to_string(n) + ", " + child->str() + ")";
    case Kind::Adjoint: return "adjoint(" + child->str() + ")";
    case Kind::Perturb: {
      std::ostringstream os;
      os << "perturb(" << eps << ", " << seed << ", " << child->str() << ")";
      return os.str();
    }
  }
  return "?";
}

Recipe parse_recipe(std::string_view text) { return RecipeParser(text).parse(); }

ExperimentConfig parse_config(std::string_view text) {
  static const std::set<std::string> sections{"geometry", "representation", "checks", "tolerances", "window"};
  Table table;
  nlohmann::json echo = nlohmann::json::object();
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      if (!sections.count(section)) throw ConfigError(where + "unknown section '" + section + "'");
      if (echo.contains(section)) throw ConfigError(where + "section '" + section + "' repeated");
      echo[section] = nlohmann::json::object();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty() || key.find_first_of(" \t.\"") != std::string::npos) throw ConfigError(where + "malformed key");
    nlohmann::json v;
    try {
      v = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
      throw ConfigError(where + "cannot parse value for '" + key + "'");
    }
    const std::string full = section.empty() ? key : section + "." + key;
    if (table.count(full)) throw ConfigError(where + "key '" + full + "' repeated");
    table[full] = {v, line_no, false};
    (section.empty() ? echo[key] : echo[section][key]) = v;
  }

  ExperimentConfig c;
  c.echo = echo;
  Reader r(table);
  r.require("name", c.name);
  r.get("seed", c.seed);
  r.get("max_len", c.max_len);
  r.get("sample_len", c.sample_len);
  r.get("output_dir", c.output_dir);
  if (c.max_len < 1 || c.sample_len < 1) throw ConfigError("'max_len' and 'sample_len' must be at least 1");

  auto& g = c.geometry;
  r.require("geometry.kind", g.kind);
  if (g.kind == "psl2") {
    r.require("geometry.angles", g.angles);
    r.require("geometry.lengths", g.lengths);
    if (g.angles.size() != g.lengths.size() || g.angles.empty())
      throw ConfigError("geometry.angles and geometry.lengths must be nonempty and of equal size");
  } else if (g.kind == "klein") {
    r.require("geometry.k", g.k);
    if (g.k < 2) throw ConfigError("geometry.k must be at least 2");
    if (r.get("geometry.axes", g.axes)) {
      r.require("geometry.lengths", g.lengths);
      r.get("geometry.twists", g.twists);
      if (g.axes.size() != g.lengths.size() || g.axes.empty())
        throw ConfigError("geometry.axes and geometry.lengths must be nonempty and of equal size");
      if (!g.twists.empty() && g.twists.size() != g.axes.size())
        throw ConfigError("geometry.twists must match geometry.axes");
      for (const auto& a : g.axes)
        if (static_cast<int>(a.size()) != g.k) throw ConfigError("geometry.axes entries must have length k");
    } else {
      r.get("geometry.rank", g.rank);
      r.get("geometry.length", g.length);
      r.get("geometry.seed", g.seed);
      if (g.rank < 1) throw ConfigError("geometry.rank must be at least 1");
      positive("geometry.length", g.length);
    }
  } else {
    throw ConfigError("geometry.kind must be \"psl2\" or \"klein\"");
  }
  for (double l : g.lengths) positive("geometry.lengths", l);

  std::string recipe;
  r.require("representation.recipe", recipe);
  c.recipe = parse_recipe(recipe);

  auto& k = c.checks;
  r.get("checks.tuples", k.tuples);
  r.get("checks.adjoint", k.adjoint);
  r.get("checks.nonnegative", k.nonnegative);
  int expected = 0;
  if (r.get("checks.expected_rank", expected)) k.expected_rank = expected;
  r.get("checks.rank_p_max", k.rank_p_max);
  r.get("checks.rank_trials", k.rank_trials);
  r.get("checks.holder_pairs", k.holder_pairs);
  r.get("checks.cocycle_cases", k.cocycle_cases);
  if (k.tuples < 1 || k.rank_trials < 1 || k.cocycle_cases < 1) throw ConfigError("check counts must be positive");

  auto& t = c.tol;
  const std::pair<const char*, double*> tols[] = {
      {"tolerances.ladder", &t.ladder},         {"tolerances.klein", &t.klein},
      {"tolerances.axioms", &t.axioms},         {"tolerances.gromov", &t.gromov},
      {"tolerances.adjoint", &t.adjoint},       {"tolerances.cocycle", &t.cocycle},
      {"tolerances.rank", &t.rank},             {"tolerances.min_pairing", &t.min_pairing},
      {"tolerances.rank_min_pairing", &t.rank_min_pairing}, {"tolerances.inequality_slack", &t.inequality_slack}};
  for (const auto& [key, ptr] : tols)
    if (r.get(key, *ptr)) positive(key, *ptr);

  r.get("window.q_lo", c.window.q_lo);
  r.get("window.q_hi", c.window.q_hi);
  if (!(0.0 <= c.window.q_lo && c.window.q_lo < c.window.q_hi && c.window.q_hi <= 1.0))
    throw ConfigError("window quantiles must satisfy 0 <= q_lo < q_hi <= 1");

  r.check_unused();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str());
}

}  // namespace rigidity
