#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

#include "hbc/pcgroup.hpp"

namespace hbc {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_spaces(const std::string& s) {
  std::string o;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) o += ch;
  return o;
}

// Right-hand sides must be normal words: increasing indices, exponents 1 or 2.
Element parse_normal_word(const std::string& s, int n, int line_no) {
  const Word w = parse_word(s, n);
  Element x;
  int last = -1;
  for (auto [g, e] : w) {
    if (g <= last)
      throw InputError("line " + std::to_string(line_no) +
                       ": relation words must list generators in increasing order");
    if (e < 0 || e > 2)
      throw InputError("line " + std::to_string(line_no) + ": exponents must be 0, 1 or 2");
    x.e[g] = static_cast<std::uint8_t>(e);
    last = g;
  }
  return x;
}

}  // namespace

Word parse_word(const std::string& text, int n) {
  const std::string s = strip_spaces(text);
  Word w;
  if (s.empty() || s == "1" || s == "id") return w;
  static const std::regex factor(R"(a(\d+)(\^(-?\d+))?)");
  std::size_t pos = 0;
  while (pos <= s.size()) {
    std::size_t star = s.find('*', pos);
    if (star == std::string::npos) star = s.size();
    const std::string f = s.substr(pos, star - pos);
    std::smatch m;
    if (!std::regex_match(f, m, factor)) throw InputError("malformed word factor '" + f + "'");
    const int g = std::stoi(m[1]) - 1;
    const int e = m[3].matched ? std::stoi(m[3]) : 1;
    if (g < 0 || g >= n) throw InputError("generator a" + m[1].str() + " out of range");
    w.push_back({g, e});
    pos = star + 1;
  }
  return w;
}

PcPresentation parse_pc3(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int n = -1, d = -1, line_no = 0;
  std::vector<int> weights;
  std::vector<Element> pw;
  std::vector<Element> cm;
  static const std::regex header(R"(p\s*=\s*(\d+)\s+n\s*=\s*(\d+)(\s+d\s*=\s*(\d+))?)");
  static const std::regex power_rel(R"(a(\d+)\^3=(.*))");
  static const std::regex comm_rel(R"(\[a(\d+),a(\d+)\]=(.*))");
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    std::smatch m;
    if (n < 0) {
      if (!std::regex_match(line, m, header))
        throw InputError("line " + std::to_string(line_no) + ": expected header 'p=3 n=<n> d=<d>'");
      if (std::stoi(m[1]) != 3) throw InputError("only p=3 is supported");
      n = std::stoi(m[2]);
      if (n < 0 || n > kMaxGens) throw InputError("n out of range (0..32)");
      d = m[4].matched ? std::stoi(m[4]) : -1;
      pw.assign(n, Element{});
      cm.assign(static_cast<std::size_t>(n) * n, Element{});
      continue;
    }
    const std::string compact = strip_spaces(line);
    if (compact.rfind("w=", 0) == 0) {
      std::istringstream ws(line.substr(line.find('=') + 1));
      int v;
      weights.clear();
      while (ws >> v) weights.push_back(v);
      if (static_cast<int>(weights.size()) != n)
        throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                         " weights");
      continue;
    }
    if (std::regex_match(compact, m, power_rel)) {
      const int i = std::stoi(m[1]) - 1;
      if (i < 0 || i >= n) throw InputError("line " + std::to_string(line_no) + ": bad generator");
      pw[i] = parse_normal_word(m[2], n, line_no);
      continue;
    }
    if (std::regex_match(compact, m, comm_rel)) {
      const int j = std::stoi(m[1]) - 1, i = std::stoi(m[2]) - 1;
      if (i < 0 || j >= n || j <= i)
        throw InputError("line " + std::to_string(line_no) + ": commutators must be [a<j>,a<i>] with j>i");
      cm[static_cast<std::size_t>(j) * n + i] = parse_normal_word(m[3], n, line_no);
      continue;
    }
    throw InputError("line " + std::to_string(line_no) + ": cannot parse '" + line + "'");
  }
  if (n < 0) throw InputError("missing header");
  if (weights.empty()) weights.assign(n, 1);
  PcPresentation g(weights, pw, cm);
  if (d >= 0 && !weights.empty() && d != g.d())
    throw InputError("header d=" + std::to_string(d) + " disagrees with weights (" +
                     std::to_string(g.d()) + " of weight 1)");
  return g;
}

PcPresentation read_pc3(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_pc3(ss.str());
}

std::string to_pc3(const PcPresentation& g, const std::string& comment) {
  std::ostringstream os;
  if (!comment.empty()) {
    std::istringstream cs(comment);
    std::string l;
    while (std::getline(cs, l)) os << "# " << l << '\n';
  }
  os << "p=3 n=" << g.n() << " d=" << g.d() << '\n';
  os << "w =";
  for (int k = 0; k < g.n(); ++k) os << ' ' << g.weight(k);
  os << '\n';
  for (int i = 0; i < g.n(); ++i)
    if (!g.power(i).is_identity()) os << 'a' << i + 1 << "^3 = " << g.format(g.power(i)) << '\n';
  for (int i = 0; i < g.n(); ++i)
    for (int j = i + 1; j < g.n(); ++j)
      if (!g.commutator(j, i).is_identity())
        os << "[a" << j + 1 << ",a" << i + 1 << "] = " << g.format(g.commutator(j, i)) << '\n';
  return os.str();
}

}  // namespace hbc
