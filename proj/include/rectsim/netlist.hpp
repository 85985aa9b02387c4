#pragma once

// SPICE-subset netlist reader.
//
// Grammar (one card per logical line, first line is the title):
//   Rname n1 n2 value
//   Cname n1 n2 value
//   Vname n+ n- [DC] value | SIN(offset amplitude frequency)
//   Iname n+ n- [DC] value | SIN(offset amplitude frequency)
//   Mname drain gate source bulk model W=value L=value
//   .MODEL name NMOS|PMOS [LEVEL=n] KEY=value ...
//   .OP | .DC src start stop step | .TRAN tstep tstop | .TEMP t1 [t2 ...] | .END
// Lines starting with '+' continue the previous card, lines starting with '*'
// are comments and ';' starts an inline comment.

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rectsim/units.hpp"

namespace rectsim {

/// Parse failure carrying the 1-based physical line where the card starts.
class NetlistError : public std::runtime_error {
 public:
  NetlistError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

enum class Polarity { Nmos, Pmos };

inline const char* to_string(Polarity p) { return p == Polarity::Nmos ? "NMOS" : "PMOS"; }

struct DcSource {
  double value = 0.0;
  bool operator==(const DcSource&) const = default;
};

struct SinSource {
  double offset = 0.0;
  double amplitude = 0.0;
  double frequency = 1.0;
  bool operator==(const SinSource&) const = default;
};

/// Independent source waveform: either a constant or offset + A*sin(2*pi*f*t).
struct SourceSpec {
  std::variant<DcSource, SinSource> shape{DcSource{}};

  static SourceSpec dc(double v) { return SourceSpec{DcSource{v}}; }
  static SourceSpec sin(double offset, double amplitude, double frequency) {
    return SourceSpec{SinSource{offset, amplitude, frequency}};
  }

  bool is_dc() const { return std::holds_alternative<DcSource>(shape); }

  double value_at(double t) const {
    if (const auto* d = std::get_if<DcSource>(&shape)) return d->value;
    const auto& s = std::get<SinSource>(shape);
    return s.offset + s.amplitude * std::sin(2.0 * std::numbers::pi * s.frequency * t);
  }

  bool operator==(const SourceSpec&) const = default;
};

/// Named parameter set from a `.MODEL` card. Keys are stored upper-case in
/// card order; keys the device model does not evaluate are kept as-is.
struct ModelCard {
  std::string name;
  Polarity polarity = Polarity::Nmos;
  int level = 1;
  bool level_given = false;
  std::vector<std::pair<std::string, double>> params;

  std::optional<double> get(std::string_view key) const {
    for (const auto& [k, v] : params) {
      if (detail::iequals(k, key)) return v;
    }
    return std::nullopt;
  }
  bool has(std::string_view key) const { return get(key).has_value(); }

  /// Number of key/value entries on the card, LEVEL included.
  std::size_t entry_count() const { return params.size() + (level_given ? 1 : 0); }

  bool operator==(const ModelCard&) const = default;
};

enum class ElementKind { Mosfet, Resistor, Capacitor, VSource, ISource };

struct ElementCard {
  ElementKind kind = ElementKind::Resistor;
  std::string name;
  std::vector<std::string> nodes;  // Mosfet: drain, gate, source, bulk
  double value = 0.0;              // ohms or farads
  SourceSpec source;               // V/I sources
  std::string model;               // Mosfet
  double w = 0.0;
  double l = 0.0;
  int line = 0;

  bool operator==(const ElementCard& o) const {
    return kind == o.kind && detail::iequals(name, o.name) && nodes == o.nodes && value == o.value &&
           source == o.source && detail::iequals(model, o.model) && w == o.w && l == o.l;
  }
};

struct OpDirective {
  bool operator==(const OpDirective&) const = default;
};
struct DcSweepDirective {
  std::string source;
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  bool operator==(const DcSweepDirective&) const = default;
};
struct TranDirective {
  double tstep = 0.0;
  double tstop = 0.0;
  bool operator==(const TranDirective&) const = default;
};
struct TempDirective {
  std::vector<double> temps;
  bool operator==(const TempDirective&) const = default;
};

using AnalysisDirective = std::variant<OpDirective, DcSweepDirective, TranDirective, TempDirective>;

struct NetlistDocument {
  std::string title;
  std::vector<ElementCard> elements;
  std::map<std::string, ModelCard> models;  // keyed by upper-case name
  std::vector<AnalysisDirective> directives;
  std::vector<std::string> node_names{"0"};  // index -> name, ground first
  std::map<std::string, int> nodes{{"0", 0}};

  const ModelCard* find_model(std::string_view name) const {
    auto it = models.find(detail::upper(name));
    return it == models.end() ? nullptr : &it->second;
  }

  const ElementCard* find_element(std::string_view name) const {
    for (const auto& e : elements) {
      if (detail::iequals(e.name, name)) return &e;
    }
    return nullptr;
  }

  bool operator==(const NetlistDocument& o) const {
    return title == o.title && elements == o.elements && models == o.models &&
           directives == o.directives && node_names == o.node_names;
  }
};

namespace detail {

struct LogicalLine {
  int line = 0;
  std::string text;
};

inline std::vector<std::string> tokenize(std::string_view text) {
  // Parentheses and commas separate tokens; '=' becomes a standalone token.
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    if (!cur.empty()) tokens.push_back(std::move(cur));
    cur.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ',') {
      flush();
    } else if (c == '=') {
      flush();
      tokens.emplace_back("=");
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return tokens;
}

/// Collects `KEY = value` pairs from tokens[first..]; keys are upper-cased.
inline std::vector<std::pair<std::string, std::string>> key_values(const std::vector<std::string>& tokens,
                                                                   std::size_t first, int line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t i = first;
  while (i < tokens.size()) {
    if (i + 2 >= tokens.size() || tokens[i + 1] != "=" || tokens[i] == "=" || tokens[i + 2] == "=") {
      throw NetlistError(line, "expected KEY=value near '" + tokens[i] + "'");
    }
    out.emplace_back(upper(tokens[i]), tokens[i + 2]);
    i += 3;
  }
  return out;
}

inline double number_at(const std::string& token, int line, std::string_view what) {
  auto v = try_parse_number(token);
  if (!v) throw NetlistError(line, "malformed number '" + token + "' for " + std::string(what));
  return *v;
}

inline std::vector<LogicalLine> logical_lines(std::string_view text, std::string& title) {
  std::vector<LogicalLine> out;
  int lineno = 0;
  bool have_title = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (!have_title) {
      title = std::string(trim(raw));
      have_title = true;
      continue;
    }
    if (auto semi = raw.find(';'); semi != std::string_view::npos) raw = raw.substr(0, semi);
    std::string_view body = trim(raw);
    if (body.empty() || body.front() == '*') continue;
    if (body.front() == '+') {
      if (out.empty()) throw NetlistError(lineno, "continuation line without a preceding card");
      out.back().text += ' ';
      out.back().text += trim(body.substr(1));
      continue;
    }
    out.push_back({lineno, std::string(body)});
  }
  return out;
}

}  // namespace detail

/// Parses one joined `.MODEL` card.
inline ModelCard parse_model_card(std::string_view joined, int line = 0) {
  auto tokens = detail::tokenize(joined);
  if (tokens.empty() || !detail::iequals(tokens[0], ".MODEL")) {
    throw NetlistError(line, "model card must start with .MODEL");
  }
  if (tokens.size() < 3) throw NetlistError(line, "missing polarity keyword in .MODEL");
  ModelCard card;
  card.name = detail::upper(tokens[1]);
  if (detail::iequals(tokens[2], "NMOS")) {
    card.polarity = Polarity::Nmos;
  } else if (detail::iequals(tokens[2], "PMOS")) {
    card.polarity = Polarity::Pmos;
  } else {
    throw NetlistError(line, "missing polarity keyword in .MODEL " + card.name + " (got '" + tokens[2] + "')");
  }
  for (auto& [key, text] : detail::key_values(tokens, 3, line)) {
    double v = detail::number_at(text, line, key);
    if (key == "LEVEL") {
      if (v != std::floor(v)) throw NetlistError(line, "LEVEL must be an integer");
      card.level = static_cast<int>(v);
      card.level_given = true;
      continue;
    }
    if ((key == "TOX" || key == "PHI") && !(v > 0.0)) {
      throw NetlistError(line, key + " must be positive");
    }
    bool replaced = false;
    for (auto& kv : card.params) {
      if (kv.first == key) {
        kv.second = v;
        replaced = true;
      }
    }
    if (!replaced) card.params.emplace_back(key, v);
  }
  return card;
}

namespace detail {

inline SourceSpec parse_source(const std::vector<std::string>& t, std::size_t first, int line) {
  if (first >= t.size()) throw NetlistError(line, "source '" + t[0] + "' has no value");
  if (iequals(t[first], "SIN")) {
    if (t.size() != first + 4) throw NetlistError(line, "SIN expects (offset amplitude frequency)");
    double off = number_at(t[first + 1], line, "SIN offset");
    double amp = number_at(t[first + 2], line, "SIN amplitude");
    double freq = number_at(t[first + 3], line, "SIN frequency");
    if (!(freq > 0.0)) throw NetlistError(line, "SIN frequency must be positive");
    return SourceSpec::sin(off, amp, freq);
  }
  std::size_t at = first;
  if (iequals(t[at], "DC")) ++at;
  if (at + 1 != t.size()) throw NetlistError(line, "source '" + t[0] + "' expects a single DC value");
  return SourceSpec::dc(number_at(t[at], line, "source value"));
}

inline ElementCard parse_element(const LogicalLine& ll) {
  auto t = tokenize(ll.text);
  ElementCard e;
  e.name = t[0];
  e.line = ll.line;
  const int line = ll.line;
  auto need = [&](std::size_t n, const char* usage) {
    if (t.size() < n) throw NetlistError(line, std::string("expected ") + usage);
  };
  switch (lower(t[0][0])) {
    case 'r':
    case 'c': {
      bool is_r = lower(t[0][0]) == 'r';
      e.kind = is_r ? ElementKind::Resistor : ElementKind::Capacitor;
      need(4, is_r ? "Rname n1 n2 value" : "Cname n1 n2 value");
      if (t.size() > 4) throw NetlistError(line, "unexpected token '" + t[4] + "'");
      e.nodes = {t[1], t[2]};
      e.value = number_at(t[3], line, "element value");
      if (is_r && !(e.value > 0.0)) throw NetlistError(line, "resistance must be positive");
      if (!is_r && !(e.value >= 0.0)) throw NetlistError(line, "capacitance must be non-negative");
      break;
    }
    case 'v':
    case 'i':
      e.kind = lower(t[0][0]) == 'v' ? ElementKind::VSource : ElementKind::ISource;
      need(4, "Xname n+ n- value");
      e.nodes = {t[1], t[2]};
      e.source = parse_source(t, 3, line);
      break;
    case 'm': {
      e.kind = ElementKind::Mosfet;
      need(6, "Mname d g s b model W=value L=value");
      e.nodes = {t[1], t[2], t[3], t[4]};
      e.model = upper(t[5]);
      bool have_w = false, have_l = false;
      for (auto& [key, text] : key_values(t, 6, line)) {
        if (key == "W") {
          e.w = number_at(text, line, "W");
          have_w = true;
        } else if (key == "L") {
          e.l = number_at(text, line, "L");
          have_l = true;
        } else {
          throw NetlistError(line, "unknown MOSFET parameter '" + key + "'");
        }
      }
      if (!have_w || !have_l) throw NetlistError(line, "MOSFET requires W= and L=");
      if (!(e.w > 0.0) || !(e.l > 0.0)) throw NetlistError(line, "MOSFET W and L must be positive");
      break;
    }
    default:
      throw NetlistError(line, "unknown card type '" + t[0] + "'");
  }
  return e;
}

inline std::optional<AnalysisDirective> parse_directive(const LogicalLine& ll) {
  auto t = tokenize(ll.text);
  const int line = ll.line;
  std::string kw = upper(t[0]);
  if (kw == ".OP") {
    if (t.size() != 1) throw NetlistError(line, ".OP takes no arguments");
    return OpDirective{};
  }
  if (kw == ".DC") {
    if (t.size() != 5) throw NetlistError(line, "expected .DC source start stop step");
    DcSweepDirective d{t[1], number_at(t[2], line, ".DC start"), number_at(t[3], line, ".DC stop"),
                       number_at(t[4], line, ".DC step")};
    if (d.step == 0.0) throw NetlistError(line, ".DC step must be non-zero");
    if ((d.stop - d.start) * d.step < 0.0) throw NetlistError(line, ".DC step sign disagrees with stop-start");
    return d;
  }
  if (kw == ".TRAN") {
    if (t.size() != 3) throw NetlistError(line, "expected .TRAN tstep tstop");
    TranDirective d{number_at(t[1], line, ".TRAN tstep"), number_at(t[2], line, ".TRAN tstop")};
    if (!(d.tstep > 0.0) || !(d.tstop > d.tstep)) throw NetlistError(line, ".TRAN requires tstop > tstep > 0");
    return d;
  }
  if (kw == ".TEMP") {
    if (t.size() < 2) throw NetlistError(line, ".TEMP needs at least one temperature");
    TempDirective d;
    for (std::size_t i = 1; i < t.size(); ++i) d.temps.push_back(number_at(t[i], line, ".TEMP"));
    return d;
  }
  if (kw == ".END") return std::nullopt;
  throw NetlistError(line, "unknown directive '" + t[0] + "'");
}

}  // namespace detail

/// Parses a complete netlist file. Structural problems (dangling nodes,
/// missing models) are left to validate().
inline NetlistDocument parse_netlist(std::string_view text) {
  if (detail::trim(text).empty()) throw NetlistError(1, "empty netlist");
  NetlistDocument doc;
  for (const auto& ll : detail::logical_lines(text, doc.title)) {
    if (ll.text.front() == '.') {
      auto kw = detail::upper(detail::tokenize(ll.text).front());
      if (kw == ".END") break;
      if (kw == ".MODEL") {
        ModelCard card = parse_model_card(ll.text, ll.line);
        if (doc.models.count(card.name)) throw NetlistError(ll.line, "duplicate model '" + card.name + "'");
        doc.models.emplace(card.name, std::move(card));
        continue;
      }
      if (auto d = detail::parse_directive(ll)) doc.directives.push_back(std::move(*d));
      continue;
    }
    ElementCard e = detail::parse_element(ll);
    if (doc.find_element(e.name)) throw NetlistError(ll.line, "duplicate element name '" + e.name + "'");
    for (const auto& n : e.nodes) {
      if (doc.nodes.emplace(n, static_cast<int>(doc.node_names.size())).second) doc.node_names.push_back(n);
    }
    doc.elements.push_back(std::move(e));
  }
  return doc;
}

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  int line = 0;  // 0 when the finding is not tied to one card
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
  return std::any_of(diags.begin(), diags.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

inline std::vector<Diagnostic> validate(const NetlistDocument& doc) {
  std::vector<Diagnostic> out;
  std::vector<int> terminals(doc.node_names.size(), 0);
  std::vector<int> first_line(doc.node_names.size(), 0);
  std::map<std::string, bool> model_used;
  for (const auto& [name, card] : doc.models) model_used[name] = false;
  bool any_source = false;

  for (const auto& e : doc.elements) {
    for (const auto& n : e.nodes) {
      int idx = doc.nodes.at(n);
      if (terminals[idx]++ == 0) first_line[idx] = e.line;
    }
    if (e.kind == ElementKind::VSource || e.kind == ElementKind::ISource) any_source = true;
    if (e.kind == ElementKind::Mosfet) {
      if (doc.find_model(e.model)) {
        model_used[detail::upper(e.model)] = true;
      } else {
        out.push_back({Severity::Error, "MOSFET " + e.name + " references unknown model '" + e.model + "'", e.line});
      }
    }
  }
  if (terminals[0] == 0) out.push_back({Severity::Error, "no ground node", 0});
  for (std::size_t i = 1; i < terminals.size(); ++i) {
    if (terminals[i] == 1) {
      out.push_back({Severity::Error, "node '" + doc.node_names[i] + "' is connected to only one terminal",
                     first_line[i]});
    }
  }
  if (!any_source) out.push_back({Severity::Error, "circuit has no independent sources", 0});
  for (const auto& [name, used] : model_used) {
    if (!used) out.push_back({Severity::Warning, "model '" + name + "' is never used", 0});
  }
  return out;
}

/// Writes a document back as netlist text that parses to an equal document.
inline std::string serialize(const NetlistDocument& doc) {
  std::ostringstream os;
  auto num = [](double v) { return format_roundtrip(v); };
  os << doc.title << '\n';
  for (const auto& [name, card] : doc.models) {
    os << ".MODEL " << card.name << ' ' << to_string(card.polarity);
    if (card.level_given) os << " LEVEL=" << card.level;
    int on_line = 0;
    for (const auto& [k, v] : card.params) {
      if (on_line == 6) {
        os << "\n+";
        on_line = 0;
      }
      os << ' ' << k << '=' << num(v);
      ++on_line;
    }
    os << '\n';
  }
  for (const auto& e : doc.elements) {
    os << e.name;
    for (const auto& n : e.nodes) os << ' ' << n;
    switch (e.kind) {
      case ElementKind::Resistor:
      case ElementKind::Capacitor:
        os << ' ' << num(e.value);
        break;
      case ElementKind::VSource:
      case ElementKind::ISource:
        if (const auto* d = std::get_if<DcSource>(&e.source.shape)) {
          os << " DC " << num(d->value);
        } else {
          const auto& s = std::get<SinSource>(e.source.shape);
          os << " SIN(" << num(s.offset) << ' ' << num(s.amplitude) << ' ' << num(s.frequency) << ')';
        }
        break;
      case ElementKind::Mosfet:
        os << ' ' << e.model << " W=" << num(e.w) << " L=" << num(e.l);
        break;
    }
    os << '\n';
  }
  for (const auto& d : doc.directives) {
    std::visit(
        [&](const auto& dir) {
          using T = std::decay_t<decltype(dir)>;
          if constexpr (std::is_same_v<T, OpDirective>) {
            os << ".OP";
          } else if constexpr (std::is_same_v<T, DcSweepDirective>) {
            os << ".DC " << dir.source << ' ' << num(dir.start) << ' ' << num(dir.stop) << ' ' << num(dir.step);
          } else if constexpr (std::is_same_v<T, TranDirective>) {
            os << ".TRAN " << num(dir.tstep) << ' ' << num(dir.tstop);
          } else {
            os << ".TEMP";
            for (double t : dir.temps) os << ' ' << num(t);
          }
        },
        d);
    os << '\n';
  }
  os << ".END\n";
  return os.str();
}

}  // namespace rectsim
