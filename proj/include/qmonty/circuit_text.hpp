#pragma once

// Line-oriented circuit text format. Grammar (docs/circuit-format.md):
//
//   file      := header* line*
//   header    := "qubits" N | "labels" NAME{N}
//   line      := comment | gate | measure
//   comment   := "#" anything
//   gate      := prefix base " " operand ("," operand)*
//   prefix    := "" | "c" | "cc" | "c" K        (K >= 3 controls)
//   base      := "h" | "x" | "z"
//   operand   := "q[" INDEX "]"                 (controls first, target last)
//   measure   := "measure " operand ("," operand)* " -> " TAG
//
// Only positively-controlled primitives appear in a file; negative controls
// are written as x-conjugation of the control qubit.

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qmonty/gates.hpp"

namespace qmonty {

namespace detail {

inline std::string control_prefix(std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return "c";
  if (k == 2) return "cc";
  return "c" + std::to_string(k);
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::size_t parse_count(std::string_view s, std::size_t line, const char* what) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

inline std::size_t parse_operand(std::string_view s, std::size_t line) {
  if (s.size() < 4 || s.substr(0, 2) != "q[" || s.back() != ']') {
    throw ParseError(line, "bad operand '" + std::string(s) + "'");
  }
  return parse_count(s.substr(2, s.size() - 3), line, "qubit index");
}

}  // namespace detail

inline std::string to_text(const Circuit& c) {
  std::ostringstream out;
  out << "# qmonty circuit v1\n";
  out << "qubits " << c.n_qubits() << "\n";
  out << "labels";
  for (const auto& l : c.labels()) out << ' ' << l;
  out << "\n";
  for (const auto& g : c.ops()) {
    if (g.kind == GateKind::Custom) {
      fail(ErrorKind::Validation, "only h/x/z gates can be exported");
    }
    for (const auto& ctl : g.controls) {
      if (ctl.polarity == Polarity::Negative) out << "x q[" << ctl.qubit << "]\n";
    }
    out << detail::control_prefix(g.controls.size()) << to_string(g.kind) << ' ';
    for (const auto& ctl : g.controls) out << "q[" << ctl.qubit << "],";
    out << "q[" << g.target << "]\n";
    for (const auto& ctl : g.controls) {
      if (ctl.polarity == Polarity::Negative) out << "x q[" << ctl.qubit << "]\n";
    }
  }
  for (const auto& m : c.measurements()) {
    out << "measure ";
    for (std::size_t i = 0; i < m.qubits.size(); ++i) {
      out << (i ? "," : "") << "q[" << m.qubits[i] << "]";
    }
    out << " -> " << m.tag << "\n";
  }
  return out.str();
}

/// Parses the text format. Errors report the 1-based line number as position.
inline Circuit parse_circuit(std::string_view text) {
  std::optional<Circuit> circuit;
  std::size_t n = 0;
  std::vector<std::string> labels;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;

  auto ensure_circuit = [&](std::size_t line) -> Circuit& {
    if (!circuit) {
      if (n == 0) throw ParseError(line, "gate before 'qubits' header");
      try {
        circuit.emplace(n, labels);
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    }
    return *circuit;
  };

  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto sp = line.find(' ');
    const auto head = line.substr(0, sp);
    const auto rest = sp == std::string_view::npos ? std::string_view{}
                                                   : detail::trim(line.substr(sp + 1));
    if (head == "qubits") {
      if (circuit || n != 0) throw ParseError(line_no, "duplicate or late 'qubits' header");
      n = detail::parse_count(rest, line_no, "qubit count");
      if (n < 1 || n > kMaxQubits) throw ParseError(line_no, "qubit count out of range");
      continue;
    }
    if (head == "labels") {
      if (circuit) throw ParseError(line_no, "'labels' after first gate");
      labels.clear();
      std::istringstream ls{std::string(rest)};
      for (std::string l; ls >> l;) labels.push_back(l);
      continue;
    }
    if (head == "measure") {
      const auto arrow = rest.find("->");
      if (arrow == std::string_view::npos) throw ParseError(line_no, "measure without '->'");
      std::vector<std::size_t> qs;
      for (auto op : detail::split(detail::trim(rest.substr(0, arrow)), ',')) {
        qs.push_back(detail::parse_operand(op, line_no));
      }
      const auto tag = detail::trim(rest.substr(arrow + 2));
      if (tag.empty()) throw ParseError(line_no, "measure without tag");
      try {
        ensure_circuit(line_no).measure(std::move(qs), std::string(tag));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }

    // gate line
    if (head.empty()) throw ParseError(line_no, "empty mnemonic");
    const char base = head.back();
    GateKind kind;
    switch (base) {
      case 'h': kind = GateKind::H; break;
      case 'x': kind = GateKind::X; break;
      case 'z': kind = GateKind::Z; break;
      default: throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
    }
    const auto prefix = head.substr(0, head.size() - 1);
    std::size_t k = 0;
    if (prefix.empty()) {
      k = 0;
    } else if (prefix == "c") {
      k = 1;
    } else if (prefix == "cc") {
      k = 2;
    } else if (prefix.front() == 'c') {
      k = detail::parse_count(prefix.substr(1), line_no, "control count");
      if (k < 3) throw ParseError(line_no, "use c/cc for fewer than 3 controls");
    } else {
      throw ParseError(line_no, "unknown gate '" + std::string(head) + "'");
    }
    const auto ops = detail::split(rest, ',');
    if (rest.empty() || ops.size() != k + 1) {
      throw ParseError(line_no, "expected " + std::to_string(k + 1) + " operands");
    }
    std::vector<ControlSpec> controls;
    for (std::size_t i = 0; i < k; ++i) controls.push_back(on(detail::parse_operand(ops[i], line_no)));
    const auto target = detail::parse_operand(ops[k], line_no);
    try {
      ensure_circuit(line_no).add(controlled(kind, std::move(controls), target));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!circuit) {
    if (n == 0) throw ParseError(line_no, "missing 'qubits' header");
    ensure_circuit(line_no);
  }
  return *circuit;
}

}  // namespace qmonty
