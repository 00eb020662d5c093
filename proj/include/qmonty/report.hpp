#pragma once

// Sweep tables in CSV, aligned-text and JSON form.

#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qmonty/classical.hpp"
#include "qmonty/scheme1.hpp"
#include "qmonty/scheme2.hpp"

namespace qmonty::report {

using json = nlohmann::json;

inline std::string fixed6(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6) << (std::abs(v) < 5e-7 ? 0.0 : v);
  return out.str();
}

inline std::vector<std::string> support_bits(const std::set<Door>& s) {
  std::vector<std::string> out;
  for (Door d : s) out.push_back(bits(d));
  return out;
}

inline std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline std::string tf(bool b) { return b ? "true" : "false"; }

// scheme 1

inline std::string csv(const std::vector<scheme1::SweepRow>& rows) {
  std::ostringstream out;
  out << "prize,first,opened,p_stick,p_switch,p_measure\n";
  for (const auto& r : rows) {
    out << name(r.prize) << ',' << name(r.first) << ',' << name(r.opened) << ','
        << fixed6(r.p_stick) << ',' << fixed6(r.p_switch) << ',' << fixed6(r.p_measure) << '\n';
  }
  return out.str();
}

inline std::string table(const std::vector<scheme1::SweepRow>& rows) {
  std::ostringstream out;
  out << "prize  first  opened  support   p_stick   p_switch  p_measure\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(7) << name(r.prize) << std::setw(7) << name(r.first)
        << std::setw(8) << name(r.opened) << std::setw(10)
        << ("{" + join(support_bits(r.support), ",") + "}") << std::setw(10) << fixed6(r.p_stick)
        << std::setw(10) << fixed6(r.p_switch) << fixed6(r.p_measure) << '\n';
  }
  return out.str();
}

inline json to_json(const std::vector<scheme1::SweepRow>& rows) {
  json out = {{"scheme", 1}, {"rows", json::array()}};
  for (const auto& r : rows) {
    out["rows"].push_back({{"prize", name(r.prize)},
                           {"first", name(r.first)},
                           {"opened", name(r.opened)},
                           {"support", support_bits(r.support)},
                           {"p_stick", r.p_stick},
                           {"p_switch", r.p_switch},
                           {"p_measure", r.p_measure}});
  }
  return out;
}

// scheme 2

inline bool all_agree(const std::vector<scheme2::SweepRow>& rows) {
  for (const auto& r : rows) {
    if (!r.agree()) return false;
  }
  return true;
}

inline std::string csv(const std::vector<scheme2::SweepRow>& rows) {
  std::ostringstream out;
  out << "prize,first,second,ancilla,win_quantum,win_classical,agree\n";
  for (const auto& r : rows) {
    out << name(r.prize) << ',' << name(r.first) << ',' << name(r.second) << ',' << r.ancilla
        << ',' << tf(r.win_quantum) << ',' << tf(r.win_classical) << ',' << tf(r.agree())
        << '\n';
  }
  return out.str();
}

inline std::string table(const std::vector<scheme2::SweepRow>& rows) {
  std::ostringstream out;
  out << "prize  first  second  ancilla  quantum  classical  agree\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(7) << name(r.prize) << std::setw(7) << name(r.first)
        << std::setw(8) << name(r.second) << std::setw(9) << r.ancilla << std::setw(9)
        << (r.win_quantum ? "win" : "lose") << std::setw(11) << (r.win_classical ? "win" : "lose")
        << (r.agree() ? "yes" : "NO") << '\n';
  }
  return out.str();
}

inline json to_json(const std::vector<scheme2::SweepRow>& rows) {
  json out = {{"scheme", 2}, {"all_agree", all_agree(rows)}, {"rows", json::array()}};
  for (const auto& r : rows) {
    out["rows"].push_back({{"prize", name(r.prize)},
                           {"first", name(r.first)},
                           {"second", name(r.second)},
                           {"ancilla", r.ancilla},
                           {"win_quantum", r.win_quantum},
                           {"win_classical", r.win_classical},
                           {"agree", r.agree()}});
  }
  return out;
}

// classical case table

inline std::string table(const CaseTable& t) {
  std::ostringstream out;
  out << "prize  first  opened  second  result\n";
  for (const auto& r : t) {
    out << std::left << std::setw(7) << name(r.prize) << std::setw(7) << name(r.first)
        << std::setw(8) << name(r.opened) << std::setw(8) << name(r.second)
        << (r.win ? "win" : "lose") << '\n';
  }
  return out.str();
}

inline json to_json(const CaseTable& t) {
  json out = {{"scheme", "classical"}, {"rows", json::array()}};
  for (const auto& r : t) {
    out["rows"].push_back({{"prize", name(r.prize)},
                           {"first", name(r.first)},
                           {"opened", name(r.opened)},
                           {"second", name(r.second)},
                           {"win", r.win}});
  }
  return out;
}

}  // namespace qmonty::report
