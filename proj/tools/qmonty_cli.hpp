#pragma once

// qmonty command line: play | simulate | export | serve.
// Exit codes: 0 success, 1 runtime failure (unwritable file, oracle
// disagreement, input ended), 2 bad flags.

#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "qmonty/circuit_text.hpp"
#include "qmonty/game.hpp"
#include "qmonty/http_server.hpp"
#include "qmonty/report.hpp"

namespace qmonty::cli {

namespace detail {

inline std::string lower_trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

inline std::string door_number(Door d) { return std::to_string(index(d) + 1); }

inline int play(game::Engine engine, std::uint64_t seed, std::istream& in, std::ostream& out) {
  auto session = game::Session::create(engine, seed);
  out << "Quantum Monty Hall (engine: " << game::to_string(engine) << ", seed " << seed
      << ")\n";
  out << "Three closed doors: [1] [2] [3]\n";

  std::string line;
  std::optional<Door> first;
  while (!first) {
    out << "Pick a door (1-3): " << std::flush;
    if (!std::getline(in, line)) {
      out << "\ninput ended\n";
      return 1;
    }
    first = parse_door(lower_trim(line));
    if (!first) out << "Please enter 1, 2 or 3.\n";
  }
  session.pick_first(*first);
  const Door opened = *session.opened();
  const Door other = session.final_door_for(Strategy::Switch);
  out << "Bob opens door " << door_number(opened) << ". It is empty.\n";

  std::optional<game::FinalChoice> choice;
  while (!choice) {
    out << "Stick with door " << door_number(*first) << " or switch to door "
        << door_number(other) << "? (stick/switch): " << std::flush;
    if (!std::getline(in, line)) {
      out << "\ninput ended\n";
      return 1;
    }
    const auto word = lower_trim(line);
    if (word == "stick") {
      choice = Strategy::Stick;
    } else if (word == "switch") {
      choice = Strategy::Switch;
    } else if (const auto d = parse_door(word); d && *d != opened) {
      choice = *d;
    } else {
      out << "Please answer stick or switch.\n";
    }
  }
  session.pick_final(*choice);

  out << "You end on door " << door_number(*session.final_door()) << ". The prize was behind door "
      << door_number(session.prize()) << ".\n";
  if (engine == game::Engine::QuantumScheme1) {
    out << "A3A4 amplitudes before measurement:\n";
    const auto amps = scheme1::alice_amplitudes(session.prize(), *first);
    for (Door d : kDoors) {
      const auto a = amps[code(d)];
      out << "  |" << bits(d) << "> door " << door_number(d) << "  amp " << report::fixed6(a.real())
          << (a.imag() < 0 ? "-" : "+") << report::fixed6(std::abs(a.imag())) << "i  p "
          << report::fixed6(std::norm(a)) << '\n';
    }
  } else if (engine == game::Engine::QuantumScheme2) {
    const auto& ev = session.transcript().at(session.transcript().size() - 2);
    out << "Verdict ancillas A1A2A3: " << ev.detail.at("ancilla").get<std::string>() << '\n';
  }
  out << "Result: " << to_string(*session.result()) << '\n';
  return 0;
}

inline int write_output(const std::string& text, const std::string& path, std::ostream& out,
                        std::ostream& err) {
  if (path.empty() || path == "-") {
    out << text;
    return 0;
  }
  std::ofstream f(path, std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) {
    err << "error: cannot write " << path << '\n';
    return 1;
  }
  return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Quantum Monty Hall: play, verify and export the game circuits", "qmonty"};
  app.require_subcommand(1);

  std::string engine_name = "classical";
  std::optional<std::uint64_t> seed;
  auto* play = app.add_subcommand("play", "Play one game in the terminal");
  play->add_option("--engine", engine_name, "classical | scheme1 | scheme2")
      ->check(CLI::IsMember({"classical", "scheme1", "scheme2"}));
  play->add_option("--seed", seed, "Session seed (fixes the prize)");

  std::string scheme, format = "table", out_path, bob_form = "nine", mcx_form = "native";
  auto add_circuit_flags = [&](CLI::App* sub) {
    sub->add_option("--bob-stage", bob_form, "Scheme 2 Bob stage: nine | merged")
        ->check(CLI::IsMember({"nine", "merged"}));
    sub->add_option("--mcx", mcx_form, "Scheme 2 multi-controlled NOTs: native | decomposed")
        ->check(CLI::IsMember({"native", "decomposed"}));
  };

  auto* simulate = app.add_subcommand("simulate", "Print the verification sweep of a scheme");
  simulate->add_option("--scheme", scheme, "1 | 2 | classical")
      ->required()
      ->check(CLI::IsMember({"1", "2", "classical"}));
  simulate->add_option("--format", format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  simulate->add_option("--out", out_path, "Output file (default stdout)");
  simulate->add_option("--seed", seed, "Measurement seed for scheme 2 verdicts");
  add_circuit_flags(simulate);

  std::string prize_s, first_s, second_s;
  auto* exp = app.add_subcommand("export", "Write a game circuit in the text format");
  exp->add_option("--scheme", scheme, "1 | 2")->required()->check(CLI::IsMember({"1", "2"}));
  exp->add_option("--prize", prize_s, "Prize door 1-3")->required();
  exp->add_option("--first", first_s, "First pick 1-3")->required();
  exp->add_option("--second", second_s, "Second pick 1-3 (scheme 2)");
  exp->add_option("--out", out_path, "Output file (default stdout)");
  add_circuit_flags(exp);

  std::optional<std::string> addr, data_dir, static_dir;
  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--addr", addr, "host:port (default $QMONTY_ADDR or 127.0.0.1:8080)");
  serve->add_option("--data-dir", data_dir, "Write session blobs here");
  serve->add_option("--static-dir", static_dir, "Serve browser assets from here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const scheme2::Options s2opt{
      bob_form == "merged" ? scheme2::BobStageForm::MergedFour : scheme2::BobStageForm::NineCase,
      mcx_form == "decomposed" ? scheme2::McxForm::Decomposed : scheme2::McxForm::Native};

  try {
    if (*play) {
      const auto s = seed ? *seed : std::random_device{}();
      return detail::play(*game::parse_engine(engine_name), s, in, out);
    }

    if (*simulate) {
      std::string text;
      int status = 0;
      if (scheme == "1") {
        const auto rows = scheme1::sweep();
        text = format == "csv"    ? report::csv(rows)
               : format == "json" ? report::to_json(rows).dump(2) + "\n"
                                  : report::table(rows);
      } else if (scheme == "2") {
        const auto rows = scheme2::sweep(s2opt, seed.value_or(0));
        text = format == "csv"    ? report::csv(rows)
               : format == "json" ? report::to_json(rows).dump(2) + "\n"
                                  : report::table(rows);
        if (!report::all_agree(rows)) status = 1;
      } else {
        const auto t = full_table();
        text = format == "csv"    ? to_csv(t)
               : format == "json" ? report::to_json(t).dump(2) + "\n"
                                  : report::table(t);
      }
      const int w = detail::write_output(text, out_path, out, err);
      if (status) err << "error: scheme 2 disagrees with the classical oracle\n";
      return w ? w : status;
    }

    if (*exp) {
      const auto prize = parse_door(prize_s);
      const auto first = parse_door(first_s);
      if (!prize || !first) {
        err << "error: --prize and --first take a door 1-3\n";
        return 2;
      }
      Circuit c(1);
      if (scheme == "1") {
        c = scheme1::build(*prize, *first);
      } else {
        if (second_s.empty()) {
          err << "error: scheme 2 needs --second\n";
          return 2;
        }
        const auto second = parse_door(second_s);
        if (!second) {
          err << "error: --second takes a door 1-3\n";
          return 2;
        }
        if (*second == host_open(*prize, *first)) {
          err << "error: door " << index(*second) + 1 << " is opened by the host\n";
          return 2;
        }
        c = scheme2::build(*prize, *first, *second, s2opt);
      }
      return detail::write_output(to_text(c), out_path, out, err);
    }

    if (*serve) {
      service::Options opt;
      if (data_dir) opt.data_dir = *data_dir;
      service::Service svc(opt);
      service::HttpServer http(svc, static_dir);
      const auto a = service::resolve_address(addr);
      const int port = http.bind(a);
      if (port < 0) {
        err << "error: cannot bind " << a.host << ':' << a.port << '\n';
        return 1;
      }
      out << "listening on http://" << a.host << ':' << port << '\n' << std::flush;
      return http.serve() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::Validation ? 2 : 1;
  }
  return 2;
}

}  // namespace qmonty::cli
