#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "crautomata/crautomata.hpp"

namespace cra::cli {

namespace fs = std::filesystem;
using io::Json;

namespace detail {

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

inline Dfa load(const std::string& path) { return io::read_dfa(read_file(path)); }

inline std::size_t to_size(const std::string& s, const char* what) {
  auto v = io::detail::to_index(s);
  if (!v) throw UsageError(std::string(what) + " must be a non-negative integer, got '" + s + "'");
  return *v;
}

inline Json names_json(const Dfa& dfa, const StateSet& s) {
  Json j = Json::array();
  for (auto q : s) j.push_back(dfa.state_name(q));
  return j;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + std::to_string(v[i]);
  return out;
}

// "1,2,5": each token is matched against state names first, then read as a 0-based index.
inline StateSet parse_subset(const Dfa& dfa, const std::string& spec) {
  StateSet s(dfa.state_count());
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(0, tok.find_first_not_of(" \t"));
    tok.erase(tok.find_last_not_of(" \t") + 1);
    if (tok.empty()) continue;
    const auto& names = dfa.state_names();
    auto it = std::find(names.begin(), names.end(), tok);
    if (it != names.end()) {
      s.insert(static_cast<State>(it - names.begin()));
      continue;
    }
    auto idx = io::detail::to_index(tok);
    if (!idx || *idx >= dfa.state_count()) throw UsageError("unknown state '" + tok + "' in subset");
    s.insert(static_cast<State>(*idx));
  }
  if (s.empty()) throw UsageError("subset must be non-empty");
  return s;
}

struct Analysis {
  std::string file;
  bool ok = false;
  std::string error;
  bool cr = false;
  Outcome outcome = Outcome::failure;
  std::size_t terminal_step = 0;
  std::vector<std::string> witness;
};

inline Analysis analyze_file(const std::string& path) {
  Analysis a;
  a.file = path;
  try {
    auto dfa = load(path);
    auto d = decide_complete_reachability(dfa);
    a.cr = d.completely_reachable;
    a.outcome = d.gamma.outcome;
    a.terminal_step = d.gamma.terminal_step;
    if (!a.cr) {
      for (auto q : unreachable_witness(d.gamma, dfa)) a.witness.push_back(dfa.state_name(q));
    }
    a.ok = true;
  } catch (const std::exception& e) {
    a.error = e.what();
  }
  return a;
}

inline Json analysis_json(const Analysis& a, bool with_file) {
  Json j;
  if (with_file) j["file"] = a.file;
  if (!a.ok) {
    j["error"] = a.error;
    return j;
  }
  j["completely_reachable"] = a.cr;
  j["outcome"] = to_string(a.outcome);
  j["terminal_step"] = a.terminal_step;
  if (!a.cr) j["witness"] = a.witness;
  return j;
}

inline std::string witness_text(const std::vector<std::string>& w) {
  std::string out = "{";
  for (std::size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i];
  return out + "}";
}

inline void analysis_text(std::ostream& out, const Analysis& a) {
  if (!a.ok) {
    out << "error: " << a.error << '\n';
    return;
  }
  out << "completely reachable: " << (a.cr ? "yes" : "no") << '\n';
  out << "outcome: " << to_string(a.outcome) << '\n';
  out << "terminal step: " << a.terminal_step << '\n';
  if (!a.cr) out << "unreachable subset: " << witness_text(a.witness) << '\n';
}

inline Dfa generate(const std::string& family, const std::vector<std::string>& params,
                    std::uint64_t seed) {
  auto want = [&](std::size_t count) {
    if (params.size() != count) {
      throw UsageError("generate " + family + " takes " + std::to_string(count) + " parameter(s)");
    }
  };
  if (family == "cerny") {
    want(1);
    return gen::cerny(to_size(params[0], "N"));
  }
  if (family == "e") {
    want(2);
    return gen::e_family(to_size(params[0], "N"), to_size(params[1], "K"));
  }
  if (family == "eprime") {
    want(1);
    auto n = to_size(params[0], "N");
    if (n < 3) throw UsageError("eprime needs N >= 3");
    return gen::e_family(n, n - 1, true);
  }
  if (family == "random") {
    want(2);
    return gen::random_dfa(to_size(params[0], "N"), to_size(params[1], "M"), seed);
  }
  want(0);
  return gen::fixed_example(family);
}

}  // namespace detail

/// Runs one command line (without the program name). Returns the process exit code.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complete reachability analysis for finite automata", "cra"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t seed = 0;
  bool quiet = false;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--seed", seed, "Seed for random generation");
  app.add_flag("--quiet,-q", quiet, "Suppress normal output");

  auto* generate = app.add_subcommand("generate", "Write a generated automaton");
  std::string family;
  std::vector<std::string> params;
  std::string out_file;
  generate->add_option("family", family, "cerny N | e N K | eprime N | e5 | e12 | flipflop | random N M")
      ->required();
  generate->add_option("params", params, "Family parameters");
  generate->add_option("-o,--output", out_file, "Output file (default: stdout)");

  auto* analyze = app.add_subcommand("analyze", "Decide complete reachability");
  std::string path;
  std::size_t jobs = 1;
  analyze->add_option("path", path, "Automaton file or directory")->required();
  analyze->add_option("--jobs,-j", jobs, "Parallel analyses in directory mode")->check(CLI::PositiveNumber);

  auto* gamma = app.add_subcommand("gamma", "Build the Gamma hierarchy");
  std::string dot_dir;
  std::string json_file;
  gamma->add_option("file", path, "Automaton file")->required();
  gamma->add_option("--dot", dot_dir, "Directory for DOT output");
  gamma->add_option("--json", json_file, "File for JSON output");

  auto* reach = app.add_subcommand("reach", "Construct a word reaching a subset");
  std::string subset;
  reach->add_option("file", path, "Automaton file")->required();
  reach->add_option("--subset", subset, "Comma-separated states (names or 0-based indices)")->required();

  auto* sync = app.add_subcommand("sync", "Construct a reset word");
  sync->add_option("file", path, "Automaton file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force powerset and monoid checks");
  bool want_threshold = false;
  bool want_map = false;
  bool want_monoid = false;
  std::size_t max_n = oracle::default_max_states;
  oracle_cmd->add_option("file", path, "Automaton file")->required();
  auto* t_flag = oracle_cmd->add_flag("--threshold", want_threshold, "Exact reset threshold");
  auto* m_flag = oracle_cmd->add_flag("--reach-map", want_map, "Every reachable subset with a shortest word");
  auto* s_flag = oracle_cmd->add_flag("--monoid", want_monoid, "Transition monoid size");
  t_flag->excludes(m_flag)->excludes(s_flag);
  m_flag->excludes(s_flag);
  oracle_cmd->add_option("--max-n", max_n, "Refuse automata with more states");

  auto* bounds = app.add_subcommand("bounds", "Length bounds for the automaton's size");
  bounds->add_option("file", path, "Automaton file")->required();

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> argv_store{"cra"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const bool json = format == "json";
  std::ostringstream sink;
  std::ostream& o = quiet ? static_cast<std::ostream&>(sink) : out;

  try {
    if (generate->parsed()) {
      auto dfa = detail::generate(family, params, seed);
      auto text = json ? io::dfa_to_json(dfa).dump(2) + "\n" : io::serialize_dfa(dfa);
      if (out_file.empty()) {
        o << text;
      } else {
        detail::write_file(out_file, text);
      }
      return 0;
    }

    if (analyze->parsed()) {
      if (!fs::is_directory(path)) {
        auto a = detail::analyze_file(path);
        if (!a.ok) {
          err << "error: " << a.error << '\n';
          return 2;
        }
        if (json) {
          o << detail::analysis_json(a, false).dump(2) << '\n';
        } else {
          detail::analysis_text(o, a);
        }
        return a.cr ? 0 : 1;
      }
      std::vector<std::string> files;
      for (const auto& entry : fs::directory_iterator(path)) {
        if (entry.is_regular_file()) files.push_back(entry.path().string());
      }
      std::sort(files.begin(), files.end());
      std::vector<detail::Analysis> results(files.size());
      std::atomic<std::size_t> next{0};
      auto worker = [&] {
        for (auto i = next++; i < files.size(); i = next++) results[i] = detail::analyze_file(files[i]);
      };
      std::vector<std::thread> pool;
      for (std::size_t t = 1; t < std::min(jobs, files.size()); ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();

      int code = 0;
      Json all = Json::array();
      for (const auto& a : results) {
        if (!a.ok) {
          code = 2;
        } else if (!a.cr && code == 0) {
          code = 1;
        }
        if (json) {
          all.push_back(detail::analysis_json(a, true));
        } else {
          o << a.file << ": ";
          if (!a.ok) {
            o << "error: " << a.error << '\n';
          } else {
            o << (a.cr ? "yes" : "no") << ' ' << to_string(a.outcome) << " step " << a.terminal_step;
            if (!a.cr) o << " unreachable " << detail::witness_text(a.witness);
            o << '\n';
          }
        }
      }
      if (json) o << all.dump(2) << '\n';
      return code;
    }

    if (gamma->parsed()) {
      auto dfa = detail::load(path);
      auto result = build_gamma(dfa);
      if (!dot_dir.empty()) {
        fs::create_directories(dot_dir);
        for (const auto& level : result.levels) {
          detail::write_file(fs::path(dot_dir) / ("gamma_" + std::to_string(level.level) + ".dot"),
                             io::emit_level_dot(result, dfa, level.level));
        }
        detail::write_file(fs::path(dot_dir) / "forest.dot", io::emit_forest_dot(result, dfa));
      }
      if (!json_file.empty()) detail::write_file(json_file, io::gamma_to_json(result, dfa).dump(2) + "\n");
      if (json) {
        o << io::gamma_to_json(result, dfa).dump(2) << '\n';
      } else {
        o << "outcome: " << to_string(result.outcome) << '\n';
        o << "terminal step: " << result.terminal_step << '\n';
        for (const auto& level : result.levels) {
          const auto& vertices = result.forest.level(level.level);
          o << "level " << level.level << ": " << vertices.size() << " vertices, " << level.edges.size()
            << " edges\n";
          for (std::size_t v = 0; v < vertices.size(); ++v) {
            o << "  v" << v << " = " << format_set(dfa, vertices[v].leafage) << '\n';
          }
          for (const auto& e : level.edges) {
            o << "  v" << e.source << " -> v" << e.target;
            if (e.inherited) o << " inherited";
            if (e.forced_by) o << " forced by " << format_word(dfa, *e.forced_by);
            o << '\n';
          }
        }
      }
      return 0;
    }

    if (reach->parsed()) {
      auto dfa = detail::load(path);
      auto target = detail::parse_subset(dfa, subset);
      auto result = build_gamma(dfa);
      if (result.outcome != Outcome::success) {
        err << "error: automaton is not completely reachable\n";
        return 1;
      }
      auto r = reach_word(dfa, result, target);
      if (json) {
        Json j;
        j["subset"] = detail::names_json(dfa, target);
        j["word"] = io::word_to_json(dfa, r.word);
        j["length"] = r.word.size();
        Json steps = Json::array();
        for (const auto& s : r.steps) {
          steps.push_back({{"level", s.level},
                           {"source", detail::names_json(dfa, s.source)},
                           {"target", detail::names_json(dfa, s.target)},
                           {"word", io::word_to_json(dfa, s.word)},
                           {"dup_state", dfa.state_name(s.dup_state)}});
        }
        j["steps"] = std::move(steps);
        o << j.dump(2) << '\n';
      } else {
        o << "subset: " << format_set(dfa, target) << '\n';
        o << "word: " << format_word(dfa, r.word) << '\n';
        o << "length: " << r.word.size() << '\n';
        for (const auto& s : r.steps) {
          o << "  level " << s.level << ": " << format_set(dfa, s.source) << " <- "
            << format_set(dfa, s.target) << " via " << format_word(dfa, s.word) << " (dup "
            << dfa.state_name(s.dup_state) << ")\n";
        }
      }
      return 0;
    }

    if (sync->parsed()) {
      auto dfa = detail::load(path);
      auto r = reset_word(dfa);
      if (json) {
        Json j;
        j["word"] = io::word_to_json(dfa, r.word);
        j["length"] = r.length;
        j["halving_length"] = r.halving_length;
        j["compression_lengths"] = r.compression_lengths;
        j["cerny_bound"] = r.cerny;
        j["cubic_bound"] = r.cubic;
        j["meets_cerny"] = r.meets_cerny;
        j["meets_cubic"] = r.meets_cubic;
        o << j.dump(2) << '\n';
      } else {
        o << "reset word: " << format_word(dfa, r.word) << '\n';
        o << "length: " << r.length << '\n';
        o << "halving prefix length: " << r.halving_length << '\n';
        o << "compression lengths: " << detail::join(r.compression_lengths) << '\n';
        o << "cerny bound: " << r.cerny << (r.meets_cerny ? " (met)" : " (exceeded)") << '\n';
        o << "cubic bound: " << r.cubic << (r.meets_cubic ? " (met)" : " (exceeded)") << '\n';
      }
      return 0;
    }

    if (oracle_cmd->parsed()) {
      auto dfa = detail::load(path);
      const auto n = dfa.state_count();
      if (want_monoid) {
        auto all = oracle::transition_monoid(dfa, false);
        std::size_t singular = 0;
        for (const auto& e : all.elements) singular += e.transformation.defect() > 0 ? 1 : 0;
        if (json) {
          o << Json{{"monoid_size", all.size()}, {"singular_size", singular}}.dump(2) << '\n';
        } else {
          o << "monoid size: " << all.size() << '\n' << "singular part: " << singular << '\n';
        }
        return 0;
      }
      oracle::ReachMap map(dfa, max_n);
      if (want_threshold) {
        auto t = oracle::reset_threshold_exact(dfa, max_n);
        if (json) {
          Json j;
          j["reset_threshold"] = t ? Json(*t) : Json(nullptr);
          o << j.dump(2) << '\n';
        } else {
          o << (t ? std::to_string(*t) : std::string("none")) << '\n';
        }
        return 0;
      }
      if (want_map) {
        Json rows = Json::array();
        for (auto m : map.subsets()) {
          auto set = StateSet::from_mask(n, m);
          auto w = *map.word_for_mask(m);
          if (json) {
            rows.push_back({{"subset", detail::names_json(dfa, set)}, {"word", io::word_to_json(dfa, w)}});
          } else {
            o << format_set(dfa, set) << ' ' << format_word(dfa, w) << '\n';
          }
        }
        if (json) o << rows.dump(2) << '\n';
        return 0;
      }
      const std::size_t total = (std::size_t{1} << n) - 1;
      const bool cr = map.size() == total;
      if (json) {
        o << Json{{"completely_reachable", cr}, {"reachable_subsets", map.size()}, {"total_subsets", total}}
                 .dump(2)
          << '\n';
      } else {
        o << "completely reachable: " << (cr ? "yes" : "no") << '\n';
        o << "reachable subsets: " << map.size() << " of " << total << '\n';
      }
      return cr ? 0 : 1;
    }

    if (bounds->parsed()) {
      auto dfa = detail::load(path);
      const auto n = dfa.state_count();
      if (json) {
        Json j;
        j["states"] = n;
        j["cerny"] = cerny_bound(n);
        j["avoiding"] = n;
        j["halving"] = halving_bound(n);
        j["cubic"] = cubic_reset_bound(n);
        Json comp = Json::array();
        for (std::size_t k = 2; k <= n; ++k) comp.push_back({{"k", k}, {"bound", compression_bound(n, k)}});
        j["compression"] = std::move(comp);
        o << j.dump(2) << '\n';
      } else {
        o << "states: " << n << '\n';
        o << "cerny (n-1)^2: " << cerny_bound(n) << '\n';
        o << "avoiding word: " << n << '\n';
        o << "halving word: " << halving_bound(n) << '\n';
        o << "reset word (cubic): " << cubic_reset_bound(n) << '\n';
        for (std::size_t k = 2; k <= n; ++k) {
          o << "compress " << k << "-subset: " << compression_bound(n, k) << '\n';
        }
      }
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  err << app.help();
  return 2;
}

}  // namespace cra::cli
