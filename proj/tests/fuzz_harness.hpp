#pragma once

// Mutation fuzzing of the command-line front end. Each run copies a corpus
// entry into a scratch directory, damages one input file (or the command
// line) and runs the command in-process. Any exit code other than 0, 2 or 3
// or an escaping exception is a failure.

#include <array>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dtop/cli.hpp"
#include "dtop/errors.hpp"
#include "dtop/io.hpp"

namespace fuzz {

namespace fs = std::filesystem;

// Entries whose inputs are files and which run in a few milliseconds.
inline const std::vector<std::string>& seed_entries() {
  static const std::vector<std::string> e = {
      "cech_circle",   "chi_identity", "chi_reflection", "classify_s2",   "difference_reflection",
      "disk_rel_boundary", "error_map", "error_parse",   "filtration_p2", "lim1_explicit",
      "lim1_identity", "lim1_z8_times2", "lim1_z_times2", "metric_three_eighths", "nerve_circle3",
      "nerve_circle6", "obstruct_disk", "obstruct_disk_constant", "phantom_circle", "rp2_h1_mod2",
      "rp2_h2",        "snf_small",    "theta_circle",   "torus_h1",      "torus_h2"};
  return e;
}

struct Stats {
  std::size_t runs = 0;
  std::array<std::size_t, 4> by_exit{};  // exits 0..3
  std::size_t bad = 0;                   // other exit codes or escaping exceptions
  std::string first_bad;
  double seconds = 0;
  double slowest = 0;
};

inline std::string mutate(const std::string& text, std::mt19937_64& rng) {
  static const std::vector<std::string> tokens = {
      "0", "-1", "1", "2", "7", "999999", "1000001", "-0", "+3", "x", ":", "#", "->", "U0:", "level:",
      "123456789012345678901234567890123456789012345678901234567890123", "generators: 300", "size: 300 300"};
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  if (lines.empty()) lines.push_back("");
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % std::max<std::size_t>(n, 1)); };
  int count = 1 + static_cast<int>(rng() % 3);
  for (int m = 0; m < count; ++m) {
    std::size_t li = pick(lines.size());
    std::string& l = lines[li];
    switch (rng() % 8) {
      case 0:  // flip a byte
        if (!l.empty()) l[pick(l.size())] = static_cast<char>(32 + rng() % 95);
        break;
      case 1:
        if (lines.size() > 1) lines.erase(lines.begin() + static_cast<long>(li));
        break;
      case 2:
        lines.insert(lines.begin() + static_cast<long>(li), l);
        break;
      case 3: {  // replace a whitespace-separated token
        std::istringstream in(l);
        std::vector<std::string> ws;
        std::string w;
        while (in >> w) ws.push_back(w);
        if (ws.empty()) break;
        ws[pick(ws.size())] = tokens[pick(tokens.size())];
        std::string joined;
        for (const auto& t : ws) joined += (joined.empty() ? "" : " ") + t;
        l = joined;
        break;
      }
      case 4:
        l.resize(pick(l.size() + 1));
        break;
      case 5:
        l.insert(pick(l.size() + 1), " " + tokens[pick(tokens.size())] + " ");
        break;
      case 6:
        std::swap(l, lines[pick(lines.size())]);
        break;
      default:  // bump a digit
        for (char& c : l)
          if (c >= '0' && c <= '9' && rng() % 3 == 0) c = static_cast<char>('0' + rng() % 10);
        break;
    }
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Stats run(const fs::path& corpus, std::size_t iterations, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Stats st;
  fs::path scratch = fs::temp_directory_path() / ("dtop_fuzz_" + std::to_string(seed) + "_" +
                                                  std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
  fs::create_directories(scratch);

  struct Entry {
    std::string cmd;
    std::vector<std::pair<std::string, std::string>> files;
  };
  std::vector<Entry> entries;
  for (const auto& name : seed_entries()) {
    Entry e;
    e.cmd = slurp(corpus / name / "cmd");
    for (const auto& f : fs::directory_iterator(corpus / name)) {
      std::string fn = f.path().filename().string();
      if (fn != "cmd" && fn != "expected.machine") e.files.emplace_back(fn, slurp(f.path()));
    }
    entries.push_back(std::move(e));
  }

  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t it = 0; it < iterations; ++it) {
    const Entry& e = entries[rng() % entries.size()];
    fs::path dir = scratch / std::to_string(it % 8);
    fs::remove_all(dir);
    fs::create_directories(dir);
    std::string cmd = e.cmd;
    std::size_t target = e.files.empty() || rng() % 5 == 0 ? e.files.size() : rng() % e.files.size();
    std::string mutated;
    for (std::size_t i = 0; i < e.files.size(); ++i) {
      std::ofstream out(dir / e.files[i].first, std::ios::binary);
      if (i == target) mutated = e.files[i].first + ":\n" + mutate(e.files[i].second, rng);
      out << (i == target ? mutated.substr(mutated.find('\n') + 1) : e.files[i].second);
    }
    if (target == e.files.size()) cmd = mutate(cmd, rng);

    std::ostringstream out, err;
    int code = -1;
    auto s = std::chrono::steady_clock::now();
    try {
      bool split_ok = true;
      std::vector<std::string> args;
      try {
        args = dtop::cli::split_command_line(cmd);
      } catch (const dtop::ParseError&) {
        split_ok = false;  // the corpus runner reports this as a parse error
      }
      code = split_ok ? dtop::cli::run(args, out, err, dir) : dtop::cli::exit_invalid;
    } catch (const std::exception& ex) {
      code = -1;
      err << "escaped: " << ex.what();
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - s).count();
    st.slowest = std::max(st.slowest, dt);
    ++st.runs;
    if (code == 0 || code == 2 || code == 3) {
      ++st.by_exit[static_cast<std::size_t>(code)];
    } else {
      if (st.bad == 0) st.first_bad = "iteration " + std::to_string(it) + " `" + cmd + "`: " + err.str() + mutated;
      ++st.bad;
    }
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fs::remove_all(scratch);
  return st;
}

}  // namespace fuzz
