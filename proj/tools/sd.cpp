// sd: command-line front end.
//
// Exit status: 0 success, 1 invariant violation or bad argument, 2 parse
// error, 3 operation not defined for the data kind.

#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <supdeg/report.hpp>
#include <supdeg/service.hpp>
#include <supdeg/session.hpp>

using namespace supdeg;

namespace {

struct Input {
  std::string path;
  std::string format = "auto";
  std::optional<double> phi_star;
  std::string weights;
};

void add_input(CLI::App* cmd, Input& in, bool with_weights = true) {
  cmd->add_option("file", in.path, "Data file (CSV or JSON) or saved session")->required()->check(CLI::ExistingFile);
  cmd->add_option("--format", in.format, "Input format (auto, sd-csv, partial-csv, sd-json, partial-json, ...)");
  cmd->add_option("--phi-star", in.phi_star, "Bound on superiority degrees for partial data");
  if (with_weights) cmd->add_option("--weights", in.weights, "Weights JSON mapping alternatives to λ");
}

std::string fresh_id() {
  std::random_device rd;
  std::ostringstream ss;
  ss << std::hex << ((static_cast<unsigned long long>(rd()) << 32) | rd());
  return ss.str();
}

Session open(const Input& in) {
  const auto text = read_file(in.path);
  auto format = parse_format_name(in.format);
  if (format == Format::automatic) format = detect_format(text);
  if (format == Format::relation_json || format == Format::weights_json)
    throw WrongDataKind(std::string("'") + in.path + "' holds " + format_name(format) + ", not analysable data");
  if (format == Format::session_json) {
    if (!in.weights.empty()) throw InvalidArgument("a saved session already fixes its weights");
    return load_session(text, format, {});
  }
  auto loaded = load_data(text, format, in.phi_star);
  if (!in.weights.empty()) loaded.weights = weights_from_json(parse_json(read_file(in.weights)), base_of(loaded.data));
  return Session(fresh_id(), std::move(loaded.data), std::move(loaded.weights));
}

Session open_saved(const std::string& path) {
  const auto text = read_file(path);
  if (detect_format(text) != Format::session_json)
    throw InvalidArgument("'" + path + "' is not a saved session; create one with `sd session`");
  return load_session(text, Format::session_json, {});
}

void print(const json& j) { std::cout << dump(j); }

json pick(const json& report, std::initializer_list<const char*> keys) {
  json out = {{"schema", kSchemaVersion}, {"kind", report.at("kind")}};
  for (const char* k : keys)
    if (report.contains(k)) out[k] = report.at(k);
  return out;
}

std::vector<double> parse_levels(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto v = detail::parse_real(detail::trim(item));
    if (!v) throw ParseError("level '" + item + "' is not a number");
    out.push_back(*v);
  }
  return out;
}

std::pair<std::string, std::string> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw InvalidArgument("--pair expects x,y");
  return {detail::trim(text.substr(0, comma)), detail::trim(text.substr(comma + 1))};
}

const BallotSet& ballots_of(const Session& s) {
  const auto* b = std::get_if<BallotSet>(&s.current());
  if (!b) throw WrongDataKind(std::string("expected ballots, found ") + kind_name(s.kind()) + " data");
  return *b;
}

void require_kind(const Session& s, std::initializer_list<DataKind> kinds, const char* what) {
  for (auto k : kinds)
    if (s.kind() == k) return;
  throw WrongDataKind(std::string(what) + " is not defined for " + kind_name(s.kind()) + " data");
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const WrongDataKind*>(&e)) return 3;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Superiority-degree decision analysis"};
  app.require_subcommand(1);

  Input in;

  auto* check = app.add_subcommand("check", "Validate a file and report class flags");
  add_input(check, in, false);

  auto* relation = app.add_subcommand("relation", "Decompose a relation and extract its core");
  relation->add_option("file", in.path, "Relation JSON")->required()->check(CLI::ExistingFile);

  auto* rank = app.add_subcommand("rank", "Utilities and ranking");
  add_input(rank, in);

  auto* ladder_cmd = app.add_subcommand("ladder", "Level relations and their cores");
  add_input(ladder_cmd, in);
  std::string levels;
  ladder_cmd->add_option("--levels", levels, "Comma-separated levels; default is every rung");

  auto* group = app.add_subcommand("group", "Group decisions from expert ballots");
  add_input(group, in);
  std::string group_action;
  double group_level_value = 0.0;
  group->add_option("action", group_action, "tally | majority | copeland | level")
      ->required()
      ->check(CLI::IsMember({"tally", "majority", "copeland", "level"}));
  auto* level_opt = group->add_option("-l,--l", group_level_value, "Level for the `level` action");

  auto* interval = app.add_subcommand("interval", "Utility intervals for incomplete data");
  add_input(interval, in);
  std::string interval_action;
  interval->add_option("action", interval_action, "rank | missing | suggest")
      ->required()
      ->check(CLI::IsMember({"rank", "missing", "suggest"}));

  auto* session_cmd = app.add_subcommand("session", "Start a session file from data");
  add_input(session_cmd, in);
  std::string out_path;
  session_cmd->add_option("-o,--out", out_path, "Where to write the session")->required();

  auto* report = app.add_subcommand("report", "Full analysis of data or a session");
  add_input(report, in);

  std::string pair_text;
  double value = 0.0;
  auto* refine_cmd = app.add_subcommand("refine", "Record a comparison in a session");
  refine_cmd->add_option("session", in.path, "Session file, updated in place")->required()->check(CLI::ExistingFile);
  refine_cmd->add_option("--pair", pair_text, "Pair x,y")->required();
  refine_cmd->add_option("--value", value, "Superiority degree of x over y")->required();

  std::string mark_name;
  double mark_level = 0.0;
  auto* bookmark_cmd = app.add_subcommand("bookmark", "Name a level in a session");
  bookmark_cmd->add_option("session", in.path, "Session file, updated in place")->required()->check(CLI::ExistingFile);
  bookmark_cmd->add_option("--name", mark_name, "Bookmark name")->required();
  bookmark_cmd->add_option("--level", mark_level, "Level ℓ ≥ 0")->required();

  std::string convert_to;
  auto* convert = app.add_subcommand("convert", "Rewrite data in another format");
  add_input(convert, in, false);
  convert->add_option("--to", convert_to, "Target format")->required();
  convert->add_option("-o,--out", out_path, "Output file; default stdout");

  int port = 8080;
  std::string host = "127.0.0.1";
  std::string static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP JSON API");
  serve_cmd->add_option("--port", port, "Port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Address to bind");
  serve_cmd->add_option("--static", static_dir, "Directory of console files to serve")->check(CLI::ExistingDirectory);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*check) {
      const auto text = read_file(in.path);
      auto format = parse_format_name(in.format);
      if (format == Format::automatic) format = detect_format(text);
      if (format == Format::relation_json) {
        print(relation_report(relation_from_json(parse_json(text))));
      } else {
        const auto s = open(in);
        auto r = analyze(s);
        print(pick(r, {"alternatives", "classes", "phi_star", "absent_pairs", "complete", "warnings"}));
      }
    } else if (*relation) {
      print(relation_report(relation_from_json(parse_json(read_file(in.path)))));
    } else if (*rank) {
      const auto r = analyze(open(in));
      print(pick(r, {"weights", "utilities", "potential", "ranking", "convolution", "intervals", "interval_order",
                     "group", "warnings"}));
    } else if (*ladder_cmd) {
      const auto s = open(in);
      if (levels.empty()) {
        print(ladder_report(s));
      } else {
        json cuts = json::array();
        for (double l : parse_levels(levels)) cuts.push_back(ladder_report(s, l).at("rung"));
        print({{"schema", kSchemaVersion}, {"kind", kind_name(s.kind())}, {"rungs", cuts}});
      }
    } else if (*group) {
      const auto s = open(in);
      ballots_of(s);
      const auto r = analyze(s);
      if (group_action == "tally") {
        print(pick(r, {"alternatives", "group", "abstention"}));
      } else {
        require_kind(s, {DataKind::panel}, group_action.c_str());
        const auto& g = r.at("group");
        json out = {{"schema", kSchemaVersion}, {"kind", r.at("kind")}, {"warnings", r.at("warnings")}};
        if (group_action == "majority") {
          out["majority"] = g.at("majority");
        } else if (group_action == "copeland") {
          out["copeland"] = g.at("copeland");
        } else {
          if (level_opt->count() == 0) throw InvalidArgument("`group level` needs --l");
          out["rung"] = ladder_report(s, group_level_value).at("rung");
          out["group_isd"] = g.at("group_isd");
        }
        print(out);
      }
    } else if (*interval) {
      const auto s = open(in);
      if (interval_action == "suggest") {
        auto out = suggestion_json(s);
        out["schema"] = kSchemaVersion;
        print(out);
      } else {
        require_kind(s, {DataKind::partial, DataKind::abstention}, "interval analysis");
        const auto r = analyze(s);
        if (interval_action == "rank")
          print(pick(r, {"alternatives", "intervals", "interval_order", "utilities"}));
        else
          print(pick(r, {"missing_info", "absent_pairs"}));
      }
    } else if (*session_cmd) {
      const auto s = open(in);
      write_file(out_path, s.save());
      print({{"schema", kSchemaVersion}, {"id", s.id()}, {"kind", kind_name(s.kind())}, {"path", out_path}});
    } else if (*report) {
      print(analyze(open(in)));
    } else if (*refine_cmd) {
      auto s = open_saved(in.path);
      const auto [x, y] = parse_pair(pair_text);
      s.refine(x, y, value);
      write_file(in.path, s.save());
      const auto r = analyze(s);
      print(pick(r, {"intervals", "missing_info", "complete", "suggestion", "utilities"}));
    } else if (*bookmark_cmd) {
      auto s = open_saved(in.path);
      s.bookmark(mark_name, mark_level);
      write_file(in.path, s.save());
      print(pick(analyze(s), {"bookmarks"}));
    } else if (*convert) {
      const auto text = read_file(in.path);
      auto from = parse_format_name(in.format);
      if (from == Format::automatic) from = detect_format(text);
      const auto to = parse_format_name(convert_to);
      std::string out;
      if (from == Format::relation_json && to == Format::relation_json) {
        out = dump(relation_to_json(relation_from_json(parse_json(text))));
      } else if (from == Format::session_json && to == Format::session_json) {
        out = load_session(text, from, {}).save();
      } else {
        const auto loaded = load_data(text, from, in.phi_star);
        out = save_data(loaded.data, to, loaded.weights);
      }
      if (out_path.empty())
        std::cout << out;
      else
        write_file(out_path, out);
    } else if (*serve_cmd) {
      Service service;
      httplib::Server server;
      mount(server, service, static_dir);
      if (port == 0) {
        port = server.bind_to_any_port(host);
        if (port < 0) throw InvalidArgument("cannot bind " + host);
        std::cout << "listening on http://" << host << ":" << port << std::endl;
        server.listen_after_bind();
      } else {
        std::cout << "listening on http://" << host << ":" << port << std::endl;
        if (!server.listen(host, port)) throw InvalidArgument("cannot listen on " + host + ":" + std::to_string(port));
      }
    }
  } catch (const Error& e) {
    std::cerr << "sd: " << e.what() << "\n";
    return exit_code(e);
  }
  return 0;
}
