// Copyright 2026 The Storyboard Compiler Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sbc/driver.h"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "storyboard/codegen.h"
#include "storyboard/formatter.h"
#include "storyboard/infoflow.h"
#include "storyboard/interpreter.h"
#include "storyboard/parser.h"
#include "storyboard/rulecheck.h"
#include "storyboard/scenario.h"
#include "storyboard/validate.h"

namespace sbc {
namespace {

using storyboard::Diagnostic;
using storyboard::Severity;

constexpr int kDefaultStepBudget = 100;

struct Options {
  std::string command;
  std::vector<std::string> inputs;
  std::string scenario;
  std::string out_dir;
  std::string format = "human";
  bool fail_on_warnings = false;
  bool in_place = false;
  int steps = kDefaultStepBudget;
};

int line_of(const Finding& f) { return f.diagnostic.span ? f.diagnostic.span->line : 0; }
int col_of(const Finding& f) { return f.diagnostic.span ? f.diagnostic.span->column : 0; }

std::string witness_text(const std::vector<storyboard::QualifiedId>& witness) {
  std::string out;
  for (std::size_t i = 0; i < witness.size(); ++i) {
    if (i > 0) out += " -> ";
    out += witness[i].str();
  }
  return out;
}

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool color_enabled() {
  const char* v = std::getenv("SBC_COLOR");
  return v != nullptr && std::string(v) == "1";
}

std::vector<Finding> tag(const std::string& file, const std::vector<Diagnostic>& diagnostics) {
  std::vector<Finding> out;
  for (const Diagnostic& d : diagnostics) out.push_back({file, d});
  return out;
}

// Outcome of processing one input file.
struct FileResult {
  std::vector<Finding> findings;
  bool failure = false;  // IO or parse failure
};

class Session {
 public:
  Session(const Options& opts, std::ostream& out, std::ostream& err)
      : opts_(opts),
        out_(out),
        err_(err),
        format_(opts.format == "machine" ? OutputFormat::kMachine : OutputFormat::kHuman) {}

  int run() {
    std::vector<Finding> findings;
    bool failure = false;
    for (const std::string& input : opts_.inputs) {
      FileResult r = process(input);
      failure |= r.failure;
      findings.insert(findings.end(), r.findings.begin(), r.findings.end());
    }
    std::ostream& diag_stream = opts_.command == "simulate" || opts_.command == "fmt" ? err_ : out_;
    diag_stream << emit_diagnostics(findings, format_, format_ == OutputFormat::kHuman && color_enabled());
    if (failure) return kExitFailure;
    const bool errors = std::any_of(findings.begin(), findings.end(),
                                    [](const Finding& f) { return f.diagnostic.severity == Severity::kError; });
    if (errors || runtime_failed_) return kExitFindings;
    if (opts_.fail_on_warnings && !findings.empty()) return kExitFindings;
    return kExitClean;
  }

 private:
  FileResult process(const std::string& path) {
    FileResult result;
    std::optional<std::string> text = read_file(path);
    if (!text) {
      result.findings.push_back({path, storyboard::make_error("IO001", "cannot read " + path)});
      result.failure = true;
      return result;
    }
    storyboard::ParseOutcome parsed = storyboard::parse(*text, path);
    if (!parsed.ok()) {
      result.findings = tag(path, parsed.errors);
      result.failure = true;
      return result;
    }
    const storyboard::AppModel& model = *parsed.model;

    if (opts_.command == "fmt") {
      std::string formatted = storyboard::format(model);
      if (opts_.in_place) {
        if (formatted != *text) {
          std::ofstream o(path, std::ios::binary | std::ios::trunc);
          o << formatted;
          if (!o) {
            result.findings.push_back({path, storyboard::make_error("IO001", "cannot write " + path)});
            result.failure = true;
          }
        }
      } else {
        out_ << formatted;
      }
      return result;
    }

    std::vector<Diagnostic> wf = storyboard::validate(model);
    result.findings = tag(path, wf);
    if (opts_.command == "check" || storyboard::has_errors(wf)) return result;

    if (opts_.command == "generate") {
      storyboard::Generation gen = storyboard::generate_all(model);
      auto tagged = tag(path, gen.findings);
      result.findings.insert(result.findings.end(), tagged.begin(), tagged.end());
      if (!gen.ok) return result;
      try {
        storyboard::write_units(opts_.out_dir, gen.units);
      } catch (const std::exception& e) {
        result.findings.push_back({path, storyboard::make_error("IO001", e.what())});
        result.failure = true;
      }
      return result;
    }

    auto flow = tag(path, storyboard::flow_diagnostics(storyboard::run_flow_analysis(model)));
    auto rules = tag(path, storyboard::check_all(model).findings);
    result.findings.insert(result.findings.end(), flow.begin(), flow.end());
    result.findings.insert(result.findings.end(), rules.begin(), rules.end());

    if (opts_.command == "simulate") simulate(model, result);
    return result;
  }

  void simulate(const storyboard::AppModel& model, FileResult& result) {
    std::optional<std::string> text = read_file(opts_.scenario);
    if (!text) {
      result.findings.push_back({opts_.scenario, storyboard::make_error("IO001", "cannot read " + opts_.scenario)});
      result.failure = true;
      return;
    }
    storyboard::ScenarioOutcome sc = storyboard::parse_scenario(*text, opts_.scenario);
    if (!sc.ok()) {
      auto tagged = tag(opts_.scenario, sc.errors);
      result.findings.insert(result.findings.end(), tagged.begin(), tagged.end());
      result.failure = true;
      return;
    }
    storyboard::Trace trace = storyboard::run(model, *sc.scenario, opts_.steps);
    print_trace(trace);
    if (trace.error) runtime_failed_ = true;
  }

  void print_trace(const storyboard::Trace& trace) {
    auto store_json = [](const storyboard::Store& store) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& [id, value] : store) {
        nlohmann::json taint = nlohmann::json::array();
        for (const auto& t : value.taint) taint.push_back(t.str());
        arr.push_back({{"id", id.str()}, {"payload", value.payload}, {"taint", taint}});
      }
      return arr;
    };
    auto store_text = [&](const storyboard::Store& store, const std::string& indent) {
      for (const auto& [id, value] : store) {
        out_ << indent << id.str() << " = " << storyboard::quote(value.payload);
        if (!value.taint.empty()) {
          out_ << " taint";
          for (const auto& t : value.taint) out_ << " " << t.str();
        }
        out_ << "\n";
      }
    };
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
      const storyboard::TraceStep& s = trace.steps[i];
      if (format_ == OutputFormat::kMachine) {
        nlohmann::json rec = {{"step", i},
                              {"rule", s.rule},
                              {"screen", s.config.current ? nlohmann::json(*s.config.current) : nlohmann::json()},
                              {"sigma", store_json(s.config.sigma)}};
        out_ << rec.dump() << "\n";
      } else {
        out_ << "step " << i << " " << s.rule << " " << s.config.current.value_or("<terminated>") << "\n";
        store_text(s.config.sigma, "  ");
      }
    }
    if (!trace.outbound.empty()) {
      if (format_ == OutputFormat::kMachine) {
        out_ << nlohmann::json({{"outbound", store_json(trace.outbound)}}).dump() << "\n";
      } else {
        out_ << "outbound\n";
        store_text(trace.outbound, "  ");
      }
    }
    if (trace.error) {
      if (format_ == OutputFormat::kMachine) {
        out_ << nlohmann::json({{"error", *trace.error}}).dump() << "\n";
      } else {
        out_ << "error: " << *trace.error << "\n";
      }
    }
  }

  const Options& opts_;
  std::ostream& out_;
  std::ostream& err_;
  OutputFormat format_;
  bool runtime_failed_ = false;
};

}  // namespace

std::string emit_diagnostics(std::vector<Finding> findings, OutputFormat format, bool color) {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    if (a.file != b.file) return a.file < b.file;
    if (line_of(a) != line_of(b)) return line_of(a) < line_of(b);
    return a.diagnostic.code < b.diagnostic.code;
  });
  std::ostringstream os;
  for (const Finding& f : findings) {
    const Diagnostic& d = f.diagnostic;
    const std::string severity(storyboard::to_string(d.severity));
    if (format == OutputFormat::kMachine) {
      nlohmann::json witness = nlohmann::json::array();
      for (const auto& id : d.witness) witness.push_back(id.str());
      nlohmann::json rec = {{"severity", severity}, {"code", d.code},     {"file", f.file},
                            {"line", line_of(f)},   {"col", col_of(f)},   {"message", d.message},
                            {"witness", witness}};
      os << rec.dump() << "\n";
      continue;
    }
    if (color) {
      os << (d.severity == Severity::kError ? "\x1b[31m" : "\x1b[33m") << severity << "\x1b[0m";
    } else {
      os << severity;
    }
    os << " " << d.code << " " << f.file << ":" << line_of(f) << ":" << col_of(f) << " " << d.message << "\n";
    if (!d.witness.empty()) os << "    " << witness_text(d.witness) << "\n";
  }
  return os.str();
}

int run_cli(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"Storyboard compiler: check, analyze, simulate and generate storyboards", "sbc"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("inputs", opts.inputs, "Storyboard files (.sbd)")->required();
    cmd->add_option("--format", opts.format, "Diagnostic format")
        ->check(CLI::IsMember({"human", "machine"}));
    cmd->add_flag("--fail-on-warnings", opts.fail_on_warnings, "Exit 1 when warnings are reported");
  };
  CLI::App* check = app.add_subcommand("check", "Parse and validate");
  add_common(check);
  CLI::App* analyze = app.add_subcommand("analyze", "Validate, then run flow analysis and rule checks");
  add_common(analyze);
  CLI::App* simulate = app.add_subcommand("simulate", "Analyze, then run the storyboard under a scenario");
  add_common(simulate);
  simulate->add_option("--scenario", opts.scenario, "Scenario file (.scn)")->required();
  simulate->add_option("--steps", opts.steps, "Step budget")->check(CLI::PositiveNumber);
  CLI::App* generate = app.add_subcommand("generate", "Analyze, then emit skeleton code");
  add_common(generate);
  generate->add_option("-o,--out", opts.out_dir, "Output directory")->required();
  CLI::App* fmt = app.add_subcommand("fmt", "Print canonical source");
  add_common(fmt);
  fmt->add_flag("-i,--in-place", opts.in_place, "Rewrite files instead of printing");

  std::vector<const char*> raw;
  raw.reserve(argv.size());
  for (const std::string& a : argv) raw.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(raw.size()), raw.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitClean;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitClean;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFailure;
  }
  opts.command = app.get_subcommands().front()->get_name();
  try {
    return Session(opts, out, err).run();
  } catch (const std::exception& e) {
    err << "sbc: internal error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace sbc
