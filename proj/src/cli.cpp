#include "wk/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <optional>
#include <sstream>

#include "wk/format.hpp"
#include "wk/lang.hpp"
#include "wk/model.hpp"
#include "wk/sim.hpp"
#include "wk/transform.hpp"

namespace wk {

namespace {

using nlohmann::json;

constexpr int kExitAccept = 0;
constexpr int kExitReject = 1;
constexpr int kExitError = 2;

std::string display_word(const std::string& w) { return w.empty() ? "_" : w; }

std::optional<std::string> slurp(const std::string& path, std::ostream& err) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "error: cannot open '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void print_errors(const std::string& path, const ParseResult& result, std::ostream& err) {
    for (const auto& e : result.errors) {
        err << path;
        if (e.line) {
            err << ':' << e.line;
            if (e.column) err << ':' << e.column;
        }
        err << ": " << e.message << '\n';
    }
}

std::optional<ParsedMachine> load(const std::string& path, std::ostream& err) {
    auto text = slurp(path, err);
    if (!text) return std::nullopt;
    ParseResult result = parse(*text);
    if (!result.ok()) {
        print_errors(path, result, err);
        return std::nullopt;
    }
    return std::move(*result.machine);
}

std::string rule_text_two_way(const TwoWayMachine& m, std::size_t rule) {
    return to_text(m.transitions.at(rule));
}

std::string rule_text_one_way(const OneWayMachine& m, std::size_t rule) {
    return to_text(m.transitions.at(rule));
}

template <typename RuleText>
json report_to_json(const RunReport& report, const std::string& word,
                    const std::string& machine, RuleText rule_text) {
    json j;
    j["verdict"] = std::string(outcome_name(report.verdict.outcome));
    j["reason"] = report.verdict.reason
                      ? json(std::string(reject_reason_name(*report.verdict.reason)))
                      : json(nullptr);
    j["word"] = word;
    j["machine"] = machine;
    j["explored_configs"] = report.explored_total;
    json trace = json::array();
    for (const auto& s : report.trace) {
        json row;
        row["state"] = s.after.state;
        row["upper_pos"] = s.after.upper_pos;
        row["lower_pos"] = s.after.lower_pos;
        row["rule"] = rule_text(s.rule);
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    return j;
}

void print_trace(const RunReport& report, const TwoWayMachine& m, std::ostream& out) {
    out << "(" << m.initial << ",0,0)\n";
    for (const auto& s : report.trace) {
        out << "  --[" << rule_text_two_way(m, s.rule) << "]--> (" << s.after.state << ","
            << s.after.upper_pos << "," << s.after.lower_pos << ")\n";
    }
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
    auto text = slurp(path, err);
    if (!text) return kExitError;
    ParseResult raw = parse_raw(*text);
    if (!raw.machine) {
        print_errors(path, raw, err);
        return kExitError;
    }
    std::vector<Violation> violations = raw.machine->two_way()
                                            ? validate(raw.machine->as_two_way())
                                            : validate(raw.machine->as_one_way());
    if (violations.empty()) {
        out << "valid\n";
        return kExitAccept;
    }
    for (const auto& v : violations) {
        if (v.transition && *v.transition < raw.machine->transition_lines.size())
            out << "line " << raw.machine->transition_lines[*v.transition] << ": ";
        out << v.message << '\n';
    }
    return kExitError;
}

int cmd_classify(const std::string& path, std::ostream& out, std::ostream& err) {
    auto parsed = load(path, err);
    if (!parsed) return kExitError;
    if (!parsed->two_way()) {
        err << "error: classify requires a two-way machine\n";
        return kExitError;
    }
    const auto& m = parsed->as_two_way();
    const auto flags = classify_subclass(m);
    auto yesno = [](bool b) { return b ? "yes" : "no"; };
    out << "stateless: " << yesno(flags.stateless) << '\n';
    out << "all-final: " << yesno(flags.all_final) << '\n';
    out << "simple: " << yesno(flags.simple) << '\n';
    out << "1-limited: " << yesno(flags.one_limited) << '\n';
    out << "deterministic (syntactic check): "
        << yesno(is_deterministic_two_way(m).deterministic) << '\n';
    for (std::size_t i = 0; i < m.transitions.size(); ++i)
        out << "rule " << i << ": " << to_text(m.transitions[i]) << "  class "
            << static_cast<int>(classify_transition(m.transitions[i])) << '\n';
    return kExitAccept;
}

int cmd_run(const std::string& path, const std::string& word, bool trace, bool as_json,
            std::ostream& out, std::ostream& err) {
    auto parsed = load(path, err);
    if (!parsed) return kExitError;
    try {
        RunReport report;
        if (parsed->two_way()) {
            const auto& m = parsed->as_two_way();
            report = trace ? trace_deterministic(m, word) : run_two_way(m, word);
            if (as_json) {
                out << report_to_json(report, word, path,
                                      [&](std::size_t r) { return rule_text_two_way(m, r); })
                           .dump(2)
                    << '\n';
            } else {
                out << (report.verdict.accepted() ? "ACCEPT" : "REJECT") << '\n';
                if (trace) {
                    print_trace(report, m, out);
                    if (report.verdict.reason)
                        out << "reason: " << reject_reason_name(*report.verdict.reason)
                            << '\n';
                }
            }
        } else {
            if (trace) {
                err << "error: --trace is only available for two-way machines\n";
                return kExitError;
            }
            const auto& m = parsed->as_one_way();
            report = run_one_way(m, word);
            if (as_json) {
                out << report_to_json(report, word, path,
                                      [&](std::size_t r) { return rule_text_one_way(m, r); })
                           .dump(2)
                    << '\n';
            } else {
                out << (report.verdict.accepted() ? "ACCEPT" : "REJECT") << '\n';
            }
        }
        return report.verdict.accepted() ? kExitAccept : kExitReject;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_transform(const std::string& path, const std::string& out_path, bool explain,
                  std::ostream& out, std::ostream& err) {
    auto parsed = load(path, err);
    if (!parsed) return kExitError;
    if (!parsed->two_way()) {
        err << "error: the all-final transformation applies to two-way machines\n";
        return kExitError;
    }
    try {
        const auto& m = parsed->as_two_way();
        AllFinalResult result = to_all_final(m);
        if (explain) err << explain_construction(m).to_text();
        std::string text = serialize(result.machine);
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file) {
                err << "error: cannot write '" << out_path << "'\n";
                return kExitError;
            }
            file << text;
        }
        return kExitAccept;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_equiv(const std::string& path1, const std::string& path2, std::size_t max_len,
              bool force, bool as_json, std::ostream& out, std::ostream& err) {
    auto p1 = load(path1, err);
    auto p2 = load(path2, err);
    if (!p1 || !p2) return kExitError;
    if (p1->two_way() != p2->two_way()) {
        err << "error: cannot compare a one-way machine with a two-way machine\n";
        return kExitError;
    }
    try {
        SweepOptions options;
        if (force) {
            err << "warning: enumeration cap overridden\n";
            options.length_cap = max_len;
        }
        EquivalenceReport report =
            p1->two_way()
                ? equivalent_up_to(p1->as_two_way(), p2->as_two_way(), max_len, options)
                : equivalent_up_to(p1->as_one_way(), p2->as_one_way(), max_len, options);
        if (as_json) {
            json j;
            j["equivalent"] = report.equivalent;
            j["counterexample"] =
                report.counterexample ? json(*report.counterexample) : json(nullptr);
            j["max_len"] = report.max_len;
            j["checked"] = report.checked;
            out << j.dump(2) << '\n';
        } else if (report.equivalent) {
            out << "equivalent up to length " << report.max_len << " (" << report.checked
                << " words checked)\n";
        } else {
            out << "not equivalent: '" << display_word(*report.counterexample)
                << "' is accepted only by "
                << (report.only_accepted_by == 1 ? path1 : path2) << '\n';
        }
        return report.equivalent ? kExitAccept : kExitReject;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_lang(const std::string& path, std::size_t max_len, bool force, bool as_json,
             std::ostream& out, std::ostream& err) {
    auto parsed = load(path, err);
    if (!parsed) return kExitError;
    try {
        SweepOptions options;
        if (force) {
            err << "warning: enumeration cap overridden\n";
            options.length_cap = max_len;
        }
        LanguageSample sample = parsed->two_way()
                                    ? language_sample(parsed->as_two_way(), max_len, options)
                                    : language_sample(parsed->as_one_way(), max_len, options);
        sample.machine = path;
        if (as_json) {
            json j;
            j["machine"] = sample.machine;
            j["max_len"] = sample.max_len;
            j["accepted"] = sample.accepted;
            out << j.dump(2) << '\n';
        } else {
            for (const auto& w : sample.accepted) out << display_word(w) << '\n';
        }
        return kExitAccept;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int cmd_gallery(const std::string& which, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
    std::string text;
    if (which == "ww")
        text = serialize(gallery_ww());
    else if (which == "anbn")
        text = serialize(gallery_anbn());
    else {
        err << "error: unknown gallery machine '" << which << "' (use ww or anbn)\n";
        return kExitError;
    }
    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot write '" << out_path << "'\n";
            return kExitError;
        }
        file << text;
    }
    return kExitAccept;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"wk - a toolkit for Watson-Crick automata"};
    app.require_subcommand(1);

    std::string v_file;
    auto* v = app.add_subcommand("validate", "check a machine file; exit 0 when valid");
    v->add_option("file", v_file, "machine file")->required();

    std::string c_file;
    auto* c = app.add_subcommand("classify",
                                 "report subclass flags and per-rule transition classes");
    c->add_option("file", c_file, "machine file")->required();

    std::string r_file, r_word;
    bool r_trace = false, r_json = false;
    auto* r = app.add_subcommand("run", "decide membership of a word (upper strand)");
    r->add_option("file", r_file, "machine file")->required();
    r->add_option("word", r_word, "input word; pass '' for the empty word")->required();
    r->add_flag("--trace", r_trace, "single-run trace (deterministic machines only)");
    r->add_flag("--json", r_json, "machine-readable report");

    std::string t_file, t_out;
    bool t_explain = false;
    auto* t = app.add_subcommand("transform", "machine transformations");
    t->require_subcommand(1);
    auto* ta = t->add_subcommand("allfinal",
                                 "compile into an all-final machine with the same language");
    ta->add_option("file", t_file, "machine file")->required();
    ta->add_option("-o,--output", t_out, "output file (default: stdout)");
    ta->add_flag("--explain", t_explain, "print the per-rule construction ledger to stderr");

    std::string e_file1, e_file2;
    std::size_t e_max_len = 0;
    bool e_force = false, e_json = false;
    auto* e = app.add_subcommand("equiv", "bounded language equivalence");
    e->add_option("file1", e_file1, "machine file")->required();
    e->add_option("file2", e_file2, "machine file")->required();
    e->add_option("--max-len", e_max_len, "compare membership for all words up to this length")
        ->required();
    e->add_flag("--force", e_force, "override the enumeration cap");
    e->add_flag("--json", e_json, "machine-readable report");

    std::string l_file;
    std::size_t l_max_len = 0;
    bool l_force = false, l_json = false;
    auto* l = app.add_subcommand("lang", "list all accepted words up to a length");
    l->add_option("file", l_file, "machine file")->required();
    l->add_option("--max-len", l_max_len, "maximum word length")->required();
    l->add_flag("--force", l_force, "override the enumeration cap");
    l->add_flag("--json", l_json, "machine-readable report");

    std::string g_which, g_out;
    auto* g = app.add_subcommand("gallery", "emit a built-in machine (ww or anbn)");
    g->add_option("machine", g_which, "ww | anbn")->required();
    g->add_option("-o,--output", g_out, "output file (default: stdout)");

    std::vector<const char*> argv;
    argv.push_back("wk");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& h) {
        out << app.help();
        return kExitAccept;
    } catch (const CLI::ParseError& pe) {
        err << "error: " << pe.what() << '\n';
        err << app.help();
        return kExitError;
    }

    if (app.got_subcommand(v)) return cmd_validate(v_file, out, err);
    if (app.got_subcommand(c)) return cmd_classify(c_file, out, err);
    if (app.got_subcommand(r)) return cmd_run(r_file, r_word, r_trace, r_json, out, err);
    if (app.got_subcommand(t)) return cmd_transform(t_file, t_out, t_explain, out, err);
    if (app.got_subcommand(e))
        return cmd_equiv(e_file1, e_file2, e_max_len, e_force, e_json, out, err);
    if (app.got_subcommand(l)) return cmd_lang(l_file, l_max_len, l_force, l_json, out, err);
    if (app.got_subcommand(g)) return cmd_gallery(g_which, g_out, out, err);
    err << "error: no command\n";
    return kExitError;
}

}  // namespace wk
