#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lsync/io/json.hpp"
#include "lsync/pipeline.hpp"

namespace {

using namespace lsync;

enum Exit { Ok = 0, Malformed = 1, Refuted = 2, Inconclusive = 3 };

struct Options {
    std::vector<std::string> builtins;
    std::vector<std::string> files;
    HorizonOverrides overrides;
    std::string format = "text";
    bool stability_recheck = false;
    std::string out_dir;
};

int worst(std::initializer_list<Verdict> vs) {
    int code = Ok;
    for (auto v : vs) {
        if (v == Verdict::Refuted) return Refuted;
        if (v == Verdict::Inconclusive) code = Inconclusive;
    }
    return code;
}

std::vector<Presentation> presentations(const Options& o) {
    std::vector<Presentation> ps;
    for (const auto& b : o.builtins) ps.push_back(make_builtin(b));
    for (const auto& f : o.files) ps.push_back(load_presentation(f));
    return ps;
}

Presentation single(const Options& o) {
    auto ps = presentations(o);
    if (ps.size() != 1) throw InvalidPresentation("give exactly one --builtin or --file");
    return ps.front();
}

std::string file_stem(const std::string& name) {
    std::string r;
    for (char c : name) r += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
    return r;
}

/// Writes to DIR/stem.ext when --out is given, else to stdout.
void emit(const Options& o, const std::string& stem, const std::string& ext, const std::string& text) {
    if (o.out_dir.empty()) {
        std::cout << text;
        return;
    }
    std::filesystem::create_directories(o.out_dir);
    auto path = std::filesystem::path(o.out_dir) / (file_stem(stem) + ext);
    std::ofstream out(path);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + path.string());
    std::cerr << "wrote " << path.string() << "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string horizons_text(const Horizons& h) {
    return "L=" + std::to_string(h.max_level) + " max_word_len=" + std::to_string(h.max_word_len) +
           " follower_horizon=" + std::to_string(h.follower_horizon) + " tail_len=" + std::to_string(h.tail_len);
}

std::string certificate_text(const std::string& title, const Alphabet& a, const SyncCertificate& c) {
    std::ostringstream s;
    s << title << ": " << to_string(c.verdict) << (c.exact ? " (exact)" : " (at horizon)") << ", " << c.checked
      << " cases checked\n";
    for (const auto& f : c.failures) {
        s << "  failure at b=" << a.format(f.b);
        if (f.sigma >= 0) s << " sigma=" << a.name(f.sigma);
        s << ", " << f.evidence.size() << " searched a";
        if (!f.evidence.empty()) {
            s << "; e.g. a=" << a.format(f.evidence.front().first)
              << " separated by " << a.format(f.evidence.front().second);
        }
        s << "\n";
    }
    return s.str();
}

int cmd_check(const Options& o) {
    auto p = single(o);
    auto hz = o.overrides.resolve(p);
    Engine eng(p.oracle);
    auto iii = check_lambda_synchronizing(eng, hz);
    auto d = check_property_D(eng, hz);
    std::optional<SyncTable> table;
    std::string table_error;
    try {
        table = sync_word_table(eng, hz);
    } catch (const EmptySyncLevel& e) {
        table_error = e.what();
    }
    const Alphabet& a = p.oracle->alphabet();
    int code = worst({iii.verdict, d.verdict});
    if (!table && code == Ok) code = Inconclusive;
    if (o.format == "json") {
        Json j{{"presentation", p.name},
               {"horizons", to_json(hz)},
               {"exactness", p.oracle->exactness()},
               {"lambda_synchronizing", to_json(a, iii)},
               {"property_D", to_json(a, d)}};
        Json levels = Json::array();
        if (table) {
            for (const auto& lv : table->levels) levels.push_back(lv.size());
        }
        j["sync_table_sizes"] = levels;
        if (!table_error.empty()) j["sync_table_error"] = table_error;
        emit(o, p.name + ".check", ".json", dump(j));
    } else {
        std::ostringstream s;
        s << p.name << " [" << horizons_text(hz) << "]\n";
        s << certificate_text("lambda-synchronizing (condition (iii))", a, iii);
        s << certificate_text("property (D)", a, d);
        if (table) {
            s << "synchronizing words per level:";
            for (const auto& lv : table->levels) s << " " << lv.size();
            s << "\n";
        } else {
            s << "synchronizing table: " << table_error << "\n";
        }
        emit(o, p.name + ".check", ".txt", s.str());
    }
    return code;
}

int cmd_build(const Options& o) {
    auto p = single(o);
    auto hz = o.overrides.resolve(p);
    auto run = run_build(p, hz, o.stability_recheck);
    const auto& g = run.graph;
    auto axioms = verify_axioms(g);
    auto presents = verify_presents(g, *p.oracle, std::min(hz.max_level, 6));
    bool ok = axioms_hold(axioms) &&
              std::all_of(presents.begin(), presents.end(), [](const PresentsReport& r) { return r.holds; });
    std::string stability = run.stable ? (*run.stable ? "STABLE" : "UNSTABLE") : "NOT_CHECKED";
    if (o.format == "dot") {
        emit(o, p.name, ".dot", to_dot(g));
    } else if (o.format == "json") {
        Json j{{"presentation", p.name},
               {"graph", to_json(g)},
               {"axioms", to_json(axioms)},
               {"presents", to_json(g.alphabet, presents)},
               {"stability", stability}};
        if (run.stable) j["recheck_horizons"] = to_json(recheck_horizons(hz));
        emit(o, p.name, ".json", dump(j));
    } else {
        std::ostringstream s;
        s << p.name << " [" << horizons_text(hz) << "]\n";
        s << "vertices per level:";
        for (auto n : g.sizes()) s << " " << n;
        s << "\nedges per level:";
        for (const auto& es : g.edges) s << " " << es.size();
        s << "\n";
        for (const auto& c : axioms) s << "  " << c.name << ": " << (c.ok() ? "ok" : "FAILED") << "\n";
        for (const auto& r : presents) {
            s << "  presents length " << r.n << ": " << (r.holds ? "ok" : "FAILED") << "\n";
        }
        s << "stability: " << stability << "\n";
        emit(o, p.name, ".txt", s.str());
    }
    if (!ok) return Refuted;
    if (run.stable && !*run.stable) return Inconclusive;
    return Ok;
}

std::string report_text(const InvariantReport& r) {
    std::ostringstream s;
    s << r.label << "\nvertices per level:";
    for (auto n : r.sizes) s << " " << n;
    s << "\n";
    for (const auto* g : {&r.k.zero, &r.k.one, &r.bf.zero, &r.bf.one}) {
        s << "  " << g->name << " = " << g->str() << "   stages:";
        for (const auto& st : g->stages) s << " [" << st.str() << "]";
        s << "\n";
    }
    s << std::setprecision(10);
    s << "  h_lambda estimate (1/l log|V_l|, l=" << r.h_lambda.rows.back().l << "): " << r.h_lambda.last_log_over_l()
      << "\n";
    s << "  h_vol estimate: (1/l) log|P_l| = " << r.h_volume.last_log_over_l()
      << ", log(|P_l|/|P_l-1|) = " << r.h_volume.last_ratio() << "\n";
    for (const auto& c : r.conditions) {
        s << "  " << c.name << ": " << to_string(c.verdict) << " (levels 0.." << c.checked_levels - 1 << ")\n";
    }
    s << "  hypotheses: " << to_string(r.hypotheses.overall) << " - " << r.hypotheses.statement << "\n";
    return s.str();
}

int invariants_exit(const InvariantReport& r) {
    bool stable = r.k.zero.stabilized && r.k.one.stabilized && r.bf.zero.stabilized && r.bf.one.stabilized;
    return stable && r.hypotheses.overall == Verdict::Verified ? Ok : Inconclusive;
}

int cmd_invariants(const Options& o) {
    auto p = single(o);
    auto run = run_build(p, o.overrides.resolve(p), o.stability_recheck);
    auto rep = run_invariants(run);
    if (o.format == "json") {
        Json j = to_json(rep);
        j["horizons"] = to_json(run.horizons);
        if (run.stable) j["stability"] = *run.stable ? "STABLE" : "UNSTABLE";
        emit(o, p.name + ".invariants", ".json", dump(j));
    } else {
        emit(o, p.name + ".invariants", ".txt", report_text(rep));
    }
    return invariants_exit(rep);
}

int cmd_compare(const Options& o) {
    auto ps = presentations(o);
    if (ps.size() != 2) throw InvalidPresentation("compare needs exactly two presentations");
    std::vector<BuildRun> runs;
    std::vector<InvariantReport> reps;
    for (auto& p : ps) {
        runs.push_back(run_build(p, o.overrides.resolve(p)));
        reps.push_back(run_invariants(runs.back()));
    }
    struct Row {
        std::string name, a, b, verdict;
    };
    std::vector<Row> rows;
    bool mismatch = false, undecided = false;
    auto group_row = [&](const GroupSequence& x, const GroupSequence& y) {
        Row r{x.name, x.str(), y.str(), ""};
        if (x.stabilized && y.stabilized) {
            r.verdict = x.limit() == y.limit() ? "MATCH" : "MISMATCH";
        } else {
            r.verdict = "UNDECIDED";
        }
        rows.push_back(r);
    };
    group_row(reps[0].k.zero, reps[1].k.zero);
    group_row(reps[0].k.one, reps[1].k.one);
    group_row(reps[0].bf.zero, reps[1].bf.zero);
    group_row(reps[0].bf.one, reps[1].bf.one);
    {
        double x = reps[0].h_volume.last_ratio(), y = reps[1].h_volume.last_ratio();
        std::ostringstream sx, sy;
        sx << std::setprecision(10) << x;
        sy << std::setprecision(10) << y;
        rows.push_back({"h_vol", sx.str(), sy.str(), std::abs(x - y) <= 1e-6 ? "MATCH" : "MISMATCH"});
    }
    for (const auto& r : rows) {
        mismatch = mismatch || r.verdict == "MISMATCH";
        undecided = undecided || r.verdict == "UNDECIDED";
    }
    if (o.format == "json") {
        Json j{{"a", ps[0].name}, {"b", ps[1].name}};
        Json inv = Json::array();
        for (const auto& r : rows) inv.push_back({{"invariant", r.name}, {"a", r.a}, {"b", r.b}, {"verdict", r.verdict}});
        j["invariants"] = inv;
        emit(o, ps[0].name + ".vs." + ps[1].name, ".json", dump(j));
    } else {
        std::ostringstream s;
        s << ps[0].name << " vs " << ps[1].name << "\n";
        for (const auto& r : rows) s << "  " << r.name << ": " << r.a << " | " << r.b << "  " << r.verdict << "\n";
        emit(o, ps[0].name + ".vs." + ps[1].name, ".txt", s.str());
    }
    if (mismatch) return Refuted;
    return undecided ? Inconclusive : Ok;
}

void add_common(CLI::App* sub, Options& o, bool many) {
    auto* b = sub->add_option("--builtin", o.builtins, "builtin presentation name (see 'list')");
    auto* f = sub->add_option("--file", o.files, "presentation file (JSON)")->check(CLI::ExistingFile);
    if (!many) {
        b->expected(1);
        f->expected(1);
        b->excludes(f);
    }
    sub->add_option_function<int>("-L,--max-level", [&o](int v) { o.overrides.max_level = v; }, "number of levels (default 4)")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<int>("--max-word-len", [&o](int v) { o.overrides.max_word_len = v; }, "longest enumerated word (default 8)")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<int>("--follower-horizon", [&o](int v) { o.overrides.follower_horizon = v; },
                                  "longest follower examined (default 8)")
        ->check(CLI::PositiveNumber);
    sub->add_option_function<int>("--tail-len", [&o](int v) { o.overrides.tail_len = v; }, "tail length (default 8)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_flag("--stability-recheck", o.stability_recheck, "rebuild at larger horizons and compare");
    sub->add_option("--out", o.out_dir, "write output files into this directory");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lambda-synchronization toolkit for subshifts"};
    app.require_subcommand(1);
    Options o;
    auto* check = app.add_subcommand("check", "check lambda-synchronization and property (D)");
    auto* build = app.add_subcommand("build", "build the lambda-graph system");
    auto* inv = app.add_subcommand("invariants", "compute K-groups, Bowen-Franks groups, entropy and conditions");
    auto* cmp = app.add_subcommand("compare", "compare invariants of two presentations");
    auto* list = app.add_subcommand("list", "list builtin presentations");
    add_common(check, o, false);
    add_common(build, o, false);
    add_common(inv, o, false);
    add_common(cmp, o, true);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Malformed;
    }
    try {
        if (*list) {
            for (const auto& n : builtin_names()) std::cout << n << "\n";
            std::cout << "(any name may take the suffixes -rev and -blockN)\n";
            return Ok;
        }
        if (*check) return cmd_check(o);
        if (*build) return cmd_build(o);
        if (*inv) return cmd_invariants(o);
        if (*cmp) return cmd_compare(o);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Malformed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return Malformed;
    }
    return Malformed;
}
