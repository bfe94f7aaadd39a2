// Command-line frontend: JSON in, reports out, plus replay of the named
// worked examples against embedded golden transcripts.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "equires/contact.hpp"
#include "equires/delta.hpp"
#include "equires/io.hpp"

using namespace equires;
using equires::io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitEjFailure = 2;
constexpr int kExitStuck = 3;
constexpr int kExitBadInput = 4;

enum class Trace { None, Steps, Full };

struct RunConfig {
    std::string input;
    std::optional<int> m_override;
    int max_dim = 3;
    Trace trace = Trace::Steps;
    std::string out;
};

json read_input(const RunConfig& cfg) {
    std::ifstream in(cfg.input);
    if (!in) throw BadInput("cannot open input file: " + cfg.input);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& ex) {
        throw BadInput(std::string("JSON parse error: ") + ex.what());
    }
    return j;
}

void guard_dim(const SPair& p, const RunConfig& cfg) {
    if (p.dim() > cfg.max_dim)
        throw BadInput("ambient dimension " + std::to_string(p.dim()) +
                       " exceeds --max-dim " + std::to_string(cfg.max_dim));
}

void emit(const RunConfig& cfg, const json& report) {
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        out << report.dump(2) << "\n";
    }
}

void print_steps(const ResolutionTree& T, const RunConfig& cfg) {
    if (cfg.trace == Trace::None) return;
    for (std::size_t i = 0; i < T.steps.size(); ++i) {
        const auto& s = T.steps[i];
        std::cout << "step " << i << ": " << to_string(s.kind) << ", center "
                  << s.center.describe() << "\n";
        if (cfg.trace == Trace::Full)
            for (const auto& line : s.trace) std::cout << "    " << line << "\n";
    }
}

int cmd_sing(const RunConfig& cfg) {
    BasicObject B = io::load_basic_object(read_input(cfg), cfg.m_override);
    guard_dim(B.pair(), cfg);
    json report;
    report["schema"] = 1;
    for (const auto& c : B.pair().charts) {
        Ideal S = B.sing(c.id);
        bool empty = basis_contains_one(S.fiber_gb());
        if (empty) {
            std::cout << "chart " << c.id << ": Sing = ∅\n";
            report["charts"][c.id] = json::array();
        } else {
            json gens = json::array();
            std::ostringstream os;
            Ideal Sp = S.pruned();
            for (const auto& g : Sp.gens()) {
                if (g.is_zero()) continue;
                gens.push_back(g.to_string());
                os << (os.str().empty() ? "" : ", ") << g.to_string();
            }
            std::cout << "chart " << c.id << ": Sing = V(" << os.str() << ")\n";
            report["charts"][c.id] = std::move(gens);
        }
    }
    emit(cfg, report);
    return kExitOk;
}

int cmd_center(const RunConfig& cfg) {
    BasicObject B = io::load_basic_object(read_input(cfg), cfg.m_override);
    guard_dim(B.pair(), cfg);
    OmegaData om = max_omega(B);
    if (om.sing_empty) {
        std::cout << "Sing = ∅; no center needed\n";
        return kExitOk;
    }
    TData td = max_t(B, om, {});
    BranchResult br = derive_center(B, om, td, {});
    std::cout << to_string(br.kind) << ": center " << br.center.describe() << "\n";
    if (cfg.trace == Trace::Full)
        for (const auto& line : br.trace) std::cout << "  " << line << "\n";
    json report;
    report["schema"] = 1;
    report["kind"] = to_string(br.kind);
    report["center"] = io::center_to_json(br.center);
    emit(cfg, report);
    return kExitOk;
}

int cmd_step(const RunConfig& cfg) {
    BasicObject B = io::load_basic_object(read_input(cfg), cfg.m_override);
    guard_dim(B.pair(), cfg);
    OmegaData om = max_omega(B);
    if (om.sing_empty) {
        std::cout << "Sing = ∅; nothing to do\n";
        return kExitOk;
    }
    TData td = max_t(B, om, {});
    BranchResult br = derive_center(B, om, td, {});
    auto [B1, rec] = B.transform(br.center, "exc" + std::to_string(B.step()));
    (void)rec;
    std::cout << to_string(br.kind) << " at " << br.center.describe() << " -> "
              << B1.pair().charts.size() << " chart(s)"
              << (B1.sing_empty() ? ", resolved" : "") << "\n";
    emit(cfg, io::object_to_json(B1));
    return kExitOk;
}

int cmd_resolve(const RunConfig& cfg) {
    BasicObject B = io::load_basic_object(read_input(cfg), cfg.m_override);
    guard_dim(B.pair(), cfg);
    ResolutionTree T = resolve_fiber(B.fiber());
    print_steps(T, cfg);
    std::cout << "resolved in " << T.ell() << " step(s)\n";
    emit(cfg, io::tree_to_json(T, cfg.trace == Trace::Full));
    return kExitOk;
}

int cmd_equires(const RunConfig& cfg) {
    BasicObject B = io::load_basic_object(read_input(cfg), cfg.m_override);
    guard_dim(B.pair(), cfg);
    EquiresReport rep = equiresolve(B);
    print_steps(rep.fiber_tree, cfg);
    std::cout << "e = " << rep.e << ", ell = " << rep.ell
              << (rep.equisolvable ? ", equisolvable" : ", NOT equisolvable") << "\n";
    if (!rep.failure_clause.empty())
        std::cout << "E_" << rep.e << " fails: " << rep.failure_clause << "\n";
    emit(cfg, io::equires_to_json(rep, cfg.trace == Trace::Full));
    return rep.equisolvable ? kExitOk : kExitEjFailure;
}

int cmd_principalize(const RunConfig& cfg) {
    IdTriple T = io::load_idtriple(read_input(cfg), cfg.m_override);
    guard_dim(T.pair, cfg);
    EquiresReport rep = principalize(T);
    print_steps(rep.fiber_tree, cfg);
    std::cout << "e = " << rep.e << ", ell = " << rep.ell
              << (rep.equisolvable ? ", equisolvable" : ", NOT equisolvable") << "\n";
    for (const auto& n : rep.notes) std::cout << n << "\n";
    emit(cfg, io::equires_to_json(rep, cfg.trace == Trace::Full));
    return rep.equisolvable ? kExitOk : kExitEjFailure;
}

int cmd_embedded(const RunConfig& cfg) {
    auto [X, W] = io::load_embedded(read_input(cfg), cfg.m_override);
    guard_dim(W, cfg);
    EmbeddedReport rep = resolve_embedded(X, W);
    print_steps(rep.eq.fiber_tree, cfg);
    std::cout << "eta = " << rep.eta << ", e = " << rep.eq.e
              << (rep.success ? ", success" : ", FAILED")
              << (rep.snc ? ", snc" : "") << "\n";
    emit(cfg, io::embedded_to_json(rep, cfg.trace == Trace::Full));
    return rep.success ? kExitOk : kExitEjFailure;
}

// ---------------------------------------------------------------------------
// Replay of the named worked examples against embedded golden transcripts.

SPair single_chart(const std::vector<std::string>& vars, int m) {
    SPair p;
    Chart c;
    c.id = "0";
    c.vars = vars;
    c.m = m;
    p.charts.push_back(std::move(c));
    return p;
}

CenterSpec origin_center(const std::vector<std::string>& vanishing,
                         const std::vector<Substitution>& change = {}) {
    CenterSpec C;
    CenterComponent comp;
    comp.change = change;
    comp.vanishing_vars = vanishing;
    C.by_chart["0"].push_back(std::move(comp));
    return C;
}

std::vector<std::string> replay_ex4_2() {
    const std::vector<std::string> XY{"x", "y"};
    Ideal I = Ideal::parse({"eps*x+y^2+x^3"}, XY, 2);
    std::vector<ArtinScalar> origin{ArtinScalar(2), ArtinScalar(2)};
    auto ord0 = I.order_at_point(origin, Level::Fiber);
    auto nu = I.order_in_vars(XY, Level::Full);
    BasicObject B = BasicObject::make(single_chart(XY, 2), I, 2);
    PermVerdict v = B.is_permissible_center(origin_center({"x", "y"}));
    std::vector<std::string> lines;
    lines.push_back("order0(I_w) = " + std::to_string(ord0.value_or(-1)));
    lines.push_back("nu(I, C) = " + std::to_string(nu.value_or(-1)));
    lines.push_back(std::string("V(x,y) permissible over A = ") + (v.ok ? "yes" : "no"));
    return lines;
}

std::vector<std::string> replay_ex_nohay() {
    const std::vector<std::string> X{"x"};
    BasicObject B =
        BasicObject::make(single_chart(X, 2), Ideal::parse({"x^2", "eps*x"}, X, 2), 2);
    EquiresReport rep = equiresolve(B);
    std::vector<std::string> lines;
    lines.push_back("e = " + std::to_string(rep.e));
    lines.push_back("ell = " + std::to_string(rep.ell));
    lines.push_back(std::string("clause has 'no A-permissible lift' = ") +
                    (rep.failure_clause.find("no A-permissible lift") != std::string::npos
                         ? "yes"
                         : "no"));
    return lines;
}

std::vector<std::string> replay_ex4_6() {
    const std::vector<std::string> X{"x"};
    BasicObject B =
        BasicObject::make(single_chart(X, 2), Ideal::parse({"x^2+eps*x"}, X, 2), 2);
    BasicObject B2 =
        BasicObject::make(single_chart(X, 2), Ideal::parse({"x^5", "eps*x"}, X, 2), 2);
    std::vector<std::vector<CenterSpec>> sequences;
    sequences.push_back({origin_center({"x"}), origin_center({"x"})});
    for (int lambda : {1, 2}) {
        Poly repl = Poly::parse("x", X, 2) -
                    Poly::parse("eps", X, 2) * Poly::constant(X, 2, Rat(lambda));
        sequences.push_back({origin_center({"x"}, {{"x", repl}})});
    }
    ProbeReport r = pre_equivalence_probe(B, B2, sequences);
    std::vector<std::string> lines;
    lines.push_back(std::string("pre-equivalent = ") + (r.pre_equivalent ? "yes" : "no"));
    lines.push_back(std::string("fibers agree = ") + (r.fibers_agree ? "yes" : "no"));
    return lines;
}

std::vector<std::string> replay_ex6_9() {
    const std::vector<std::string> XZ{"x", "z"};
    const std::vector<std::string> X{"x"};
    BasicObject B = BasicObject::make(
        single_chart(XZ, 2), Ideal::parse({"z^2+eps*x^2", "z^3+x^3"}, XZ, 2), 2);
    Ideal D1 = delta_power(B.chart_data("0").ideal, 1);
    bool delta_eq = D1.equals(Ideal::parse({"z", "eps*x", "x^2"}, XZ, 2), Level::Full);
    auto Z = find_adapted_hypersurface(B, "0");
    std::vector<std::string> lines;
    if (!Z || !Z->inductive()) {
        lines.push_back("no inductive hypersurface");
        return lines;
    }
    std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
    BasicObject BZ = inductive_object(B, adapted, false);
    bool bz_eq =
        BZ.chart_data("0").ideal.equals(Ideal::parse({"eps*x^2", "x^3"}, X, 2), Level::Full);
    CenterSpec C = origin_center({"x", "z"});
    auto CZ = restrict_center_to_Z(C, adapted);
    StrongVerdict v = is_strongly_permissible(B, BZ, C, *CZ);
    lines.push_back(std::string("Delta^1(I/S) = (z, eps*x, x^2): ") +
                    (delta_eq ? "yes" : "no"));
    lines.push_back(std::string("B_Z = ((eps*x^2, x^3), ") + std::to_string(BZ.b()) +
                    "): " + (bz_eq ? "yes" : "no"));
    lines.push_back(std::string("V(x,z) B-permissible = ") + (v.ambient.ok ? "yes" : "no"));
    lines.push_back(std::string("V(x,z) B_Z-permissible = ") +
                    (v.inductive.ok ? "yes" : "no"));
    return lines;
}

std::vector<std::string> replay_ex6_10() {
    const std::vector<std::string> XZ{"x", "z"};
    const std::vector<std::string> X{"x"};
    BasicObject B = BasicObject::make(single_chart(XZ, 2),
                                      Ideal::parse({"x^5+eps*x^2*z+z^4"}, XZ, 2), 4);
    auto Z = find_adapted_hypersurface(B, "0");
    std::vector<std::string> lines;
    if (!Z || !Z->inductive()) {
        lines.push_back("no inductive hypersurface");
        return lines;
    }
    std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
    BasicObject BZ = inductive_object(B, adapted, false);
    bool bz_eq = BZ.chart_data("0").ideal.equals(Ideal::parse({"x^30"}, X, 2), Level::Full);
    StrongVerdict v =
        is_strongly_permissible(B, BZ, origin_center({"x", "z"}), origin_center({"x"}));
    lines.push_back(std::string("B_Z = ((x^30), ") + std::to_string(BZ.b()) + "): " +
                    (bz_eq ? "yes" : "no"));
    lines.push_back(std::string("V(x) B_Z-permissible = ") + (v.inductive.ok ? "yes" : "no"));
    lines.push_back(std::string("V(x,z) B-permissible = ") + (v.ambient.ok ? "yes" : "no"));
    lines.push_back("nu = " + std::to_string(v.ambient.nu_full) +
                    ", nu0 = " + std::to_string(v.ambient.nu_fiber));
    return lines;
}

std::vector<std::string> replay_ex8_6() {
    const std::vector<std::string> XY{"x", "y"};
    const std::vector<std::string> X{"x"};
    BasicObject B =
        BasicObject::make(single_chart(XY, 2), Ideal::parse({"y^2", "x^3"}, XY, 2), 2);
    Ideal I = B.chart_data("0").ideal;
    bool delta_eq = delta_power(I, 1).equals(Ideal::parse({"y", "x^2"}, XY, 2), Level::Full);
    bool h_eq = homogenized_ideal(I, 2).equals(
        Ideal::parse({"y^2", "x^2*y", "x^3"}, XY, 2), Level::Full);
    auto Z = find_adapted_hypersurface(B, "0");
    std::vector<std::string> lines;
    if (!Z || !Z->inductive()) {
        lines.push_back("no inductive hypersurface");
        return lines;
    }
    std::map<std::string, AdaptedHypersurface> adapted{{"0", *Z}};
    BasicObject BZ = inductive_object(B, adapted, true);
    bool bz_eq = BZ.chart_data("0").ideal.equals(Ideal::parse({"x^3"}, X, 2), Level::Full);

    // The lambda-family of sections V(y, x - lambda*eps).
    StrongVerdict v0 =
        is_strongly_permissible(B, BZ, origin_center({"x", "y"}), origin_center({"x"}));
    CenterSpec C1 =
        origin_center({"x", "y"}, {{"x", Poly::parse("x-eps", XY, 2)}});
    auto CZ1 = restrict_center_to_Z(C1, adapted);
    StrongVerdict v1 = is_strongly_permissible(B, BZ, C1, *CZ1);

    EquiresReport rep = equiresolve(B);
    std::vector<std::string> out;
    out.push_back(std::string("Delta(I/S) = (y, x^2): ") + (delta_eq ? "yes" : "no"));
    out.push_back(std::string("H(I/S) = (y^2, x^2*y, x^3): ") + (h_eq ? "yes" : "no"));
    out.push_back(std::string("C(H)|_Z = (x^3): ") + (bz_eq ? "yes" : "no"));
    out.push_back(std::string("lambda=0 strongly permissible = ") +
                  (v0.strong ? "yes" : "no"));
    out.push_back(std::string("lambda=1 strongly permissible = ") +
                  (v1.strong ? "yes" : "no"));
    out.push_back("e = " + std::to_string(rep.e) + ", ell = " + std::to_string(rep.ell));
    out.push_back(std::string("Sing of the transform empty = ") +
                  (!rep.sequence.empty() && rep.sequence.back().sing_empty() ? "yes"
                                                                             : "no"));
    return out;
}

const std::map<std::string, std::pair<std::vector<std::string> (*)(),
                                      std::vector<std::string>>>&
replay_table() {
    static const std::map<std::string,
                          std::pair<std::vector<std::string> (*)(),
                                    std::vector<std::string>>>
        table{
            {"ex4_2",
             {&replay_ex4_2,
              {"order0(I_w) = 2", "nu(I, C) = 1", "V(x,y) permissible over A = no"}}},
            {"ex_nohay",
             {&replay_ex_nohay,
              {"e = 0", "ell = 1", "clause has 'no A-permissible lift' = yes"}}},
            {"ex4_6",
             {&replay_ex4_6, {"pre-equivalent = yes", "fibers agree = no"}}},
            {"ex6_9",
             {&replay_ex6_9,
              {"Delta^1(I/S) = (z, eps*x, x^2): yes", "B_Z = ((eps*x^2, x^3), 2): yes",
               "V(x,z) B-permissible = yes", "V(x,z) B_Z-permissible = no"}}},
            {"ex6_10",
             {&replay_ex6_10,
              {"B_Z = ((x^30), 24): yes", "V(x) B_Z-permissible = yes",
               "V(x,z) B-permissible = no", "nu = 3, nu0 = 4"}}},
            {"ex8_6",
             {&replay_ex8_6,
              {"Delta(I/S) = (y, x^2): yes", "H(I/S) = (y^2, x^2*y, x^3): yes",
               "C(H)|_Z = (x^3): yes", "lambda=0 strongly permissible = yes",
               "lambda=1 strongly permissible = no", "e = 1, ell = 1",
               "Sing of the transform empty = yes"}}},
        };
    return table;
}

int replay_one(const std::string& name, const RunConfig& cfg) {
    const auto& table = replay_table();
    auto it = table.find(name);
    if (it == table.end()) throw BadInput("unknown replay name: " + name);
    std::vector<std::string> actual = it->second.first();
    std::vector<std::string> expected = it->second.second;

    // An external golden overrides the embedded transcript when present.
    if (const char* dir = std::getenv("EQUIRES_GOLDEN_DIR")) {
        std::ifstream golden(std::string(dir) + "/" + name + ".txt");
        if (golden) {
            expected.clear();
            std::string line;
            while (std::getline(golden, line))
                if (!line.empty()) expected.push_back(line);
        }
    }

    bool match = (actual == expected);
    for (const auto& line : actual) std::cout << "  " << line << "\n";
    if (!match) {
        std::cout << name << ": MISMATCH; expected:\n";
        for (const auto& line : expected) std::cout << "  " << line << "\n";
    } else {
        std::cout << name << ": match\n";
    }
    if (!cfg.out.empty()) {
        std::ofstream out(cfg.out);
        for (const auto& line : actual) out << line << "\n";
    }
    return match ? kExitOk : kExitEjFailure;
}

int cmd_replay(const std::string& name, const RunConfig& cfg) {
    if (name == "all") {
        int worst = kExitOk;
        for (const auto& [n, entry] : replay_table()) {
            (void)entry;
            std::cout << n << ":\n";
            worst = std::max(worst, replay_one(n, cfg));
        }
        return worst;
    }
    return replay_one(name, cfg);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Algorithmic equiresolution of basic objects over Q[eps]/(eps^m)"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string replay_name;
    int m_flag = 0;
    std::map<std::string, Trace> trace_map{
        {"none", Trace::None}, {"steps", Trace::Steps}, {"full", Trace::Full}};

    auto add_common = [&](CLI::App* sub, bool needs_input) {
        if (needs_input)
            sub->add_option("input", cfg.input, "input JSON file")->required();
        sub->add_option("--m", m_flag, "override the truncation order m");
        sub->add_option("--max-dim", cfg.max_dim, "ambient dimension guard");
        sub->add_option("--trace", cfg.trace, "trace verbosity")
            ->transform(CLI::CheckedTransformer(trace_map, CLI::ignore_case));
        sub->add_option("--out", cfg.out, "write the JSON report here");
    };

    CLI::App* sing = app.add_subcommand("sing", "print Sing(B) per chart");
    CLI::App* center = app.add_subcommand("center", "derive one center");
    CLI::App* step = app.add_subcommand("step", "apply one transform step");
    CLI::App* resolve = app.add_subcommand("resolve", "resolve the fiber object");
    CLI::App* equires = app.add_subcommand("equires", "equiresolution over A");
    CLI::App* princ = app.add_subcommand("principalize", "equiprincipalize an id-triple");
    CLI::App* embedded = app.add_subcommand("embedded", "embedded-variety equiresolution");
    CLI::App* replay = app.add_subcommand("replay", "replay a named worked example");
    for (CLI::App* sub : {sing, center, step, resolve, equires, princ, embedded})
        add_common(sub, true);
    add_common(replay, false);
    replay->add_option("name", replay_name,
                       "ex4_2 | ex_nohay | ex4_6 | ex6_9 | ex6_10 | ex8_6 | all")
        ->required();

    CLI11_PARSE(app, argc, argv);
    if (m_flag > 0) cfg.m_override = m_flag;

    try {
        if (*sing) return cmd_sing(cfg);
        if (*center) return cmd_center(cfg);
        if (*step) return cmd_step(cfg);
        if (*resolve) return cmd_resolve(cfg);
        if (*equires) return cmd_equires(cfg);
        if (*princ) return cmd_principalize(cfg);
        if (*embedded) return cmd_embedded(cfg);
        if (*replay) return cmd_replay(replay_name, cfg);
    } catch (const BadInput& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitBadInput;
    } catch (const AlgorithmStuck& ex) {
        std::cerr << "stuck: " << ex.what() << "\n";
        return kExitStuck;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitStuck;
    }
    return kExitBadInput;
}
