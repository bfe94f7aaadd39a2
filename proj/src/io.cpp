#include "equires/io.hpp"

namespace equires::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw BadInput("schema violation at " + where + ": " + what);
}

void check_schema(const json& j) {
    if (j.contains("schema") && j.at("schema") != 1)
        bad("schema", "unsupported schema version");
}

int load_m(const json& j, std::optional<int> m_override) {
    if (m_override) return *m_override;
    if (!j.contains("m")) return 1;
    if (!j.at("m").is_number_integer() || j.at("m").get<int>() < 1)
        bad("m", "expected an integer >= 1");
    return j.at("m").get<int>();
}

std::vector<std::string> load_vars(const json& j) {
    if (!j.contains("vars") || !j.at("vars").is_array() || j.at("vars").empty())
        bad("vars", "expected a non-empty array of variable names");
    std::vector<std::string> vars;
    for (const auto& v : j.at("vars")) {
        if (!v.is_string()) bad("vars", "variable names must be strings");
        vars.push_back(v.get<std::string>());
    }
    return vars;
}

Ideal load_ideal(const json& j, const std::vector<std::string>& vars, int m) {
    if (!j.contains("ideal") || !j.at("ideal").is_array() || j.at("ideal").empty())
        bad("ideal", "expected a non-empty array of generator strings");
    std::vector<std::string> gens;
    for (const auto& g : j.at("ideal")) {
        if (!g.is_string()) bad("ideal", "generators must be strings");
        gens.push_back(g.get<std::string>());
    }
    try {
        return Ideal::parse(gens, vars, m);
    } catch (const std::exception& ex) {
        bad("ideal", ex.what());
    }
}

SPair load_pair(const json& j, std::optional<int> m_override) {
    check_schema(j);
    int m = load_m(j, m_override);
    std::vector<std::string> vars = load_vars(j);

    SPair p;
    if (j.contains("charts")) {
        if (!j.at("charts").is_array() || j.at("charts").empty())
            bad("charts", "expected a non-empty array");
        for (const auto& cj : j.at("charts")) {
            Chart c;
            c.id = cj.value("id", std::string("0"));
            c.vars = cj.contains("vars") ? load_vars(cj) : vars;
            c.m = m;
            p.charts.push_back(std::move(c));
        }
    } else {
        Chart c;
        c.id = "0";
        c.vars = vars;
        c.m = m;
        p.charts.push_back(std::move(c));
    }

    if (j.contains("E")) {
        if (!j.at("E").is_array()) bad("E", "expected an array");
        for (const auto& hj : j.at("E")) {
            Hypersurface H;
            if (!hj.contains("label") || !hj.at("label").is_string())
                bad("E", "each member needs a string label");
            H.label = hj.at("label").get<std::string>();
            try {
                if (hj.contains("eqs")) {
                    for (const auto& [cid, eq] : hj.at("eqs").items())
                        H.eqs.emplace(cid,
                                      Poly::parse(eq.get<std::string>(),
                                                  p.chart(cid).vars, m));
                } else if (hj.contains("eq")) {
                    H.eqs.emplace(p.charts.front().id,
                                  Poly::parse(hj.at("eq").get<std::string>(),
                                              p.charts.front().vars, m));
                } else {
                    bad("E", "member " + H.label + " needs eq or eqs");
                }
            } catch (const BadInput&) {
                throw;
            } catch (const std::exception& ex) {
                bad("E", ex.what());
            }
            p.E.push_back(std::move(H));
        }
    }
    return p;
}

json subst_to_json(const Substitution& s) {
    return json{{"var", s.var}, {"replacement", s.replacement.to_string()}};
}

json rat_json(const Rat& q) { return rat_to_string(q); }

}  // namespace

BasicObject load_basic_object(const json& j, std::optional<int> m_override) {
    SPair p = load_pair(j, m_override);
    if (!j.contains("b") || !j.at("b").is_number_integer() || j.at("b").get<int>() < 1)
        bad("b", "expected an integer >= 1");
    Ideal I = load_ideal(j, p.charts.front().vars, p.m());
    return BasicObject::make(std::move(p), I, j.at("b").get<int>());
}

IdTriple load_idtriple(const json& j, std::optional<int> m_override) {
    IdTriple T;
    T.pair = load_pair(j, m_override);
    T.ideal = load_ideal(j, T.pair.charts.front().vars, T.pair.m());
    return T;
}

std::pair<Ideal, SPair> load_embedded(const json& j, std::optional<int> m_override) {
    SPair p = load_pair(j, m_override);
    Ideal I = load_ideal(j, p.charts.front().vars, p.m());
    return {std::move(I), std::move(p)};
}

json center_to_json(const CenterSpec& C) {
    json out = json::object();
    for (const auto& [cid, comps] : C.by_chart) {
        json arr = json::array();
        for (const auto& comp : comps) {
            json cj;
            cj["vanishing"] = comp.vanishing_vars;
            json ch = json::array();
            for (const auto& s : comp.change) ch.push_back(subst_to_json(s));
            if (!ch.empty()) cj["change"] = ch;
            arr.push_back(std::move(cj));
        }
        out[cid] = std::move(arr);
    }
    return out;
}

json object_to_json(const BasicObject& B) {
    json out;
    out["schema"] = 1;
    out["m"] = B.m();
    out["b"] = B.b();
    json charts = json::object();
    for (const auto& c : B.pair().charts) {
        json cj;
        cj["vars"] = c.vars;
        json gens = json::array();
        for (const auto& g : B.chart_data(c.id).ideal.gens())
            gens.push_back(g.to_string());
        cj["ideal"] = std::move(gens);
        json exps = json::object();
        for (const auto& [label, a] : B.chart_data(c.id).exponents) exps[label] = a;
        cj["exponents"] = std::move(exps);
        charts[c.id] = std::move(cj);
    }
    out["charts"] = std::move(charts);
    json E = json::array();
    for (const auto& H : B.pair().E) {
        json hj;
        hj["label"] = H.label;
        json eqs = json::object();
        for (const auto& [cid, eq] : H.eqs) eqs[cid] = eq.to_string();
        hj["eqs"] = std::move(eqs);
        E.push_back(std::move(hj));
    }
    out["E"] = std::move(E);
    return out;
}

json tree_to_json(const ResolutionTree& T, bool full_trace) {
    json out;
    out["schema"] = 1;
    out["resolved"] = T.resolved;
    out["ell"] = T.ell();
    out["warnings"] = T.warnings;
    json steps = json::array();
    for (const auto& s : T.steps) {
        json sj;
        sj["kind"] = to_string(s.kind);
        sj["exc"] = s.exc_label;
        sj["max_omega"] = rat_json(s.max_omega);
        sj["t"] = json::array({rat_json(s.t.first), s.t.second});
        if (s.gamma) sj["gamma"] = s.gamma->to_string();
        sj["center"] = center_to_json(s.center);
        if (full_trace) sj["trace"] = s.trace;
        steps.push_back(std::move(sj));
    }
    out["steps"] = std::move(steps);
    if (!T.objects.empty()) out["final"] = object_to_json(T.objects.back());
    return out;
}

json equires_to_json(const EquiresReport& rep, bool full_trace) {
    json out;
    out["schema"] = 1;
    out["e"] = rep.e;
    out["ell"] = rep.ell;
    out["equisolvable"] = rep.equisolvable;
    if (!rep.failure_clause.empty()) out["failure_clause"] = rep.failure_clause;
    json centers = json::array();
    for (const auto& C : rep.centers) centers.push_back(center_to_json(C));
    out["centers"] = std::move(centers);
    out["fiber"] = tree_to_json(rep.fiber_tree, full_trace);
    if (!rep.sequence.empty()) out["final"] = object_to_json(rep.sequence.back());
    out["notes"] = rep.notes;
    return out;
}

json embedded_to_json(const EmbeddedReport& rep, bool full_trace) {
    json out;
    out["schema"] = 1;
    out["fiber_ok"] = rep.fiber_ok;
    out["eta"] = rep.eta;
    out["success"] = rep.success;
    out["snc"] = rep.snc;
    out["equires"] = equires_to_json(rep.eq, full_trace);
    out["notes"] = rep.notes;
    return out;
}

}  // namespace equires::io
