#include "equires/basic_object.hpp"

#include <algorithm>
#include <sstream>

namespace equires {

BasicObject BasicObject::make(SPair pair, const Ideal& ideal, int b) {
    BasicObject B;
    B.pair_ = std::move(pair);
    B.b_ = b;
    B.step_ = 0;
    for (const auto& c : B.pair_.charts) {
        ChartData cd;
        cd.ideal = ideal.with_vars(c.vars);
        cd.proper = cd.ideal;
        // Extract exceptional exponents of the input E-members so that a
        // monomial input has unit proper transform.
        for (const auto& H : B.pair_.E) {
            if (!H.present_in(c.id)) continue;
            const Poly& eq = H.eq(c.id);
            int a = cd.proper.max_divisions(eq);
            if (a > 0) {
                for (int k = 0; k < a; ++k) cd.proper = cd.proper.exact_divide(eq);
            }
            cd.exponents[H.label] = a;
        }
        B.data_.emplace(c.id, std::move(cd));
    }
    return B;
}

BasicObject BasicObject::from_charts(SPair pair, std::map<std::string, ChartData> data, int b,
                                     int step) {
    BasicObject B;
    B.pair_ = std::move(pair);
    B.data_ = std::move(data);
    B.b_ = b;
    B.step_ = step;
    return B;
}

BasicObject BasicObject::fiber() const { return retruncate(1); }

BasicObject BasicObject::retruncate(int m2) const {
    BasicObject B;
    B.pair_ = pair_;
    for (auto& c : B.pair_.charts) c.m = m2;
    for (auto& H : B.pair_.E)
        for (auto& [cid, eq] : H.eqs) eq = eq.retruncate(m2);
    B.b_ = b_;
    B.step_ = step_;
    for (const auto& [cid, cd] : data_) {
        ChartData nd;
        nd.ideal = cd.ideal.retruncate(m2);
        nd.proper = cd.proper.retruncate(m2);
        nd.exponents = cd.exponents;
        B.data_.emplace(cid, std::move(nd));
    }
    return B;
}

Ideal BasicObject::sing(const std::string& cid) const {
    return sing_ideal(data_.at(cid).ideal, b_);
}

bool BasicObject::sing_empty() const {
    for (const auto& [cid, cd] : data_)
        if (!basis_contains_one(sing(cid).fiber_gb())) return false;
    return true;
}

PermVerdict BasicObject::is_permissible_center(const CenterSpec& C) const {
    PermVerdict v;
    v.ok = true;
    auto diag = validate_center(pair_, C);
    if (!diag.ok) {
        v.ok = false;
        v.notes = diag.violations;
        return v;
    }
    bool any = false;
    for (const auto& [cid, comps] : C.by_chart) {
        const Chart& c = pair_.chart(cid);
        const ChartData& cd = data_.at(cid);
        for (const auto& comp : comps) {
            any = true;
            Ideal changed;
            try {
                changed = apply_substitutions(cd.ideal, comp.change);
            } catch (const NotACoordinateChange&) {
                if (comp.vanishing_vars.size() != 1) throw;
                // Principal codim-1 component V(g) with g not normalizable to
                // a coordinate: nu(I, C) is the g-adic order; the divisor
                // must be smooth at the fiber level.
                Poly g = comp.ideal(c.vars, c.m).gens().at(0);
                int nf = cd.ideal.max_divisions(g);
                int n0 = cd.ideal.fiber().max_divisions(g.fiber());
                if (v.nu_full < 0 || nf < v.nu_full) v.nu_full = nf;
                if (v.nu_fiber < 0 || n0 < v.nu_fiber) v.nu_fiber = n0;
                if (!(nf == n0 && n0 >= b_)) {
                    v.ok = false;
                    std::ostringstream os;
                    os << "chart " << cid << ": nu=" << nf << ", nu0=" << n0
                       << ", b=" << b_;
                    v.notes.push_back(os.str());
                }
                std::vector<Poly> jac{g.fiber()};
                for (const auto& vv : c.vars) jac.push_back(g.fiber().derivative(vv));
                if (!Ideal(c.vars, 1, jac).is_unit(Level::Fiber)) {
                    v.ok = false;
                    v.notes.push_back("chart " + cid +
                                      ": principal codim-1 center is not smooth");
                }
                continue;
            }
            auto nu = changed.order_in_vars(comp.vanishing_vars, Level::Full);
            auto nu0 = changed.order_in_vars(comp.vanishing_vars, Level::Fiber);
            int nf = nu.value_or(-1), n0 = nu0.value_or(-1);
            if (v.nu_full < 0 || nf < v.nu_full) v.nu_full = nf;
            if (v.nu_fiber < 0 || n0 < v.nu_fiber) v.nu_fiber = n0;
            if (!(nu && nu0 && *nu == *nu0 && *nu0 >= b_)) {
                v.ok = false;
                std::ostringstream os;
                os << "chart " << cid << ": nu=" << nf << ", nu0=" << n0 << ", b=" << b_;
                v.notes.push_back(os.str());
            }
            // Sing containment diagnostic: the fiber center must lie in Sing.
            std::vector<Substitution> change0;
            for (const auto& s : comp.change)
                change0.push_back({s.var, s.replacement.retruncate(1)});
            Ideal sg = apply_substitutions(sing(cid), change0);
            Ideal IC(c.vars, 1, [&] {
                std::vector<Poly> gens;
                for (const auto& vv : comp.vanishing_vars)
                    gens.push_back(Poly::variable(c.vars, 1, vv));
                return gens;
            }());
            if (!IC.contains(sg, Level::Fiber))
                v.notes.push_back("chart " + cid + ": center not inside Sing(B)");
        }
    }
    if (!any) {
        v.ok = false;
        v.notes.push_back("empty center");
    }
    return v;
}

int BasicObject::proper_transform_exponent(const Ideal& total, const Poly& w) {
    return total.max_divisions(w);
}

std::pair<BasicObject, BlowupRecord> BasicObject::transform(const CenterSpec& C,
                                                            const std::string& exc_label,
                                                            bool check) const {
    if (check) {
        PermVerdict v = is_permissible_center(C);
        if (!v.ok) {
            std::string why = "transform at non-permissible center";
            for (const auto& n : v.notes) why += "; " + n;
            throw PermissibilityError(why);
        }
    }
    auto [new_pair, rec] = blowup(pair_, C, step_, exc_label);

    std::map<std::string, ChartData> new_data;

    // Charts kept as-is (possibly modified by codim-1 components).
    for (const auto& cid : rec.kept_charts) {
        const ChartData& cd = data_.at(cid);
        ChartData nd = cd;
        auto it = C.by_chart.find(cid);
        bool divisor_here = false;
        if (it != C.by_chart.end()) {
            const Chart& c = pair_.chart(cid);
            for (const auto& comp : it->second) {
                if (comp.vanishing_vars.size() != 1) continue;
                divisor_here = true;
                Poly g = comp.ideal(c.vars, c.m).gens().at(0);
                for (int k = 0; k < b_; ++k) {
                    try {
                        nd.ideal = nd.ideal.exact_divide(g);
                    } catch (const NotDivisible&) {
                        throw InvariantBreach("controlled division failed in chart " + cid);
                    }
                }
                int ap = nd.proper.max_divisions(g);
                for (int k = 0; k < ap; ++k) nd.proper = nd.proper.exact_divide(g);
                nd.exponents[exc_label] = nd.ideal.max_divisions(g);
            }
        }
        if (!divisor_here) {
            // The new exceptional misses this chart entirely.
        }
        new_data.emplace(cid, std::move(nd));
    }

    // Blow-up children.
    for (const auto& bc : rec.new_charts) {
        const ChartData& cd = data_.at(bc.parent_id);
        const Chart& child = new_pair.chart(bc.id);
        Poly w = Poly::variable(child.vars, child.m, bc.kept_var);

        Ideal total = transform_ideal(cd.ideal, bc, child.vars);
        ChartData nd;
        nd.ideal = total;
        for (int k = 0; k < b_; ++k) {
            try {
                nd.ideal = nd.ideal.exact_divide(w);
            } catch (const NotDivisible&) {
                throw InvariantBreach("controlled division failed in chart " + bc.id);
            }
        }
        Ideal proper_total = transform_ideal(cd.proper, bc, child.vars);
        int ap = proper_total.max_divisions(w);
        nd.proper = proper_total;
        for (int k = 0; k < ap; ++k) nd.proper = nd.proper.exact_divide(w);
        // Strict transforms keep their exponents where still present.
        for (const auto& [label, a] : cd.exponents) {
            for (const auto& H : new_pair.E)
                if (H.label == label && H.present_in(bc.id)) nd.exponents[label] = a;
        }
        nd.exponents[exc_label] = nd.ideal.max_divisions(w);
        new_data.emplace(bc.id, std::move(nd));
    }

    BasicObject out = from_charts(std::move(new_pair), std::move(new_data), b_, step_ + 1);
    return {std::move(out), std::move(rec)};
}

bool BasicObject::factorization_holds() const {
    for (const auto& [cid, cd] : data_) {
        const Chart& c = pair_.chart(cid);
        Ideal prod = cd.proper;
        for (const auto& [label, a] : cd.exponents) {
            for (const auto& H : pair_.E) {
                if (H.label != label || !H.present_in(cid)) continue;
                Ideal Hid(c.vars, c.m, {H.eq(cid)});
                prod = prod * Hid.power(a);
            }
        }
        if (!prod.equals(cd.ideal, Level::Full)) return false;
    }
    return true;
}

namespace {

// Walk one candidate sequence on a pair of objects; returns false on the
// first step where the permissibility verdicts differ.
bool probe_walk(BasicObject a, BasicObject b, const std::vector<CenterSpec>& seq, int m2,
                std::vector<std::string>& detail, const std::string& tag) {
    for (std::size_t j = 0; j < seq.size(); ++j) {
        CenterSpec C = retruncate_center(seq[j], m2);
        bool va = a.is_permissible_center(C).ok;
        bool vb = b.is_permissible_center(C).ok;
        std::ostringstream os;
        os << tag << " step " << j << ": B=" << va << " B'=" << vb;
        detail.push_back(os.str());
        if (va != vb) return false;
        if (!va) break;  // both reject: the shared sequence ends here
        std::string label = "probe" + std::to_string(j);
        a = a.transform(C, label, false).first;
        b = b.transform(C, label, false).first;
    }
    return true;
}

}  // namespace

ProbeReport pre_equivalence_probe(const BasicObject& B, const BasicObject& B2,
                                  const std::vector<std::vector<CenterSpec>>& sequences) {
    ProbeReport r;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        std::string tag = "sequence " + std::to_string(i);
        if (!probe_walk(B, B2, sequences[i], B.m(), r.detail, tag))
            r.pre_equivalent = false;
        if (!probe_walk(B.fiber(), B2.fiber(), sequences[i], 1, r.detail, tag + " (fiber)"))
            r.fibers_agree = false;
    }
    return r;
}

}  // namespace equires
