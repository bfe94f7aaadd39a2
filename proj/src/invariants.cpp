#include "equires/invariants.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "equires/delta.hpp"

namespace equires {

namespace {

// Largest k >= 0 such that V(Delta^{k-1}(J)) meets V(locus); both fiber
// ideals over the same variables.
int max_order_on(const Ideal& J, const Ideal& locus) {
    if (basis_contains_one(locus.fiber_gb())) return 0;
    Ideal ladder = J.fiber();
    int k = 0;
    while (!ladder.is_unit(Level::Fiber)) {
        Ideal meet = ladder + locus;
        if (basis_contains_one(meet.fiber_gb())) break;
        ++k;
        ladder = delta(ladder);
    }
    return k;
}

Ideal e_member_ideal(const BasicObject& B, const std::string& cid,
                     const std::vector<std::string>& labels) {
    const Chart& c = B.pair().chart(cid);
    std::vector<Poly> gens;
    for (const auto& H : B.pair().E)
        if (std::find(labels.begin(), labels.end(), H.label) != labels.end() &&
            H.present_in(cid))
            gens.push_back(H.eq(cid));
    return Ideal(c.vars, c.m, std::move(gens));
}

std::vector<std::vector<std::string>> subsets_of_size(const std::vector<std::string>& items,
                                                      int n) {
    std::vector<std::vector<std::string>> out;
    std::vector<int> idx(static_cast<std::size_t>(n));
    std::vector<std::string> cur;
    std::function<void(int, int)> rec = [&](int start, int need) {
        if (need == 0) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= static_cast<int>(items.size()) - need; ++i) {
            cur.push_back(items[static_cast<std::size_t>(i)]);
            rec(i + 1, need - 1);
            cur.pop_back();
        }
    };
    rec(0, n);
    return out;
}

}  // namespace

OmegaData max_omega(const BasicObject& B) {
    OmegaData od;
    od.sing_empty = true;
    std::map<std::string, std::pair<int, Ideal>> per_chart;  // nu, sing ideal
    for (const auto& [cid, cd] : B.data()) {
        Ideal sg = B.sing(cid);
        if (basis_contains_one(sg.fiber_gb())) {
            per_chart.emplace(cid, std::make_pair(-1, sg));
            continue;
        }
        od.sing_empty = false;
        if (cd.proper.fiber_is_zero())
            throw OutOfDomain("proper transform has zero fiber in chart " + cid);
        int nu = cd.proper.is_unit(Level::Fiber) ? 0 : max_order_on(cd.proper, sg);
        per_chart.emplace(cid, std::make_pair(nu, sg));
        od.b_r = std::max(od.b_r, nu);
    }
    od.max_omega = Rat(od.b_r, B.b());
    od.max_omega.canonicalize();
    for (const auto& [cid, cd] : B.data()) {
        const auto& [nu, sg] = per_chart.at(cid);
        const Chart& c = B.pair().chart(cid);
        if (nu < od.b_r) {
            od.locus.emplace(cid, Ideal::unit(c.vars, 1));
            continue;
        }
        Ideal loc = od.b_r == 0 ? sg : (delta_power(cd.proper.fiber(), od.b_r - 1) + sg);
        od.locus.emplace(cid, Ideal(c.vars, 1, groebner_basis(loc.fiber_gb())));
    }
    return od;
}

TData max_t(const BasicObject& B, const OmegaData& om,
            const std::vector<std::string>& e_minus) {
    TData td;
    td.max_omega = om.max_omega;
    std::map<std::string, std::pair<int, std::vector<std::vector<std::string>>>> per_chart;
    for (const auto& [cid, loc] : om.locus) {
        if (basis_contains_one(loc.fiber_gb())) {
            per_chart.emplace(cid, std::make_pair(-1, std::vector<std::vector<std::string>>{}));
            continue;
        }
        std::vector<std::string> present;
        for (const auto& H : B.pair().E)
            if (H.present_in(cid) &&
                std::find(e_minus.begin(), e_minus.end(), H.label) != e_minus.end())
                present.push_back(H.label);
        int chart_n = 0;
        std::vector<std::vector<std::string>> realizing{{}};
        for (int n = static_cast<int>(present.size()); n >= 0; --n) {
            std::vector<std::vector<std::string>> found;
            for (const auto& T : subsets_of_size(present, n)) {
                Ideal meet = loc + e_member_ideal(B, cid, T).fiber();
                if (!basis_contains_one(meet.fiber_gb())) found.push_back(T);
            }
            if (!found.empty()) {
                chart_n = n;
                realizing = std::move(found);
                break;
            }
        }
        per_chart.emplace(cid, std::make_pair(chart_n, std::move(realizing)));
        td.n_bar = std::max(td.n_bar, chart_n);
    }
    for (const auto& [cid, entry] : per_chart) {
        const Chart& c = B.pair().chart(cid);
        const auto& [chart_n, realizing] = entry;
        if (chart_n < td.n_bar) {
            td.locus.emplace(cid, Ideal::unit(c.vars, 1));
            continue;
        }
        td.strata.emplace(cid, realizing);
        // Union of the realizing intersections: the product ideal has the
        // same zero set.
        Ideal loc = Ideal::unit(c.vars, 1);
        for (const auto& T : realizing)
            loc = loc * (om.locus.at(cid).retruncate(1) + e_member_ideal(B, cid, T).fiber());
        td.locus.emplace(cid, Ideal(c.vars, 1, groebner_basis(loc.fiber_gb())));
    }
    return td;
}

namespace {

std::optional<Rat> center_order_quotient(const BasicObject& B, const CenterSpec& C,
                                         bool proper) {
    std::optional<int> worst;
    for (const auto& [cid, comps] : C.by_chart) {
        const ChartData& cd = B.chart_data(cid);
        for (const auto& comp : comps) {
            Ideal changed = apply_substitutions(proper ? cd.proper : cd.ideal, comp.change);
            auto nu = changed.order_in_vars(comp.vanishing_vars, Level::Full);
            if (!nu) return std::nullopt;
            if (!worst || *nu < *worst) worst = *nu;
        }
    }
    if (!worst) return std::nullopt;
    Rat q(*worst, B.b());
    q.canonicalize();
    return q;
}

}  // namespace

std::optional<Rat> omega_of_center(const BasicObject& B, const CenterSpec& C) {
    return center_order_quotient(B, C, true);
}

std::optional<Rat> sigma_of_center(const BasicObject& B, const CenterSpec& C) {
    return center_order_quotient(B, C, false);
}

OmegaTFlags check_omega_t_permissible(const BasicObject& B, const CenterSpec& C,
                                      const OmegaData& om, const TData& td,
                                      const std::vector<std::string>& e_minus) {
    OmegaTFlags f;
    f.omega_permissible = true;
    f.t_permissible = true;
    bool any = false;
    for (const auto& [cid, comps] : C.by_chart) {
        const Chart& c = B.pair().chart(cid);
        const ChartData& cd = B.chart_data(cid);
        for (const auto& comp : comps) {
            any = true;
            std::optional<int> nu, nu0;
            bool principal = false;
            Poly gprin;
            try {
                Ideal changed = apply_substitutions(cd.proper, comp.change);
                nu = changed.order_in_vars(comp.vanishing_vars, Level::Full);
                nu0 = changed.order_in_vars(comp.vanishing_vars, Level::Fiber);
            } catch (const NotACoordinateChange&) {
                if (comp.vanishing_vars.size() != 1) throw;
                // Principal codim-1 component V(g): nu is the g-adic order.
                principal = true;
                gprin = comp.ideal(c.vars, c.m).gens().at(0);
                nu = cd.proper.max_divisions(gprin);
                nu0 = cd.proper.fiber().max_divisions(gprin.fiber());
            }
            if (!(nu && nu0 && *nu == *nu0 && *nu == om.b_r)) {
                f.omega_permissible = false;
                std::ostringstream os;
                os << "chart " << cid << ": nu(proper)=" << (nu ? *nu : -1)
                   << ", nu0=" << (nu0 ? *nu0 : -1) << ", b_r=" << om.b_r;
                f.notes.push_back(os.str());
            }
            // Count the E^- members containing the component.
            int count = 0;
            if (principal) {
                Ideal IG(c.vars, 1, {gprin.fiber()});
                for (const auto& H : B.pair().E) {
                    if (!H.present_in(cid)) continue;
                    if (std::find(e_minus.begin(), e_minus.end(), H.label) ==
                        e_minus.end())
                        continue;
                    if (IG.contains(H.eq(cid).fiber(), Level::Fiber)) ++count;
                }
            } else {
                std::vector<Poly> vgens;
                for (const auto& vv : comp.vanishing_vars)
                    vgens.push_back(Poly::variable(c.vars, c.m, vv));
                Ideal IC(c.vars, c.m, std::move(vgens));
                for (const auto& H : B.pair().E) {
                    if (!H.present_in(cid)) continue;
                    if (std::find(e_minus.begin(), e_minus.end(), H.label) ==
                        e_minus.end())
                        continue;
                    Poly eq = apply_substitutions(H.eq(cid), comp.change);
                    if (IC.contains(eq, Level::Fiber)) ++count;
                }
            }
            if (count != td.n_bar) {
                f.t_permissible = false;
                std::ostringstream os;
                os << "chart " << cid << ": component meets " << count
                   << " members of E^-, expected " << td.n_bar;
                f.notes.push_back(os.str());
            }
        }
    }
    if (!any) {
        f.omega_permissible = false;
        f.t_permissible = false;
        f.notes.push_back("empty center");
    }
    if (!f.omega_permissible) f.t_permissible = false;
    return f;
}

bool GammaValue::operator<(const GammaValue& o) const {
    if (gamma1 != o.gamma1) return -gamma1 < -o.gamma1;
    if (gamma2 != o.gamma2) return gamma2 < o.gamma2;
    std::size_t n = std::max(gamma3.size(), o.gamma3.size());
    for (std::size_t i = 0; i < n; ++i) {
        int a = i < gamma3.size() ? gamma3[i] : 0;
        int b = i < o.gamma3.size() ? o.gamma3[i] : 0;
        if (a != b) return a < b;
    }
    return false;
}

std::string GammaValue::to_string() const {
    std::ostringstream os;
    os << "(" << -gamma1 << ", " << gamma2.get_str() << ", (";
    for (std::size_t i = 0; i < gamma3.size(); ++i) os << (i ? "," : "") << gamma3[i];
    os << "))";
    return os.str();
}

bool is_premonomial(const BasicObject& B) {
    for (const auto& [cid, cd] : B.data())
        if (!cd.proper.is_unit(Level::Fiber)) return false;
    return true;
}

MonomialAnalysis analyze_monomial(const BasicObject& B) {
    if (!is_premonomial(B)) throw NotMonomial("fiber proper transform is not the unit ideal");
    // 1-based E-index by position in the ordered tuple.
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < B.pair().E.size(); ++i)
        index[B.pair().E[i].label] = static_cast<int>(i) + 1;

    MonomialAnalysis out;
    bool seen = false;
    for (const auto& [cid, cd] : B.data()) {
        Ideal sg = B.sing(cid);
        if (basis_contains_one(sg.fiber_gb())) continue;
        // Candidate divisors: present with positive recorded exponent.
        std::vector<std::string> labels;
        for (const auto& H : B.pair().E) {
            auto it = cd.exponents.find(H.label);
            if (H.present_in(cid) && it != cd.exponents.end() && it->second > 0)
                labels.push_back(H.label);
        }
        if (labels.size() > 14)
            throw GuardExceeded("too many exceptional divisors for Gamma enumeration");
        int L = static_cast<int>(labels.size());
        for (int mask = 0; mask < (1 << L); ++mask) {
            std::vector<std::string> T;
            for (int i = 0; i < L; ++i)
                if (mask & (1 << i)) T.push_back(labels[static_cast<std::size_t>(i)]);
            Ideal stratum = sg + e_member_ideal(B, cid, T).fiber();
            if (basis_contains_one(stratum.fiber_gb())) continue;
            // A point with alpha supported exactly on T must avoid the others.
            bool exact = true;
            for (int i = 0; i < L && exact; ++i) {
                if (mask & (1 << i)) continue;
                Ideal Hi = e_member_ideal(B, cid, {labels[static_cast<std::size_t>(i)]}).fiber();
                for (const auto& g : Hi.gens())
                    if (stratum.radical_contains(g)) exact = false;
            }
            if (!exact) continue;
            // alpha-vector on this stratum.
            std::vector<std::pair<int, int>> alpha;  // (E-index, exponent)
            for (const auto& lbl : T) alpha.emplace_back(index.at(lbl), cd.exponents.at(lbl));
            int k = static_cast<int>(alpha.size());
            // Gamma1: smallest subset size reaching b.
            int g1 = -1;
            Rat g2;
            std::vector<int> g3;
            for (int p = 1; p <= k && g1 < 0; ++p) {
                long best_sum = -1;
                std::vector<int> best_idx;
                for (int sm = 0; sm < (1 << k); ++sm) {
                    if (__builtin_popcount(static_cast<unsigned>(sm)) != p) continue;
                    long sum = 0;
                    std::vector<int> idxs;
                    for (int i = 0; i < k; ++i)
                        if (sm & (1 << i)) {
                            sum += alpha[static_cast<std::size_t>(i)].second;
                            idxs.push_back(alpha[static_cast<std::size_t>(i)].first);
                        }
                    if (sum < B.b()) continue;
                    std::sort(idxs.rbegin(), idxs.rend());
                    if (sum > best_sum) {
                        best_sum = sum;
                        best_idx = idxs;
                    } else if (sum == best_sum &&
                               std::lexicographical_compare(best_idx.begin(), best_idx.end(),
                                                            idxs.begin(), idxs.end())) {
                        best_idx = idxs;
                    }
                }
                if (best_sum >= 0) {
                    g1 = p;
                    g2 = Rat(best_sum, B.b());
                    g2.canonicalize();
                    g3 = best_idx;
                }
            }
            if (g1 < 0) continue;  // the stratum is not singular for the monomial
            GammaValue gv{g1, g2, g3};
            if (!seen || out.max_gamma < gv) {
                seen = true;
                out.max_gamma = gv;
            }
        }
    }
    if (!seen) {
        // Empty singular locus: nothing to do.
        out.monomial = true;
        return out;
    }
    // Selected labels from max(Gamma3), highest index first.
    std::map<int, std::string> by_index;
    for (const auto& [lbl, i] : index) by_index[i] = lbl;
    for (int i : out.max_gamma.gamma3) out.selected_labels.push_back(by_index.at(i));

    // Canonical center: intersection of the selected members, chart by chart.
    for (const auto& [cid, cd] : B.data()) {
        bool all_present = true;
        for (const auto& lbl : out.selected_labels) {
            bool here = false;
            for (const auto& H : B.pair().E)
                if (H.label == lbl && H.present_in(cid)) here = true;
            if (!here) all_present = false;
        }
        if (!all_present) continue;
        Ideal meet = e_member_ideal(B, cid, out.selected_labels);
        if (basis_contains_one(meet.fiber_gb())) continue;  // empty in this chart
        auto comp = normalize_center_ideal(meet);
        if (!comp) continue;
        out.canonical.by_chart[cid].push_back(*comp);
    }
    out.monomial = !out.canonical.empty() && B.is_permissible_center(out.canonical).ok;
    return out;
}

BasicObject b_prime(const BasicObject& B, const OmegaData& om) {
    std::map<std::string, ChartData> data;
    int b = B.b();
    int br = om.b_r;
    if (br >= b) {
        for (const auto& [cid, cd] : B.data()) {
            ChartData nd;
            nd.ideal = cd.proper;
            nd.proper = cd.proper;
            data.emplace(cid, std::move(nd));
        }
        return BasicObject::from_charts(B.pair(), std::move(data), br, B.step());
    }
    // Case (beta): proper^(b-br) + Mon^(br) with index br*(b-br).
    for (const auto& [cid, cd] : B.data()) {
        const Chart& c = B.pair().chart(cid);
        Ideal mono = Ideal::unit(c.vars, c.m);
        for (const auto& [label, a] : cd.exponents) {
            if (a == 0) continue;
            for (const auto& H : B.pair().E)
                if (H.label == label && H.present_in(cid))
                    mono = mono * Ideal(c.vars, c.m, {H.eq(cid)}).power(a);
        }
        ChartData nd;
        nd.ideal = (cd.proper.power(b - br) + mono.power(br)).pruned();
        nd.proper = nd.ideal;
        data.emplace(cid, std::move(nd));
    }
    return BasicObject::from_charts(B.pair(), std::move(data), br * (b - br), B.step());
}

std::optional<std::vector<std::string>> is_amenable(const TData& td, const std::string& cid) {
    auto it = td.strata.find(cid);
    if (it == td.strata.end()) return std::vector<std::string>{};  // chart misses Max(t)
    if (it->second.size() != 1) return std::nullopt;
    return it->second.front();
}

BasicObject b_doubleprime(const BasicObject& B, const OmegaData& om, const TData& td,
                          const std::vector<std::string>& e_minus) {
    BasicObject BP = b_prime(B, om);
    int bp = BP.b();
    std::map<std::string, ChartData> data;
    for (const auto& [cid, cd] : BP.data()) {
        const Chart& c = B.pair().chart(cid);
        auto stars = is_amenable(td, cid);
        if (!stars) throw OutOfDomain("chart " + cid + " is not amenable");
        Ideal J = cd.ideal;
        for (const auto& lbl : *stars)
            J = J + e_member_ideal(B, cid, {lbl}).power(bp);
        ChartData nd;
        nd.ideal = J.pruned();
        nd.proper = nd.ideal;
        data.emplace(cid, std::move(nd));
    }
    SPair pair = B.pair();
    std::vector<Hypersurface> eplus;
    for (const auto& H : pair.E)
        if (std::find(e_minus.begin(), e_minus.end(), H.label) == e_minus.end())
            eplus.push_back(H);
    pair.E = std::move(eplus);
    return BasicObject::from_charts(std::move(pair), std::move(data), bp, B.step());
}

Ideal image_in_parent(const BlowupChart& bc, const std::vector<std::string>& parent_vars,
                      const Ideal& I_child) {
    // Fiber-level elimination: child variables first (the elimination block),
    // then the parent copies.
    std::vector<std::string> child_renamed;
    for (const auto& v : I_child.vars()) child_renamed.push_back(v + "~");
    std::vector<std::string> big(child_renamed);
    big.insert(big.end(), parent_vars.begin(), parent_vars.end());

    std::vector<Poly> gens;
    Ideal child_fiber = I_child.fiber();
    for (const auto& g : child_fiber.gens()) {
        std::vector<Poly> images;
        for (const auto& v : child_renamed) images.push_back(Poly::variable(big, 1, v));
        gens.push_back(g.map_vars(big, images));
    }
    for (const auto& v : parent_vars) {
        Poly rhs = bc.var_images.at(v).fiber();
        std::vector<Poly> images;
        for (const auto& cv : child_renamed) images.push_back(Poly::variable(big, 1, cv));
        gens.push_back(Poly::variable(big, 1, v) - rhs.map_vars(big, images));
    }
    auto basis = groebner_basis(gens, static_cast<int>(child_renamed.size()));
    auto kept = eliminate(basis, static_cast<int>(child_renamed.size()));
    std::vector<Poly> out;
    for (const auto& g : kept) out.push_back(g.with_vars(parent_vars));
    Ideal img(parent_vars, 1, std::move(out));
    // Undo the center's coordinate change (new coordinates back to old).
    for (auto it = bc.center_change.rbegin(); it != bc.center_change.rend(); ++it)
        img = img.substitute(it->var, it->replacement.fiber().with_vars(parent_vars));
    return img;
}

SequenceState::SequenceState(BasicObject B0) {
    StepInfo info;
    info.object = std::move(B0);
    for (const auto& H : info.object.pair().E) info.e_labels.push_back(H.label);
    compute_invariants(info);
    steps_.push_back(std::move(info));
}

int SequenceState::b() const { return steps_.front().object.b(); }

void SequenceState::compute_invariants(StepInfo& info) {
    info.omega = max_omega(info.object);
    // s-index: smallest s with max(omega_s) = max(omega_r).
    info.s_index = static_cast<int>(steps_.size());
    for (std::size_t j = 0; j < steps_.size(); ++j) {
        if (steps_[j].omega.max_omega == info.omega.max_omega) {
            info.s_index = static_cast<int>(j);
            break;
        }
    }
    // E^-: members that are strict transforms of those present at step s.
    const std::vector<std::string>& base = info.s_index == static_cast<int>(steps_.size())
                                               ? info.e_labels
                                               : steps_[static_cast<std::size_t>(info.s_index)]
                                                     .e_labels;
    for (const auto& lbl : info.e_labels)
        if (std::find(base.begin(), base.end(), lbl) != base.end())
            info.e_minus.push_back(lbl);
    info.t = max_t(info.object, info.omega, info.e_minus);
}

void SequenceState::push(const CenterSpec& C, const std::string& exc_label) {
    StepInfo& cur = steps_.back();
    cur.center = C;
    cur.exc_label = exc_label;
    cur.flags = check_omega_t_permissible(cur.object, C, cur.omega, cur.t, cur.e_minus);

    StepInfo next;
    next.object = cur.object.transform(C, exc_label).first;
    for (const auto& H : next.object.pair().E) next.e_labels.push_back(H.label);
    compute_invariants(next);
    steps_.push_back(std::move(next));
}

}  // namespace equires
