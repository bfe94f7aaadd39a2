// Affine charts of the smooth ambient W -> S, S-pairs (W -> S, E),
// coordinate changes, centers in coordinate form, and chart blow-ups.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equires/ideal.hpp"

namespace equires {

struct NotACoordinateChange : std::runtime_error {
    explicit NotACoordinateChange(const std::string& what) : std::runtime_error(what) {}
};

struct PermissibilityError : std::runtime_error {
    explicit PermissibilityError(const std::string& clause) : std::runtime_error(clause) {}
};

// Defines a new coordinate: the variable `var` is replaced so that the
// polynomial `replacement` (unit linear coefficient in `var`, evaluated in
// the old coordinates) becomes the new coordinate of that name.
struct Substitution {
    std::string var;
    Poly replacement;
};

// Classify an equation of the form c*var + d (c a unit) as the hypersurface
// var = -d/c; nullopt for anything nonlinear or multi-variable.
std::optional<std::pair<std::string, ArtinScalar>> as_var_minus_const(const Poly& f);

// Rewrite p through the inverse of the substitution, i.e. express p in the
// new coordinates.  Requires replacement = c*var + h with c a unit; solves
// for var iteratively (eps-nilpotency makes self-references converge).
Poly apply_substitution(const Poly& p, const Substitution& s);
Poly apply_substitutions(const Poly& p, const std::vector<Substitution>& subs);
Ideal apply_substitutions(const Ideal& I, const std::vector<Substitution>& subs);

struct Chart {
    std::string id;
    std::vector<std::string> vars;
    int m = 1;
    std::vector<Substitution> change_log;
    // Birth data for blow-up children.
    std::optional<std::string> parent;
    int birth_step = -1;
    std::string kept_var;                    // exceptional coordinate in this chart
    std::vector<std::string> birth_vanishing;  // center variables in the parent
};

struct Hypersurface {
    std::string label;
    std::map<std::string, Poly> eqs;  // chart id -> equation; missing = absent

    bool present_in(const std::string& chart_id) const { return eqs.count(chart_id) > 0; }
    const Poly& eq(const std::string& chart_id) const { return eqs.at(chart_id); }
};

struct SPair {
    std::vector<Chart> charts;
    std::vector<Hypersurface> E;

    const Chart& chart(const std::string& id) const;
    Chart& chart(const std::string& id);
    int m() const { return charts.empty() ? 1 : charts.front().m; }
    int dim() const { return charts.empty() ? 0 : static_cast<int>(charts.front().vars.size()); }
};

// One component of a center inside one chart: after applying `change`, the
// component is V(vanishing_vars).
struct CenterComponent {
    std::vector<Substitution> change;
    std::vector<std::string> vanishing_vars;

    Ideal ideal(const std::vector<std::string>& vars, int m) const;
};

struct CenterSpec {
    std::map<std::string, std::vector<CenterComponent>> by_chart;

    bool empty() const;
    // Max codimension over components (the component count of vanishing vars).
    int codim() const;
    std::string describe() const;
};

struct PairDiagnostics {
    bool ok = true;
    std::vector<std::string> violations;
};

// Normal-crossings and S-hypersurface validation of (W, E).
PairDiagnostics validate_pair(const SPair& p);

// Validity of a center against the pair: coordinate form, normal crossings
// with E in every chart where present.
PairDiagnostics validate_center(const SPair& p, const CenterSpec& C);

struct BlowupChart {
    std::string id;
    std::string parent_id;
    std::string kept_var;
    // Image of each parent variable in the new chart (after the center's
    // coordinate change), over the new chart's variables.
    std::vector<Substitution> center_change;  // applied to the parent first
    std::map<std::string, Poly> var_images;
};

struct BlowupRecord {
    int step = -1;
    std::string exc_label;
    bool trivial_codim1 = false;
    std::vector<BlowupChart> new_charts;
    std::vector<std::string> kept_charts;    // charts not meeting the center
    std::vector<std::string> dropped_charts;  // replaced by children
};

// Blow up the pair at the center; `step` and `exc_label` name the new
// exceptional divisor.  Codim-1 components leave the ambient untouched (the
// record flags trivial_codim1); the divisor is still appended to E.
// The caller transforms resident ideals chart-by-chart via the record.
std::pair<SPair, BlowupRecord> blowup(const SPair& p, const CenterSpec& C, int step,
                                      const std::string& exc_label);

// Transport a parent-chart polynomial into a blow-up child chart.
Poly transform_poly(const Poly& p, const BlowupChart& bc,
                    const std::vector<std::string>& new_vars);
Ideal transform_ideal(const Ideal& I, const BlowupChart& bc,
                      const std::vector<std::string>& new_vars);

// Center with all resident polynomials re-truncated to Q[eps]/(eps^m2).
CenterSpec retruncate_center(const CenterSpec& C, int m2);

// Bounded substitution search: write V(f) as a coordinate hypersurface.
// Returns the substitution (var and change) or nullopt.  Variables listed in
// `avoid` are not solved for (e.g. variables carrying E-members).
std::optional<Substitution> solve_hypersurface(const Poly& f,
                                               const std::vector<std::string>& avoid = {});

// Normalize an ideal to a coordinate center component: find generators that
// after bounded substitutions become distinct variables generating the ideal
// exactly (full level).  nullopt when D is not of that form (e.g. (x, eps)).
std::optional<CenterComponent> normalize_center_ideal(const Ideal& D,
                                                      const std::vector<std::string>& avoid = {});

}  // namespace equires
