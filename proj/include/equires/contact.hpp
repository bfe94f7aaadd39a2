// Maximal contact: coefficient ideals, homogenized ideals, adapted and
// inductive hypersurfaces, the inductive object B_Z, and strong
// permissibility.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equires/basic_object.hpp"

namespace equires {

struct A3Breach : std::runtime_error {
    explicit A3Breach(const std::string& what) : std::runtime_error(what) {}
};

// C(I/S) = sum over i < b of [Delta^i(I/S)]^(b!/(b-i)), pruned.
Ideal coefficient_ideal(const Ideal& I, int b);

// The same sum with every Delta^i first restricted to the hypersurface
// {zvar = 0} after the witness change (restriction before powering); the
// result lives on the variables without zvar.
Ideal coefficient_ideal_on(const Ideal& I, int b, const Substitution& witness,
                           const std::string& zvar);

// H(I/S, b) = I + Delta(I/S) T + ... + Delta^{b-1}(I/S) T^{b-1} with
// T = Delta^{b-1}(I/S), pruned.
Ideal homogenized_ideal(const Ideal& I, int b);

struct AdaptedHypersurface {
    std::string chart;
    Poly eq;               // an element of Delta^{b-1}(I/S)
    Substitution witness;  // coordinate change making eq the coordinate zvar
    std::string zvar;
    bool a1 = false, a2 = false, a3 = false;

    bool inductive() const { return a1 && a2 && a3; }
};

// Search the generators of Delta^{b-1}(I/S) in the chart for a hypersurface
// normalizable to a chart variable, with A1-A3 evaluated; absent when the
// bounded search finds none (B not recognized as nice here).
std::optional<AdaptedHypersurface> find_adapted_hypersurface(const BasicObject& B,
                                                             const std::string& cid);

// The inductive object B_Z (or (H(B))_Z): restrict the (optionally
// homogenized) coefficient ideal to Z chart by chart; index b!; E_Z from the
// restricted E-members.  The adapted map must cover every chart with
// nonempty Sing.
BasicObject inductive_object(const BasicObject& B,
                             const std::map<std::string, AdaptedHypersurface>& adapted,
                             bool use_homogenized);

// Restrict an ambient center inside Z to the Z-coordinates: drop zvar from
// the vanishing variables; fails (nullopt) when the center is not of that
// form.
std::optional<CenterSpec> restrict_center_to_Z(
    const CenterSpec& C, const std::map<std::string, AdaptedHypersurface>& adapted);
// Lift a center of the inductive object back to the ambient: add zvar to the
// vanishing variables and re-apply the witness change.
CenterSpec lift_center_from_Z(const CenterSpec& CZ,
                              const std::map<std::string, AdaptedHypersurface>& adapted);

struct StrongVerdict {
    bool strong = false;
    PermVerdict ambient;
    PermVerdict inductive;
};
// Def. of strong permissibility: C permissible for both B and B_Z.
StrongVerdict is_strongly_permissible(const BasicObject& B, const BasicObject& BZ,
                                      const CenterSpec& C, const CenterSpec& CZ);

// Strict transform of the adapted hypersurface through one blow-up; A1 is
// re-asserted on the transformed object (Giraud), A2/A3 re-evaluated.
std::map<std::string, AdaptedHypersurface> strict_transform_adapted(
    const std::map<std::string, AdaptedHypersurface>& adapted, const BlowupRecord& rec,
    const BasicObject& B1);

}  // namespace equires
