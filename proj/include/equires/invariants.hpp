// Resolution invariants along permissible sequences: the functions omega_r
// and t_r (fiber-valued), the monomial invariant Gamma with its canonical
// center, the auxiliary objects B' and B'' with amenability detection, and
// the sigma-identity data of the order formula.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "equires/basic_object.hpp"

namespace equires {

struct OutOfDomain : std::runtime_error {
    explicit OutOfDomain(const std::string& what) : std::runtime_error(what) {}
};
struct NotMonomial : std::runtime_error {
    explicit NotMonomial(const std::string& what) : std::runtime_error(what) {}
};
struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(const std::string& what) : std::runtime_error(what) {}
};

// max(omega_r) data: the maximal fiber order of the proper transform over
// Sing(B_r), with the per-chart locus Max(omega) as a reduced fiber ideal.
struct OmegaData {
    Rat max_omega;  // b_r / b
    int b_r = 0;    // maximal nu, an integer
    std::map<std::string, Ideal> locus;  // chart -> fiber ideal of Max(omega)
    bool sing_empty = false;
};
OmegaData max_omega(const BasicObject& B);

// max(t_r) data over Max(omega), relative to the E^- sublist.
struct TData {
    Rat max_omega;
    int n_bar = 0;  // maximal number of E^- members through a point of Max(omega)
    // chart -> the size-n_bar subsets of E^- labels whose intersection with
    // Max(omega) is nonempty in that chart.
    std::map<std::string, std::vector<std::vector<std::string>>> strata;
    std::map<std::string, Ideal> locus;  // chart -> fiber ideal of Max(t)

    std::pair<Rat, int> value() const { return {max_omega, n_bar}; }
};
TData max_t(const BasicObject& B, const OmegaData& om,
            const std::vector<std::string>& e_minus);

// omega_j(C) = nu(proper, C)/b over A; the minimum over components.
// nullopt when the proper transform vanishes along no component.
std::optional<Rat> omega_of_center(const BasicObject& B, const CenterSpec& C);
// sigma_j(C) = nu(controlled, C)/b over A.
std::optional<Rat> sigma_of_center(const BasicObject& B, const CenterSpec& C);

struct OmegaTFlags {
    bool omega_permissible = false;
    bool t_permissible = false;
    std::vector<std::string> notes;
};
// omega-flag: nu(proper, C') = nu(proper fiber, C'0) = b_r per component;
// t-flag additionally: each component lies on exactly n_bar members of E^-.
OmegaTFlags check_omega_t_permissible(const BasicObject& B, const CenterSpec& C,
                                      const OmegaData& om, const TData& td,
                                      const std::vector<std::string>& e_minus);

// The monomial invariant Gamma = (-Gamma1, Gamma2, Gamma3), compared
// lexicographically; Gamma3 holds 1-based E-indices sorted decreasingly.
struct GammaValue {
    int gamma1 = 0;
    Rat gamma2;
    std::vector<int> gamma3;

    bool operator<(const GammaValue& o) const;
    bool operator==(const GammaValue& o) const {
        return gamma1 == o.gamma1 && gamma2 == o.gamma2 && gamma3 == o.gamma3;
    }
    std::string to_string() const;
};

// Premonomial: the fiber proper transform is the unit ideal in every chart
// (so the fiber controlled ideal is the recorded exceptional monomial).
bool is_premonomial(const BasicObject& B);

struct MonomialAnalysis {
    GammaValue max_gamma;
    std::vector<std::string> selected_labels;  // labels of max(Gamma3), decreasing index
    CenterSpec canonical;                      // intersection of the selected members
    bool monomial = false;                     // canonical center is B-permissible
};
// Requires premonomial input (else NotMonomial); enumerates E-subsets per
// chart stratum (guard at 14 present members).
MonomialAnalysis analyze_monomial(const BasicObject& B);

// B' of Def. 7.1: case (alpha) b_r >= b gives (proper, b_r, E); case (beta)
// b_r < b gives (proper^(b-b_r) + Mon^(b_r), b_r(b-b_r), E) where Mon is the
// recorded exceptional monomial factor.
BasicObject b_prime(const BasicObject& B, const OmegaData& om);

// Amenability of a chart: a unique size-n_bar stratum H*_1..H*_n_bar with
// Max(t)|chart = Max(omega)|chart cap H*_1 cap ... cap H*_n_bar.
std::optional<std::vector<std::string>> is_amenable(const TData& td, const std::string& cid);

// B'' on an amenable chart: ideal of B' plus the b'-th powers of the H*
// equations; E replaced by E^+ = E minus E^-.
BasicObject b_doubleprime(const BasicObject& B, const OmegaData& om, const TData& td,
                          const std::vector<std::string>& e_minus);

// Fiber-level image of V(I_child) of a blow-up child inside the parent
// chart, by elimination.
Ideal image_in_parent(const BlowupChart& bc, const std::vector<std::string>& parent_vars,
                      const Ideal& I_child);

// One step of a permissible sequence, with its invariants frozen at creation.
struct StepInfo {
    BasicObject object;
    std::optional<CenterSpec> center;  // center used to reach the next step
    std::string exc_label;
    OmegaData omega;
    TData t;
    int s_index = 0;
    std::vector<std::string> e_minus;   // labels of E_r^-
    std::vector<std::string> e_labels;  // all E-labels at this step
    OmegaTFlags flags;                  // for the center used (if any)
};

class SequenceState {
public:
    explicit SequenceState(BasicObject B0);

    int length() const { return static_cast<int>(steps_.size()); }
    const StepInfo& step(int j) const { return steps_.at(static_cast<std::size_t>(j)); }
    StepInfo& step(int j) { return steps_.at(static_cast<std::size_t>(j)); }
    const StepInfo& current() const { return steps_.back(); }
    int b() const;

    // Transform the current object at C and append the new step with its
    // invariants; records the omega/t flags of C on the closing step.
    void push(const CenterSpec& C, const std::string& exc_label);

private:
    void compute_invariants(StepInfo& info);
    std::vector<StepInfo> steps_;
};

}  // namespace equires
