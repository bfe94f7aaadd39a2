// The resolution driver: the VW algorithm over the fiber (recursive on
// dimension), the equiresolution conditions E_j over A, principalization of
// id-triples, and embedded resolution.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equires/contact.hpp"
#include "equires/invariants.hpp"

namespace equires {

struct AlgorithmStuck : std::runtime_error {
    explicit AlgorithmStuck(const std::string& what, std::vector<std::string> trace = {})
        : std::runtime_error(what), trace(std::move(trace)) {}
    std::vector<std::string> trace;
};

struct BadInput : std::runtime_error {
    explicit BadInput(const std::string& what) : std::runtime_error(what) {}
};

enum class StepKind { TCodim1, TInductive, Monomial, CarryB3 };
std::string to_string(StepKind k);

// The center selection for one step of the case analysis, applicable over
// the fiber and over A alike.
struct BranchResult {
    CenterSpec center;
    StepKind kind = StepKind::Monomial;
    std::optional<GammaValue> gamma;        // monomial branch
    std::vector<std::string> trace;
    // Inductive branch extras: the inductive object and its center, for the
    // strong-permissibility condition.
    std::optional<BasicObject> inner_object;
    std::optional<CenterSpec> inner_center;
};
// Throws AlgorithmStuck with the failure clause when no center can be
// derived (over A these clauses become E_j failure reasons).
BranchResult derive_center(const BasicObject& B, const OmegaData& om, const TData& td,
                           const std::vector<std::string>& e_minus, int depth = 0);

struct ResolutionStep {
    CenterSpec center;
    StepKind kind = StepKind::Monomial;
    Rat max_omega;                     // before the blow-up
    std::pair<Rat, int> t;             // max(t) before the blow-up
    std::optional<GammaValue> gamma;   // monomial steps only
    std::vector<std::string> e_minus;  // E^- labels at this step
    std::vector<std::string> trace;
    std::string exc_label;
};

struct ResolutionTree {
    std::vector<ResolutionStep> steps;
    std::vector<BasicObject> objects;  // B_0 .. B_ell
    bool resolved = false;
    std::vector<std::string> warnings;

    int ell() const { return static_cast<int>(steps.size()); }
};

// Full algorithmic resolution of a basic object over the fiber field.
ResolutionTree resolve_fiber(const BasicObject& B0, int max_steps = 32);

struct EjDecision {
    bool valid = false;
    CenterSpec center;   // the A-center when valid
    std::string clause;  // failure clause when invalid
};
// Condition E_j for the A-object B_j against step j of the fiber tree.
EjDecision check_condition_Ej(const BasicObject& Bj, const ResolutionStep& fiber_step);

struct EquiresReport {
    int e = 0;
    int ell = 0;
    bool equisolvable = false;
    std::vector<CenterSpec> centers;    // C_0 .. C_{e-1} over A
    std::vector<BasicObject> sequence;  // B_0 .. B_e over A
    std::string failure_clause;         // empty when e == ell
    ResolutionTree fiber_tree;
    std::vector<std::string> notes;
};

// e(B): iterate E_j from j = 0 until failure or j = ell(fiber(B)).
EquiresReport equiresolve(const BasicObject& B, int max_steps = 32);

// Id-triple (W -> S, I, E); the pair carries E.
struct IdTriple {
    SPair pair;
    Ideal ideal;
};

// Equiprincipalization: equiresolve at b = 1 plus the terminal check that
// the final controlled transform is a monomial in the E-members.
EquiresReport principalize(const IdTriple& T, int max_steps = 32);

struct EmbeddedReport {
    bool fiber_ok = false;  // fiber reduced and equidimensional
    int eta = -1;           // first step with X^(0) a union of center components
    EquiresReport eq;       // E_0 .. E_eta over A
    bool success = false;   // fiber_ok, eta found, and e >= eta + 1
    bool snc = false;       // the pair at level eta passes normal-crossings validation
    std::vector<std::string> notes;
};

// Embedded resolution of V(X_ideal) in W via the b = 1 machinery.
EmbeddedReport resolve_embedded(const Ideal& X_ideal, const SPair& W, int max_steps = 48);

}  // namespace equires
