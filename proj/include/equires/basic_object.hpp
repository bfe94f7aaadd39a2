// The A-basic object B = (W -> S, I, b, E), distributed over charts, with
// permissible-center validation and the total/controlled/proper transforms.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "equires/chart.hpp"
#include "equires/delta.hpp"
#include "equires/ideal.hpp"

namespace equires {

struct InvariantBreach : std::runtime_error {
    explicit InvariantBreach(const std::string& what) : std::runtime_error(what) {}
};

struct ChartData {
    Ideal ideal;    // controlled transform I_j in this chart
    Ideal proper;   // proper transform Ibar_j
    std::map<std::string, int> exponents;  // exceptional label -> a_i
};

struct PermVerdict {
    bool ok = false;
    // Orders of the worst component: full-level nu and fiber nu.
    int nu_full = -1;
    int nu_fiber = -1;
    std::vector<std::string> notes;
};

class BasicObject {
public:
    BasicObject() = default;
    // Single-chart constructor; exceptional exponents of the given E-members
    // are extracted from I so that an input monomial object has a unit proper
    // transform.
    static BasicObject make(SPair pair, const Ideal& ideal, int b);
    static BasicObject from_charts(SPair pair, std::map<std::string, ChartData> data, int b,
                                   int step);

    const SPair& pair() const { return pair_; }
    SPair& pair() { return pair_; }
    int b() const { return b_; }
    int m() const { return pair_.m(); }
    int step() const { return step_; }
    const std::map<std::string, ChartData>& data() const { return data_; }
    const ChartData& chart_data(const std::string& cid) const { return data_.at(cid); }

    BasicObject fiber() const;
    BasicObject retruncate(int m2) const;

    // Reduced fiber ideal of Sing(B) in the chart (cached per call site).
    Ideal sing(const std::string& cid) const;
    bool sing_empty() const;

    // Per-component: nu(I, C') = nu(I0, C'0) >= b.
    PermVerdict is_permissible_center(const CenterSpec& C) const;

    // Blow up at a permissible center; returns the transformed object and the
    // blow-up record.  `check` toggles the permissibility precondition.
    std::pair<BasicObject, BlowupRecord> transform(const CenterSpec& C,
                                                   const std::string& exc_label,
                                                   bool check = true) const;

    // Maximal a with the total transform inside (w^a) in the given child
    // chart data (exposed for tests).
    static int proper_transform_exponent(const Ideal& total, const Poly& w);

    // Factorization invariant: product of exceptional powers times the proper
    // transform equals the controlled ideal, full level, in every chart.
    bool factorization_holds() const;

private:
    SPair pair_;
    int b_ = 1;
    int step_ = 0;
    std::map<std::string, ChartData> data_;
};

// Bounded pre-/W-equivalence probe: each candidate is a sequence of centers,
// applied step by step to both objects.  At every step the permissibility
// verdicts must agree; when both objects accept the center, both are
// transformed and the walk continues.  The fiber walk repeats this for the
// special fibers (the extra condition of W-equivalence).
struct ProbeReport {
    bool pre_equivalent = true;  // full-level verdicts agree along every sequence
    bool fibers_agree = true;    // fiber-level verdicts agree as well
    std::vector<std::string> detail;
};
ProbeReport pre_equivalence_probe(const BasicObject& B, const BasicObject& B2,
                                  const std::vector<std::vector<CenterSpec>>& sequences);

}  // namespace equires
