// Multivariate polynomials with ArtinScalar coefficients over named chart
// variables.  eps is part of the coefficient ring, never a variable.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "equires/artin.hpp"

namespace equires {

struct UnknownVariable : std::runtime_error {
    explicit UnknownVariable(const std::string& v)
        : std::runtime_error("unknown variable: " + v) {}
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at offset " + std::to_string(pos) + ")"), offset(pos) {}
    std::size_t offset;
};

using Exponents = std::vector<int>;

int total_degree(const Exponents& e);

// Graded reverse lexicographic order: returns true if a < b.
bool grevlex_less(const Exponents& a, const Exponents& b);

class Poly {
public:
    Poly() : m_(1) {}
    Poly(std::vector<std::string> vars, int m) : vars_(std::move(vars)), m_(m) {}

    static Poly constant(const std::vector<std::string>& vars, const ArtinScalar& c);
    static Poly constant(const std::vector<std::string>& vars, int m, const Rat& q);
    static Poly variable(const std::vector<std::string>& vars, int m, const std::string& v);

    const std::vector<std::string>& vars() const { return vars_; }
    int m() const { return m_; }
    const std::map<Exponents, ArtinScalar>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Constant term (zero exponent vector), zero scalar if absent.
    ArtinScalar constant_term() const;

    int var_index(const std::string& v) const;

    void add_term(const Exponents& e, const ArtinScalar& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const ArtinScalar& c) const;
    Poly operator*(const Rat& q) const;
    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(int k) const;

    // Formal partial derivative with respect to a chart variable.
    Poly derivative(const std::string& v) const;

    // Substitute one variable by a polynomial over the same variable list.
    Poly substitute(const std::string& v, const Poly& repl) const;

    // Simultaneous map onto another variable list: images[i] is the image of
    // vars()[i] as a Poly over the target variables.
    Poly map_vars(const std::vector<std::string>& target_vars,
                  const std::vector<Poly>& images) const;

    // Reinterpret over a variable superset/reordering (name-matched).
    Poly with_vars(const std::vector<std::string>& new_vars) const;

    // Coefficients projected to their eps^0 part (result has m = 1).
    Poly fiber() const;
    // Image over Q[eps]/(eps^m2).
    Poly retruncate(int m2) const;

    // Min total degree (chart variables only; eps counts 0) of nonzero terms.
    // nullopt for the zero polynomial.
    std::optional<int> order() const;
    // Same, but counting only degrees in the listed variables.
    std::optional<int> order_in(const std::vector<std::string>& subset) const;
    int degree() const;  // max total degree, -1 for zero
    int degree_in(const std::string& v) const;

    // Exact division by a single polynomial; nullopt if not exactly divisible.
    std::optional<Poly> exact_divide(const Poly& divisor) const;

    // Leading term data under grevlex (largest exponent vector).
    const Exponents& leading_exponents() const;
    const ArtinScalar& leading_coeff() const;

    // View over Q with eps adjoined as a last variable (for full-level GB);
    // result has m = 1 and variables vars() + {eps_name}.
    Poly adjoin_eps(const std::string& eps_name = "eps") const;
    // Inverse of adjoin_eps: last variable becomes the eps grading.
    static Poly absorb_eps(const Poly& p, int m);

    std::string to_string() const;
    // Parse the canonical ASCII grammar (terms like `3/2*eps*x^2*y`).
    static Poly parse(const std::string& text, const std::vector<std::string>& vars, int m);

private:
    std::vector<std::string> vars_;
    int m_;
    std::map<Exponents, ArtinScalar> terms_;  // no zero coefficients stored
};

}  // namespace equires
