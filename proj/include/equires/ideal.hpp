// Ideals over A[x1..xn] with cached fiber and full-level Groebner data.
#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "equires/groebner.hpp"
#include "equires/poly.hpp"

namespace equires {

enum class Level { Fiber, Full };

struct NotDivisible : std::runtime_error {
    explicit NotDivisible(std::size_t index)
        : std::runtime_error("generator " + std::to_string(index) + " not divisible"),
          generator_index(index) {}
    std::size_t generator_index;
};

class Ideal {
public:
    Ideal() = default;
    Ideal(std::vector<std::string> vars, int m, std::vector<Poly> gens);

    static Ideal zero(const std::vector<std::string>& vars, int m);
    static Ideal unit(const std::vector<std::string>& vars, int m);
    // Parse generators from the canonical grammar, e.g. {"x^2", "eps*x"}.
    static Ideal parse(const std::vector<std::string>& gens,
                       const std::vector<std::string>& vars, int m);

    const std::vector<std::string>& vars() const { return vars_; }
    int m() const { return m_; }
    const std::vector<Poly>& gens() const { return gens_; }

    bool is_zero() const { return gens_.empty(); }
    bool fiber_is_zero() const;
    bool is_unit(Level level = Level::Full) const;

    Ideal fiber() const;
    Ideal retruncate(int m2) const;

    // Reduced GB of the fiber ideal over Q (cached).
    const std::vector<Poly>& fiber_gb() const;
    // Reduced GB of (gens, eps^m) in Q[vars, eps] (cached); decides full-level
    // membership in A[vars].
    const std::vector<Poly>& full_gb() const;

    bool contains(const Poly& f, Level level) const;
    bool contains(const Ideal& other, Level level) const;
    bool equals(const Ideal& other, Level level) const;
    // Fiber-level radical membership (Rabinowitsch).
    bool radical_contains(const Poly& f) const;

    Ideal operator+(const Ideal& other) const;
    Ideal operator*(const Ideal& other) const;
    Ideal power(int k) const;

    // Drop generators that are full-level members of the ideal of the others.
    Ideal pruned() const;

    // Exact division of every generator by the polynomial g (throws
    // NotDivisible), e.g. the controlled transform's division by w^b.
    Ideal exact_divide(const Poly& g) const;
    // Largest a with I contained in (g^a) by termwise exact division; 0 if g
    // does not divide some generator.  cap bounds the search.
    int max_divisions(const Poly& g, int cap = 256) const;

    // Substitute v = value in every generator (value over the same vars).
    Ideal substitute(const std::string& v, const Poly& value) const;
    // Restrict to the hyperplane v = 0 and drop the variable.
    Ideal restrict_to_hyperplane(const std::string& v) const;
    // Reinterpret over a variable superset/reordering.
    Ideal with_vars(const std::vector<std::string>& new_vars) const;

    // Min order over generators after translating the point to the origin.
    // nullopt signals infinite order (zero ideal at that level).
    std::optional<int> order_at_point(const std::vector<ArtinScalar>& point, Level level) const;
    // Min over generators of the min degree in the listed variables.
    std::optional<int> order_in_vars(const std::vector<std::string>& subset, Level level) const;

    std::vector<std::string> gen_strings() const;

private:
    std::vector<std::string> vars_;
    int m_ = 1;
    std::vector<Poly> gens_;
    mutable std::shared_ptr<std::vector<Poly>> fiber_gb_;
    mutable std::shared_ptr<std::vector<Poly>> full_gb_;
};

}  // namespace equires
