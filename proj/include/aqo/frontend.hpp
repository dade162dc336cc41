#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aqo/graph.hpp"

namespace aqo {

// Boolean expression tree over literals.  AND/OR nodes are n-ary.
struct BoolExpr {
    enum class Kind { Literal, Not, And, Or };

    Kind kind = Kind::Literal;
    int var = 0;  // dense literal index, Literal nodes only
    std::vector<BoolExpr> children;

    static BoolExpr literal(int v) { return {Kind::Literal, v, {}}; }
    static BoolExpr negation(BoolExpr e);
    static BoolExpr conjunction(std::vector<BoolExpr> es);
    static BoolExpr disjunction(std::vector<BoolExpr> es);

    bool evaluate(const std::vector<int>& bits) const;
    int max_var() const;

    bool operator==(const BoolExpr&) const = default;
};

struct BooleanClause {
    double weight = 1.0;
    BoolExpr expr;
};

// A parsed weighted Boolean optimization problem.  `labels[k]` is the number
// written in the source for dense literal k (b3 -> 3); literals are numbered
// densely in ascending label order.
struct BopProblem {
    std::vector<BooleanClause> clauses;
    std::vector<int> labels;

    int num_vars() const { return static_cast<int>(labels.size()); }
    /// Σ w_i f_i(x), evaluated directly on the Boolean trees.
    double evaluate(const std::vector<int>& bits) const;
};

class ParseError : public Error {
public:
    ParseError(int line, int column, const std::string& what);
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Grammar, one clause per line (`#` starts a comment, keywords are
/// case-insensitive):
///
///     line   := <weight> ':' expr
///     expr   := term | expr OR term
///     term   := factor | term AND factor
///     factor := b<digits> | NOT factor | '(' expr ')'
BopProblem parse_bop(const std::string& text);

/// Renders an expression back into the text grammar, using `labels` for
/// literal names.
std::string to_string(const BoolExpr& e, const std::vector<int>& labels);

using Monomial = std::vector<int>;  // sorted, duplicate-free variable indices

/// Multilinear polynomial over 0/1 variables.  Zero coefficients are never
/// stored and x_i^2 collapses to x_i.
class PseudoBooleanPolynomial {
public:
    PseudoBooleanPolynomial() = default;
    explicit PseudoBooleanPolynomial(int num_vars) : num_vars_(num_vars) {}

    static PseudoBooleanPolynomial constant(int num_vars, double c);
    static PseudoBooleanPolynomial variable(int num_vars, int v);

    int num_vars() const { return num_vars_; }
    void set_num_vars(int n) { num_vars_ = n; }
    const std::map<Monomial, double>& terms() const { return terms_; }

    void add_term(Monomial m, double coefficient);
    double coefficient(const Monomial& m) const;
    int degree() const;
    double evaluate(const std::vector<int>& bits) const;
    double abs_coefficient_sum() const;

    PseudoBooleanPolynomial operator+(const PseudoBooleanPolynomial& o) const;
    PseudoBooleanPolynomial operator-(const PseudoBooleanPolynomial& o) const;
    PseudoBooleanPolynomial operator*(const PseudoBooleanPolynomial& o) const;
    PseudoBooleanPolynomial operator*(double s) const;

    bool operator==(const PseudoBooleanPolynomial&) const = default;

private:
    int num_vars_ = 0;
    std::map<Monomial, double> terms_;
};

/// Truth value as a polynomial: NOT b -> 1 - x, a AND b -> ab,
/// a OR b -> a + b - ab.  `num_vars` sizes the result (defaults to the
/// largest literal + 1).
PseudoBooleanPolynomial arithmetize(const BoolExpr& e, std::optional<int> num_vars = std::nullopt);
PseudoBooleanPolynomial arithmetize(const BooleanClause& c, std::optional<int> num_vars = std::nullopt);

/// Records y = x_a * x_b.
struct AncillaRecord {
    int ancilla = 0;
    int a = 0;
    int b = 0;

    bool operator==(const AncillaRecord&) const = default;
};

/// min over x of x^T P x + constant_offset.  Variables [0, num_original) are
/// the problem variables; the rest are ancillas described by `ancillas`.
struct QuboProblem {
    SymmetricMatrix p;
    double constant_offset = 0.0;
    int num_original = 0;
    std::vector<AncillaRecord> ancillas;
    std::optional<BopProblem> bop;

    int size() const { return static_cast<int>(p.size()); }
    /// x^T P x (without the constant offset).
    double objective(const std::vector<int>& x) const { return p.quadratic_form(x); }
    /// Extends an assignment of the original variables with consistent ancillas.
    std::vector<int> complete(std::vector<int> original) const;
};

/// Packs a polynomial of degree <= 2: P_ii = linear coefficient,
/// P_ij = P_ji = (quadratic coefficient) / 2.
QuboProblem qubo_from_quadratic(const PseudoBooleanPolynomial& poly);

/// Penalty weight used when none is given: 1 + Σ |coefficient|.
double auto_penalty(const PseudoBooleanPolynomial& poly);

/// Rosenberg reduction.  Repeatedly substitutes y = x_a x_b for the pair that
/// occurs in the most terms of degree > 2 (ties: lexicographically smallest
/// pair) and adds M (x_a x_b - 2 x_a y - 2 x_b y + 3 y).
QuboProblem quadratize(const PseudoBooleanPolynomial& poly, std::optional<double> penalty = std::nullopt);

/// quadratize(Σ w_i arithmetize(f_i)); the BOP is kept on the result.
QuboProblem bop_to_qubo(const BopProblem& bop, std::optional<double> penalty = std::nullopt);

}  // namespace aqo
