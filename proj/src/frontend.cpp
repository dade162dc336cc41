#include "aqo/frontend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace aqo {

BoolExpr BoolExpr::negation(BoolExpr e) {
    BoolExpr out{Kind::Not, 0, {}};
    out.children.push_back(std::move(e));
    return out;
}

BoolExpr BoolExpr::conjunction(std::vector<BoolExpr> es) {
    if (es.size() == 1) return std::move(es.front());
    return {Kind::And, 0, std::move(es)};
}

BoolExpr BoolExpr::disjunction(std::vector<BoolExpr> es) {
    if (es.size() == 1) return std::move(es.front());
    return {Kind::Or, 0, std::move(es)};
}

bool BoolExpr::evaluate(const std::vector<int>& bits) const {
    switch (kind) {
        case Kind::Literal: return bits.at(static_cast<std::size_t>(var)) != 0;
        case Kind::Not: return !children.front().evaluate(bits);
        case Kind::And:
            return std::all_of(children.begin(), children.end(),
                               [&](const BoolExpr& c) { return c.evaluate(bits); });
        case Kind::Or:
            return std::any_of(children.begin(), children.end(),
                               [&](const BoolExpr& c) { return c.evaluate(bits); });
    }
    return false;
}

int BoolExpr::max_var() const {
    int m = kind == Kind::Literal ? var : -1;
    for (const auto& c : children) m = std::max(m, c.max_var());
    return m;
}

double BopProblem::evaluate(const std::vector<int>& bits) const {
    double total = 0.0;
    for (const auto& c : clauses) total += c.weight * (c.expr.evaluate(bits) ? 1.0 : 0.0);
    return total;
}

namespace {

std::string format_parse_error(int line, int column, const std::string& what) {
    std::ostringstream msg;
    msg << "line " << line << ", column " << column << ": " << what;
    return msg.str();
}

enum class Tok { Literal, And, Or, Not, LParen, RParen, End };

struct Token {
    Tok kind;
    int label = 0;
    int column = 0;
    std::string text;
};

class LineParser {
public:
    LineParser(std::string_view text, int line, int column_offset)
        : text_(text), line_(line), offset_(column_offset) {
        advance();
    }

    BoolExpr parse() {
        BoolExpr e = parse_expr();
        if (cur_.kind != Tok::End) fail(cur_.column, "unexpected '" + cur_.text + "'");
        return e;
    }

    const std::set<int>& labels() const { return labels_; }

private:
    [[noreturn]] void fail(int column, const std::string& what) const {
        throw ParseError(line_, column, what);
    }

    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        const int column = offset_ + static_cast<int>(pos_) + 1;
        if (pos_ >= text_.size()) {
            cur_ = {Tok::End, 0, column, "end of line"};
            return;
        }
        const char c = text_[pos_];
        if (c == '(' || c == ')') {
            ++pos_;
            cur_ = {c == '(' ? Tok::LParen : Tok::RParen, 0, column, std::string(1, c)};
            return;
        }
        std::size_t end = pos_;
        while (end < text_.size() && std::isalnum(static_cast<unsigned char>(text_[end]))) ++end;
        if (end == pos_) {
            end = pos_ + 1;
            while (end < text_.size() && !std::isspace(static_cast<unsigned char>(text_[end])) &&
                   text_[end] != '(' && text_[end] != ')')
                ++end;
            fail(column, "unknown token '" + std::string(text_.substr(pos_, end - pos_)) + "'");
        }
        std::string word(text_.substr(pos_, end - pos_));
        pos_ = end;
        std::string upper = word;
        for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (upper == "AND") {
            cur_ = {Tok::And, 0, column, word};
        } else if (upper == "OR") {
            cur_ = {Tok::Or, 0, column, word};
        } else if (upper == "NOT") {
            cur_ = {Tok::Not, 0, column, word};
        } else if (upper.size() > 1 && upper[0] == 'B' &&
                   std::all_of(upper.begin() + 1, upper.end(),
                               [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            if (upper.size() > 10) fail(column, "literal index too large in '" + word + "'");
            cur_ = {Tok::Literal, std::stoi(upper.substr(1)), column, word};
        } else {
            fail(column, "unknown token '" + word + "'");
        }
    }

    BoolExpr parse_expr() {
        std::vector<BoolExpr> terms;
        terms.push_back(parse_term());
        while (cur_.kind == Tok::Or) {
            advance();
            terms.push_back(parse_term());
        }
        return BoolExpr::disjunction(std::move(terms));
    }

    BoolExpr parse_term() {
        std::vector<BoolExpr> factors;
        factors.push_back(parse_factor());
        while (cur_.kind == Tok::And) {
            advance();
            factors.push_back(parse_factor());
        }
        return BoolExpr::conjunction(std::move(factors));
    }

    BoolExpr parse_factor() {
        switch (cur_.kind) {
            case Tok::Literal: {
                const int label = cur_.label;
                labels_.insert(label);
                advance();
                return BoolExpr::literal(label);
            }
            case Tok::Not:
                advance();
                return BoolExpr::negation(parse_factor());
            case Tok::LParen: {
                const int open = cur_.column;
                advance();
                BoolExpr e = parse_expr();
                if (cur_.kind != Tok::RParen) fail(cur_.column, "expected ')' to close '(' at column " + std::to_string(open));
                advance();
                return e;
            }
            default:
                fail(cur_.column, "expected a literal, NOT or '(' but found '" + cur_.text + "'");
        }
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int line_;
    int offset_;
    Token cur_{Tok::End, 0, 0, {}};
    std::set<int> labels_;
};

void relabel(BoolExpr& e, const std::vector<int>& labels) {
    if (e.kind == BoolExpr::Kind::Literal) {
        e.var = static_cast<int>(std::lower_bound(labels.begin(), labels.end(), e.var) - labels.begin());
    }
    for (auto& c : e.children) relabel(c, labels);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : Error(format_parse_error(line, column, what)), line_(line), column_(column) {}

BopProblem parse_bop(const std::string& text) {
    BopProblem out;
    std::set<int> all_labels;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        if (start == line.size()) continue;

        const auto colon = line.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(line_no, static_cast<int>(start) + 1, "missing '<weight> :' prefix");
        std::string weight_text(line.substr(start, colon - start));
        while (!weight_text.empty() && std::isspace(static_cast<unsigned char>(weight_text.back())))
            weight_text.pop_back();
        if (weight_text.empty()) throw ParseError(line_no, static_cast<int>(start) + 1, "missing weight");
        std::size_t used = 0;
        double weight = 0.0;
        try {
            weight = std::stod(weight_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != weight_text.size() || !std::isfinite(weight))
            throw ParseError(line_no, static_cast<int>(start) + 1, "invalid weight '" + weight_text + "'");

        LineParser parser(line.substr(colon + 1), line_no, static_cast<int>(colon) + 1);
        BooleanClause clause{weight, parser.parse()};
        all_labels.insert(parser.labels().begin(), parser.labels().end());
        out.clauses.push_back(std::move(clause));
    }
    if (out.clauses.empty()) throw ParseError(line_no == 0 ? 1 : line_no, 1, "no clauses");
    out.labels.assign(all_labels.begin(), all_labels.end());
    for (auto& c : out.clauses) relabel(c.expr, out.labels);
    return out;
}

std::string to_string(const BoolExpr& e, const std::vector<int>& labels) {
    switch (e.kind) {
        case BoolExpr::Kind::Literal: {
            const int label = e.var < static_cast<int>(labels.size()) ? labels[e.var] : e.var;
            return "b" + std::to_string(label);
        }
        case BoolExpr::Kind::Not: {
            const auto& child = e.children.front();
            const bool wrap = child.kind == BoolExpr::Kind::And || child.kind == BoolExpr::Kind::Or;
            return "NOT " + (wrap ? "(" + to_string(child, labels) + ")" : to_string(child, labels));
        }
        case BoolExpr::Kind::And:
        case BoolExpr::Kind::Or: {
            const bool is_and = e.kind == BoolExpr::Kind::And;
            std::string out;
            for (std::size_t k = 0; k < e.children.size(); ++k) {
                if (k) out += is_and ? " AND " : " OR ";
                const auto& c = e.children[k];
                const bool wrap = c.kind == BoolExpr::Kind::Or || (!is_and && c.kind == BoolExpr::Kind::And);
                out += wrap ? "(" + to_string(c, labels) + ")" : to_string(c, labels);
            }
            return out;
        }
    }
    return {};
}

// --- polynomials -----------------------------------------------------------

PseudoBooleanPolynomial PseudoBooleanPolynomial::constant(int num_vars, double c) {
    PseudoBooleanPolynomial p(num_vars);
    p.add_term({}, c);
    return p;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::variable(int num_vars, int v) {
    PseudoBooleanPolynomial p(num_vars);
    p.add_term({v}, 1.0);
    return p;
}

void PseudoBooleanPolynomial::add_term(Monomial m, double coefficient) {
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (!m.empty()) num_vars_ = std::max(num_vars_, m.back() + 1);
    auto [it, inserted] = terms_.try_emplace(std::move(m), coefficient);
    if (!inserted) it->second += coefficient;
    if (it->second == 0.0) terms_.erase(it);
}

double PseudoBooleanPolynomial::coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? 0.0 : it->second;
}

int PseudoBooleanPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.size());
    return static_cast<int>(d);
}

double PseudoBooleanPolynomial::evaluate(const std::vector<int>& bits) const {
    double total = 0.0;
    for (const auto& [m, c] : terms_) {
        bool on = true;
        for (int v : m) on = on && bits.at(static_cast<std::size_t>(v)) != 0;
        if (on) total += c;
    }
    return total;
}

double PseudoBooleanPolynomial::abs_coefficient_sum() const {
    double s = 0.0;
    for (const auto& [m, c] : terms_) s += std::abs(c);
    return s;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::operator+(const PseudoBooleanPolynomial& o) const {
    PseudoBooleanPolynomial out = *this;
    out.num_vars_ = std::max(num_vars_, o.num_vars_);
    for (const auto& [m, c] : o.terms_) out.add_term(m, c);
    return out;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::operator-(const PseudoBooleanPolynomial& o) const {
    return *this + o * -1.0;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::operator*(const PseudoBooleanPolynomial& o) const {
    PseudoBooleanPolynomial out(std::max(num_vars_, o.num_vars_));
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m;
            std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
            out.add_term(std::move(m), ca * cb);
        }
    }
    return out;
}

PseudoBooleanPolynomial PseudoBooleanPolynomial::operator*(double s) const {
    PseudoBooleanPolynomial out(num_vars_);
    if (s == 0.0) return out;
    for (const auto& [m, c] : terms_) out.add_term(m, c * s);
    return out;
}

PseudoBooleanPolynomial arithmetize(const BoolExpr& e, std::optional<int> num_vars) {
    const int n = num_vars.value_or(e.max_var() + 1);
    switch (e.kind) {
        case BoolExpr::Kind::Literal: return PseudoBooleanPolynomial::variable(n, e.var);
        case BoolExpr::Kind::Not:
            return PseudoBooleanPolynomial::constant(n, 1.0) - arithmetize(e.children.front(), n);
        case BoolExpr::Kind::And: {
            auto acc = PseudoBooleanPolynomial::constant(n, 1.0);
            for (const auto& c : e.children) acc = acc * arithmetize(c, n);
            return acc;
        }
        case BoolExpr::Kind::Or: {
            auto acc = arithmetize(e.children.front(), n);
            for (std::size_t k = 1; k < e.children.size(); ++k) {
                auto b = arithmetize(e.children[k], n);
                acc = acc + b - acc * b;
            }
            return acc;
        }
    }
    return PseudoBooleanPolynomial(n);
}

PseudoBooleanPolynomial arithmetize(const BooleanClause& c, std::optional<int> num_vars) {
    return arithmetize(c.expr, num_vars) * c.weight;
}

// --- quadratization --------------------------------------------------------

std::vector<int> QuboProblem::complete(std::vector<int> original) const {
    original.resize(static_cast<std::size_t>(size()), 0);
    for (const auto& rec : ancillas) original[rec.ancilla] = original[rec.a] & original[rec.b];
    return original;
}

QuboProblem qubo_from_quadratic(const PseudoBooleanPolynomial& poly) {
    if (poly.degree() > 2) throw Error("qubo_from_quadratic: polynomial degree exceeds 2");
    QuboProblem q;
    q.p = SymmetricMatrix(static_cast<std::size_t>(poly.num_vars()));
    q.num_original = poly.num_vars();
    for (const auto& [m, c] : poly.terms()) {
        if (m.empty()) {
            q.constant_offset += c;
        } else if (m.size() == 1) {
            q.p.add(m[0], m[0], c);
        } else {
            q.p.add(m[0], m[1], c / 2.0);
        }
    }
    return q;
}

double auto_penalty(const PseudoBooleanPolynomial& poly) { return 1.0 + poly.abs_coefficient_sum(); }

QuboProblem quadratize(const PseudoBooleanPolynomial& poly, std::optional<double> penalty) {
    if (penalty && !(*penalty > 0.0)) throw Error("quadratize: penalty must be positive");
    const double m_weight = penalty.value_or(auto_penalty(poly));
    const int original = poly.num_vars();

    PseudoBooleanPolynomial work = poly;
    std::vector<AncillaRecord> records;
    while (work.degree() > 2) {
        std::map<std::pair<int, int>, int> pair_counts;
        for (const auto& [m, c] : work.terms()) {
            if (m.size() <= 2) continue;
            for (std::size_t a = 0; a < m.size(); ++a)
                for (std::size_t b = a + 1; b < m.size(); ++b) ++pair_counts[{m[a], m[b]}];
        }
        // std::map iterates pairs in lexicographic order, so the first maximum wins ties.
        auto best = pair_counts.begin();
        for (auto it = pair_counts.begin(); it != pair_counts.end(); ++it)
            if (it->second > best->second) best = it;
        const auto [a, b] = best->first;
        const int y = work.num_vars();

        PseudoBooleanPolynomial next(y + 1);
        for (const auto& [m, c] : work.terms()) {
            const bool has_pair = m.size() > 2 && std::binary_search(m.begin(), m.end(), a) &&
                                  std::binary_search(m.begin(), m.end(), b);
            if (!has_pair) {
                next.add_term(m, c);
                continue;
            }
            Monomial reduced;
            for (int v : m)
                if (v != a && v != b) reduced.push_back(v);
            reduced.push_back(y);
            next.add_term(std::move(reduced), c);
        }
        next.add_term({a, b}, m_weight);
        next.add_term({a, y}, -2.0 * m_weight);
        next.add_term({b, y}, -2.0 * m_weight);
        next.add_term({y}, 3.0 * m_weight);
        work = std::move(next);
        records.push_back({y, a, b});
    }

    QuboProblem q = qubo_from_quadratic(work);
    q.num_original = original;
    q.ancillas = std::move(records);
    return q;
}

QuboProblem bop_to_qubo(const BopProblem& bop, std::optional<double> penalty) {
    if (bop.clauses.empty()) throw Error("bop_to_qubo: no clauses");
    PseudoBooleanPolynomial total(bop.num_vars());
    for (const auto& c : bop.clauses) total = total + arithmetize(c, bop.num_vars());
    QuboProblem q = quadratize(total, penalty);
    q.bop = bop;
    return q;
}

}  // namespace aqo
