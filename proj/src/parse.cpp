#include "superlin/parse.hpp"

#include <cctype>
#include <map>
#include <utility>

#include "superlin/errors.hpp"
#include "superlin/ratmat.hpp"

namespace superlin {

namespace {

enum class Tok {
    Ident,
    Integer,
    Prime,
    Equals,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Colon,
    Semi,
    LBrack,
    RBrack,
    Comma,
    Newline,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    int line;
    int col;
};

const char* describe(Tok k) {
    switch (k) {
    case Tok::Ident: return "a name";
    case Tok::Integer: return "an integer";
    case Tok::Prime: return "'";
    case Tok::Equals: return "'='";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Caret: return "'^'";
    case Tok::Slash: return "'/'";
    case Tok::Colon: return "':'";
    case Tok::Semi: return "';'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Comma: return "','";
    case Tok::Newline: return "end of line";
    case Tok::End: return "end of input";
    }
    return "?";
}

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto push = [&](Tok kind, std::string t, int l, int c) {
        out.push_back({kind, std::move(t), l, c});
    };
    while (i < text.size()) {
        char c = text[i];
        int l = line, co = col;
        if (c == '\n') {
            push(Tok::Newline, "\n", l, co);
            ++i;
            ++line;
            col = 1;
            continue;
        }
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            ++col;
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') {
                ++i;
                ++col;
            }
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
                digits += text[i];
                ++i;
                ++col;
            }
            if (i < text.size() && text[i] == '.')
                throw parse_error("decimal literals are not supported; write an exact fraction p/q",
                                  l, co);
            push(Tok::Integer, std::move(digits), l, co);
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (i < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                name += text[i];
                ++i;
                ++col;
            }
            push(Tok::Ident, std::move(name), l, co);
            continue;
        }
        Tok kind;
        switch (c) {
        case '\'': kind = Tok::Prime; break;
        case '=': kind = Tok::Equals; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '^': kind = Tok::Caret; break;
        case '/': kind = Tok::Slash; break;
        case ':': kind = Tok::Colon; break;
        case ';': kind = Tok::Semi; break;
        case '[': kind = Tok::LBrack; break;
        case ']': kind = Tok::RBrack; break;
        case ',': kind = Tok::Comma; break;
        case '.':
            throw parse_error("decimal literals are not supported; write an exact fraction p/q",
                              l, co);
        default:
            throw parse_error(std::string("unexpected character '") + c + "'", l, co);
        }
        push(kind, std::string(1, c), l, co);
        ++i;
        ++col;
    }
    push(Tok::End, "", line, col);
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

    const Token& peek() const { return toks_[pos_]; }

    Token take() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

    bool accept(Tok kind) {
        if (peek().kind != kind)
            return false;
        take();
        return true;
    }

    Token expect(Tok kind, const std::string& context) {
        if (peek().kind != kind)
            fail("expected " + std::string(describe(kind)) + " " + context);
        return take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        std::string seen = t.kind == Tok::End ? std::string(describe(Tok::End))
                                              : "'" + t.text + "'";
        throw parse_error(msg + ", found " + seen, t.line, t.col);
    }

    void skip_blank_lines() {
        while (accept(Tok::Newline)) {
        }
    }

    bool at_end() const { return peek().kind == Tok::End; }

    void expect_line_end(const std::string& context) {
        if (peek().kind != Tok::Newline && peek().kind != Tok::End)
            fail("expected end of line " + context);
        if (peek().kind == Tok::Newline)
            take();
    }

    // `vars a b c` — at least one distinct name
    std::vector<std::string> parse_vars_line() {
        skip_blank_lines();
        Token head = expect(Tok::Ident, "to open the declarations");
        if (head.text != "vars")
            throw parse_error("expected the declarations to start with 'vars', found '" +
                                  head.text + "'",
                              head.line, head.col);
        std::vector<std::string> names;
        while (peek().kind == Tok::Ident) {
            Token t = take();
            for (const std::string& seen : names)
                if (seen == t.text)
                    throw parse_error("variable '" + t.text + "' is declared twice", t.line,
                                      t.col);
            names.push_back(t.text);
        }
        if (names.empty())
            fail("expected at least one variable name after 'vars'");
        expect_line_end("after the declarations");
        return names;
    }

    int variable_index(const Token& t, const std::vector<std::string>& names) const {
        for (std::size_t i = 0; i < names.size(); ++i)
            if (names[i] == t.text)
                return static_cast<int>(i);
        throw parse_error("undeclared variable '" + t.text + "'", t.line, t.col);
    }

    // INTEGER [ '/' INTEGER ] with the division binding to the literal
    Rational parse_unsigned_rational() {
        Token num = expect(Tok::Integer, "as a coefficient");
        BigInt p(num.text);
        if (!accept(Tok::Slash))
            return Rational(p);
        Token den = expect(Tok::Integer, "as a denominator");
        BigInt q(den.text);
        if (q == 0)
            throw parse_error("zero denominator", den.line, den.col);
        return Rational(p) / Rational(q);
    }

    // name [ '^' uint ]
    Polynomial parse_factor(const std::vector<std::string>& names) {
        Token name = expect(Tok::Ident, "as a variable factor");
        int v = variable_index(name, names);
        Polynomial base = Polynomial::variable(static_cast<int>(names.size()), v);
        if (!accept(Tok::Caret))
            return base;
        Token e = expect(Tok::Integer, "as an exponent");
        if (e.text.size() > 6)
            throw parse_error("exponent is unreasonably large", e.line, e.col);
        return base.pow(static_cast<unsigned>(std::stoul(e.text)));
    }

    // [coefficient '*'] factor { '*' factor } | coefficient
    Polynomial parse_term(const std::vector<std::string>& names) {
        int n = static_cast<int>(names.size());
        Polynomial acc = Polynomial::constant(n, Rational(1));
        bool saw_factor = false;
        if (peek().kind == Tok::Integer) {
            acc = Polynomial::constant(n, parse_unsigned_rational());
            if (peek().kind == Tok::Ident)
                fail("expected '*' between the coefficient and the variables");
            if (!accept(Tok::Star))
                return acc;
        } else if (peek().kind != Tok::Ident) {
            fail("expected a term");
        }
        do {
            if (peek().kind == Tok::Integer)
                fail("numeric coefficients must come first in a term");
            acc = acc * parse_factor(names);
            saw_factor = true;
        } while (accept(Tok::Star));
        (void)saw_factor;
        return acc;
    }

    // signed sum of terms
    Polynomial parse_expr(const std::vector<std::string>& names) {
        int n = static_cast<int>(names.size());
        Polynomial acc = Polynomial::zero(n);
        bool negative = false;
        if (accept(Tok::Minus))
            negative = true;
        else
            accept(Tok::Plus);
        while (true) {
            Polynomial term = parse_term(names);
            acc += negative ? -term : term;
            if (accept(Tok::Plus))
                negative = false;
            else if (accept(Tok::Minus))
                negative = true;
            else
                break;
        }
        return acc;
    }

    // '[' rational {',' rational} ']' with optional leading signs
    RatVector parse_bracket_vector() {
        expect(Tok::LBrack, "to open a row");
        RatVector row;
        while (true) {
            bool neg = false;
            if (accept(Tok::Minus))
                neg = true;
            else
                accept(Tok::Plus);
            Rational r = parse_unsigned_rational();
            row.push_back(neg ? Rational(-r) : r);
            if (accept(Tok::Comma))
                continue;
            expect(Tok::RBrack, "to close a row");
            break;
        }
        return row;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names) {
    Parser p(text);
    p.skip_blank_lines();
    Polynomial result = p.parse_expr(names);
    p.skip_blank_lines();
    if (!p.at_end())
        p.fail("expected end of input after the expression");
    return result;
}

ParsedSystem parse_system(const std::string& text) {
    Parser p(text);
    std::vector<std::string> names = p.parse_vars_line();
    int n = static_cast<int>(names.size());

    std::vector<Polynomial> comps(static_cast<std::size_t>(n), Polynomial::zero(n));
    std::vector<bool> defined(static_cast<std::size_t>(n), false);
    p.skip_blank_lines();
    while (!p.at_end()) {
        Token name = p.expect(Tok::Ident, "on the left of an equation");
        int v = p.variable_index(name, names);
        if (defined[static_cast<std::size_t>(v)])
            throw parse_error("duplicate equation for '" + name.text + "'", name.line, name.col);
        p.expect(Tok::Prime, "after the variable being differentiated");
        p.expect(Tok::Equals, "in the equation");
        comps[static_cast<std::size_t>(v)] = p.parse_expr(names);
        defined[static_cast<std::size_t>(v)] = true;
        p.expect_line_end("after the equation");
        p.skip_blank_lines();
    }
    for (int v = 0; v < n; ++v)
        if (!defined[static_cast<std::size_t>(v)]) {
            const Token& end = p.peek();
            throw parse_error("missing equation for '" + names[static_cast<std::size_t>(v)] + "'",
                              end.line, end.col);
        }
    return {std::move(names), VectorField(n, std::move(comps))};
}

ParsedAutomorphism parse_automorphism(const std::string& text) {
    Parser p(text);
    std::vector<std::string> names = p.parse_vars_line();
    int n = static_cast<int>(names.size());

    std::vector<TameGenerator> gens;
    p.skip_blank_lines();
    while (!p.at_end()) {
        Token head = p.expect(Tok::Ident, "to open a statement");
        if (head.text == "affine") {
            Token open = p.peek();
            p.expect(Tok::LBrack, "to open the matrix");
            std::vector<RatVector> rows;
            while (true) {
                rows.push_back(p.parse_bracket_vector());
                if (p.accept(Tok::Comma))
                    continue;
                p.expect(Tok::RBrack, "to close the matrix");
                break;
            }
            p.expect(Tok::Semi, "between the matrix and the offset");
            RatVector b = p.parse_bracket_vector();
            if (static_cast<int>(rows.size()) != n)
                throw parse_error("affine matrix must have one row per variable", open.line,
                                  open.col);
            for (const RatVector& row : rows)
                if (static_cast<int>(row.size()) != n)
                    throw parse_error("affine matrix must have one column per variable",
                                      open.line, open.col);
            if (static_cast<int>(b.size()) != n)
                throw parse_error("affine offset must have one entry per variable", open.line,
                                  open.col);
            RatMatrix a(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    a.at(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            gens.push_back(make_affine(std::move(a), std::move(b)));
        } else if (head.text == "elem") {
            Token target = p.expect(Tok::Ident, "as the sheared variable");
            int v = p.variable_index(target, names);
            p.expect(Tok::Colon, "after the sheared variable");
            Polynomial g = p.parse_expr(names);
            gens.push_back(make_elementary(n, v, std::move(g)));
        } else {
            throw parse_error("expected 'affine' or 'elem', found '" + head.text + "'",
                              head.line, head.col);
        }
        p.expect_line_end("after the statement");
        p.skip_blank_lines();
    }
    return {std::move(names), TameAutomorphism(n, std::move(gens))};
}

ParsedPolyMap parse_polymap(const std::string& text) {
    Parser p(text);
    std::vector<std::string> in_names = p.parse_vars_line();
    int n = static_cast<int>(in_names.size());

    std::vector<std::string> out_names;
    std::vector<Polynomial> comps;
    p.skip_blank_lines();
    while (!p.at_end()) {
        Token name = p.expect(Tok::Ident, "on the left of a component");
        p.expect(Tok::Equals, "in the component definition");
        out_names.push_back(name.text);
        comps.push_back(p.parse_expr(in_names));
        p.expect_line_end("after the component");
        p.skip_blank_lines();
    }
    return {std::move(in_names), std::move(out_names), PolyMap(n, std::move(comps))};
}

} // namespace superlin
