#include "tdual/sexpr.hpp"

#include <cctype>
#include <charconv>

namespace tdual {

namespace {

bool is_ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '.' ||
           c == '/' || c == '-' || c == '+' || c == '*' || c == '^';
}

struct Reader {
    std::string_view text;
    std::size_t pos = 0;

    void skip() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == ';') {
                while (pos < text.size() && text[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    SExpr read() {
        skip();
        if (pos >= text.size()) throw ParseError("unexpected end of expression");
        SExpr out;
        if (text[pos] == '(') {
            ++pos;
            out.is_list = true;
            for (;;) {
                skip();
                if (pos >= text.size()) throw ParseError("missing ')'");
                if (text[pos] == ')') {
                    ++pos;
                    break;
                }
                out.items.push_back(read());
            }
            return out;
        }
        if (text[pos] == ')') throw ParseError("unexpected ')' at offset " + std::to_string(pos));
        std::size_t start = pos;
        while (pos < text.size() && is_ident_char(text[pos])) ++pos;
        if (pos == start) {
            throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' at offset " +
                             std::to_string(pos));
        }
        out.atom = std::string(text.substr(start, pos - start));
        return out;
    }
};

bool parse_int(std::string_view s, std::int64_t& out) {
    if (s.empty()) return false;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

/// Numeric atom as an exact rational: "3", "-2", "3/4", "2.5", "1e-3".
bool parse_number(const std::string& atom, Rational& out) {
    if (atom.empty()) return false;
    char c0 = atom[0];
    if (!(std::isdigit(static_cast<unsigned char>(c0)) ||
          ((c0 == '-' || c0 == '+') && atom.size() > 1 &&
           (std::isdigit(static_cast<unsigned char>(atom[1])) || atom[1] == '.')) ||
          c0 == '.'))
        return false;
    if (auto slash = atom.find('/'); slash != std::string::npos) {
        std::int64_t n = 0, d = 0;
        if (!parse_int(std::string_view(atom).substr(0, slash), n) ||
            !parse_int(std::string_view(atom).substr(slash + 1), d))
            return false;
        if (d == 0) throw ParseError("zero denominator in '" + atom + "'");
        out = Rational(n, d);
        return true;
    }
    std::string mant = atom;
    int exp10 = 0;
    if (auto e = mant.find_first_of("eE"); e != std::string::npos) {
        std::int64_t ev = 0;
        if (!parse_int(std::string_view(mant).substr(e + 1), ev)) return false;
        exp10 = static_cast<int>(ev);
        mant = mant.substr(0, e);
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        exp10 -= static_cast<int>(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    std::int64_t m = 0;
    if (mant == "-" || mant == "+" || !parse_int(mant[0] == '+' ? mant.substr(1) : mant, m))
        return false;
    out = Rational(m) * Rational(10).pow(exp10);
    return true;
}

std::string print(const Scalar& s);

std::string print_factor(const Scalar& base, int e) {
    if (e == 1) return print(base);
    return "(^ " + print(base) + " " + std::to_string(e) + ")";
}

std::string print_product(const Rational& coeff, const std::vector<std::pair<Scalar, int>>& factors) {
    std::vector<std::string> num, den;
    if (!coeff.is_one()) num.push_back(coeff.to_string());
    for (const auto& [b, e] : factors) {
        if (e > 0) {
            num.push_back(print_factor(b, e));
        } else {
            den.push_back(print_factor(b, -e));
        }
    }
    auto join = [](const std::vector<std::string>& items) {
        if (items.empty()) return std::string("1");
        if (items.size() == 1) return items[0];
        std::string out = "(*";
        for (const auto& i : items) out += " " + i;
        return out + ")";
    };
    if (den.empty()) return join(num);
    return "(/ " + join(num) + " " + join(den) + ")";
}

std::string print(const Scalar& s) {
    const ScalarNode& n = s.node();
    switch (n.kind) {
        case ScalarKind::Constant: return n.value.to_string();
        case ScalarKind::Named:
        case ScalarKind::Variable: return n.name;
        case ScalarKind::Product: return print_product(n.value, n.factors);
        case ScalarKind::Sum: {
            std::string out = "(+";
            if (!n.value.is_zero()) out += " " + n.value.to_string();
            for (const auto& [c, body] : n.terms) {
                if (body.kind() == ScalarKind::Product) {
                    out += " " + print_product(c, body.node().factors);
                } else {
                    out += " " + print_product(c, {{body, 1}});
                }
            }
            return out + ")";
        }
        case ScalarKind::Function: {
            const char* name = "sin";
            switch (n.func) {
                case Func::Sin: name = "sin"; break;
                case Func::Cos: name = "cos"; break;
                case Func::Exp: name = "exp"; break;
                case Func::Log: name = "log"; break;
                case Func::Sqrt: name = "sqrt"; break;
            }
            return std::string("(") + name + " " + print(n.args[0]) + ")";
        }
    }
    return "?";
}

}  // namespace

std::string SExpr::to_string() const {
    if (!is_list) return atom;
    std::string out = "(";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i].to_string();
    }
    return out + ")";
}

SExpr parse_sexpr(std::string_view text) {
    Reader r{text};
    SExpr e = r.read();
    r.skip();
    if (r.pos != text.size()) throw ParseError("trailing text after expression");
    return e;
}

Scalar scalar_from_sexpr(const SExpr& e) {
    if (e.is_atom()) {
        Rational r;
        if (parse_number(e.atom, r)) return Scalar(r);
        for (char c : e.atom) {
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '~' || c == '.'))
                throw ParseError("invalid identifier '" + e.atom + "'");
        }
        if (std::isdigit(static_cast<unsigned char>(e.atom[0])))
            throw ParseError("invalid identifier '" + e.atom + "'");
        return Scalar::variable(e.atom);
    }
    if (e.items.empty() || !e.items[0].is_atom()) throw ParseError("expected operator in " + e.to_string());
    const std::string& op = e.items[0].atom;
    std::vector<Scalar> args;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        if (op == "^" && i == 2) break;
        args.push_back(scalar_from_sexpr(e.items[i]));
    }
    auto need = [&](std::size_t n) {
        if (e.items.size() != n + 1)
            throw ParseError("'" + op + "' expects " + std::to_string(n) + " argument(s)");
    };
    if (op == "+") {
        Scalar s;
        for (const auto& a : args) s += a;
        return s;
    }
    if (op == "*") {
        Scalar s(1);
        for (const auto& a : args) s *= a;
        return s;
    }
    if (op == "-") {
        if (args.size() == 1) return -args[0];
        need(2);
        return args[0] - args[1];
    }
    if (op == "/") {
        need(2);
        return args[0] / args[1];
    }
    if (op == "^") {
        need(2);
        std::int64_t k = 0;
        if (!e.items[2].is_atom() || !parse_int(e.items[2].atom, k))
            throw ParseError("'^' expects an integer exponent");
        return pow(args[0], static_cast<int>(k));
    }
    need(1);
    if (op == "sin") return sin(args[0]);
    if (op == "cos") return cos(args[0]);
    if (op == "exp") return exp(args[0]);
    if (op == "log") return log(args[0]);
    if (op == "sqrt") return sqrt(args[0]);
    throw ParseError("unknown operator '" + op + "'");
}

std::string Scalar::to_string() const { return print(*this); }

Scalar Scalar::parse(std::string_view text) { return scalar_from_sexpr(parse_sexpr(text)); }

}  // namespace tdual
