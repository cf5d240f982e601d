#include "tdual/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdual {

// ---------------------------------------------------------------- Rational

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
    if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
    return static_cast<std::int64_t>(v);
}

Rational make_rational(i128 num, i128 den) {
    if (den == 0) throw EvalError("rational division by zero");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    i128 a = num < 0 ? -num : num;
    i128 b = den;
    while (b != 0) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    if (a > 1) {
        num /= a;
        den /= a;
    }
    return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw EvalError("rational division by zero");
    std::int64_t g = std::gcd(num, den);
    if (g == 0) g = 1;
    if (den < 0) g = -g;
    num_ = num / g;
    den_ = den / g;
}

Rational Rational::inverse() const {
    if (num_ == 0) throw EvalError("division by zero");
    return make_rational(den_, num_);
}

Rational Rational::pow(int e) const {
    Rational base = e < 0 ? inverse() : *this;
    Rational out(1);
    for (int i = 0; i < std::abs(e); ++i) out = out * base;
    return out;
}

std::string Rational::to_string() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
    return make_rational(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
}
Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }
Rational operator*(const Rational& a, const Rational& b) {
    return make_rational(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
}
Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <=> i128(b.num_) * a.den_;
}

// ---------------------------------------------------------------- Point

Point::Point(std::initializer_list<std::pair<std::string, double>> values) {
    for (const auto& [k, v] : values) set(k, v);
}

void Point::set(std::string_view name, double value) {
    for (auto& [k, v] : values_) {
        if (k == name) {
            v = value;
            return;
        }
    }
    values_.emplace_back(std::string(name), value);
}

const double* Point::find(std::string_view name) const noexcept {
    for (const auto& [k, v] : values_)
        if (k == name) return &v;
    return nullptr;
}

double Point::at(std::string_view name) const {
    const double* v = find(name);
    if (!v) throw EvalError("unbound variable '" + std::string(name) + "'");
    return *v;
}

// ---------------------------------------------------------------- construction

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

struct Hasher {
    std::uint64_t h = kFnvOffset;
    void mix(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xffU;
            h *= kFnvPrime;
        }
    }
    void mix(const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= kFnvPrime;
        }
        mix(s.size());
    }
    void mix(const Rational& r) {
        mix(static_cast<std::uint64_t>(r.num()));
        mix(static_cast<std::uint64_t>(r.den()));
    }
};

int kind_rank(ScalarKind k) {
    switch (k) {
        case ScalarKind::Constant: return 0;
        case ScalarKind::Named: return 1;
        case ScalarKind::Variable: return 2;
        case ScalarKind::Function: return 3;
        case ScalarKind::Product: return 4;
        case ScalarKind::Sum: return 5;
    }
    return 6;
}

bool is_named_constant(const std::string& name) { return name == "pi" || name == "e"; }

}  // namespace

struct ScalarBuilder {
    static Scalar wrap(ScalarNode&& n) {
        Hasher h;
        h.mix(static_cast<std::uint64_t>(n.kind));
        h.mix(n.value);
        h.mix(n.name);
        h.mix(static_cast<std::uint64_t>(n.func));
        for (const auto& [c, b] : n.terms) {
            h.mix(c);
            h.mix(b.hash());
        }
        for (const auto& [b, e] : n.factors) {
            h.mix(b.hash());
            h.mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(e)));
        }
        for (const auto& a : n.args) h.mix(a.hash());
        n.hash = h.h;
        return Scalar(std::make_shared<const ScalarNode>(std::move(n)));
    }

    static Scalar constant(Rational r) {
        ScalarNode n;
    n.kind = ScalarKind::Constant;
        n.value = r;
        return wrap(std::move(n));
    }

    static Scalar product(Rational coeff, std::vector<std::pair<Scalar, int>> factors);

    /// Canonical sum of constant + Σ coeff·body.
    static Scalar sum(Rational c0, std::vector<std::pair<Rational, Scalar>> terms) {
        std::vector<std::pair<Rational, Scalar>> flat;
        for (auto& [c, body] : terms) {
            if (c.is_zero()) continue;
            const ScalarNode& bn = body.node();
            if (bn.kind == ScalarKind::Constant) {
                c0 = c0 + c * bn.value;
            } else if (bn.kind == ScalarKind::Sum) {
                c0 = c0 + c * bn.value;
                for (const auto& [c2, b2] : bn.terms) flat.emplace_back(c * c2, b2);
            } else if (bn.kind == ScalarKind::Product && !bn.value.is_one()) {
                flat.emplace_back(c * bn.value, product(Rational(1), bn.factors));
            } else {
                flat.emplace_back(c, body);
            }
        }
        std::sort(flat.begin(), flat.end(),
                  [](const auto& a, const auto& b) { return compare(a.second, b.second) < 0; });
        std::vector<std::pair<Rational, Scalar>> merged;
        for (auto& t : flat) {
            if (!merged.empty() && identical(merged.back().second, t.second)) {
                merged.back().first = merged.back().first + t.first;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const auto& t) { return t.first.is_zero(); });
        if (merged.empty()) return constant(c0);
        if (c0.is_zero() && merged.size() == 1) {
            if (merged[0].first.is_one()) return merged[0].second;
            return product(merged[0].first, {{merged[0].second, 1}});
        }
        ScalarNode n;
    n.kind = ScalarKind::Sum;
        n.value = c0;
        n.terms = std::move(merged);
        return wrap(std::move(n));
    }

    static Scalar function(Func f, const Scalar& arg);
};

Scalar ScalarBuilder::product(Rational coeff, std::vector<std::pair<Scalar, int>> factors) {
    std::vector<std::pair<Scalar, int>> flat;
    for (auto& [base, e] : factors) {
        if (e == 0) continue;
        const ScalarNode& bn = base.node();
        if (bn.kind == ScalarKind::Constant) {
            if (bn.value.is_zero() && e < 0) throw EvalError("division by zero");
            coeff = coeff * bn.value.pow(e);
        } else if (bn.kind == ScalarKind::Product) {
            coeff = coeff * bn.value.pow(e);
            for (const auto& [b2, e2] : bn.factors) flat.emplace_back(b2, e2 * e);
        } else {
            flat.emplace_back(base, e);
        }
    }
    if (coeff.is_zero()) return constant(Rational(0));
    std::sort(flat.begin(), flat.end(),
              [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
    std::vector<std::pair<Scalar, int>> merged;
    for (auto& f : flat) {
        if (!merged.empty() && identical(merged.back().first, f.first)) {
            merged.back().second += f.second;
        } else {
            merged.push_back(std::move(f));
        }
    }
    std::erase_if(merged, [](const auto& f) { return f.second == 0; });
    if (merged.empty()) return constant(coeff);
    if (merged.size() == 1 && merged[0].second == 1) {
        const Scalar& only = merged[0].first;
        if (coeff.is_one()) return only;
        if (only.kind() == ScalarKind::Sum) {
            std::vector<std::pair<Rational, Scalar>> t;
            for (const auto& [c, body] : only.node().terms) t.emplace_back(coeff * c, body);
            return sum(coeff * only.node().value, std::move(t));
        }
    }
    ScalarNode n;
    n.kind = ScalarKind::Product;
    n.value = coeff;
    n.factors = std::move(merged);
    return wrap(std::move(n));
}

Scalar ScalarBuilder::function(Func f, const Scalar& arg) {
    if (const Rational* r = arg.rational_value()) {
        switch (f) {
            case Func::Sin:
                if (r->is_zero()) return constant(Rational(0));
                break;
            case Func::Cos:
            case Func::Exp:
                if (r->is_zero()) return constant(Rational(1));
                break;
            case Func::Log:
                if (r->is_one()) return constant(Rational(0));
                if (*r <= Rational(0)) throw EvalError("log of nonpositive constant");
                break;
            case Func::Sqrt: {
                if (*r < Rational(0)) throw EvalError("sqrt of negative constant");
                auto isqrt = [](std::int64_t v) -> std::int64_t {
                    auto s = static_cast<std::int64_t>(std::llround(std::sqrt(double(v))));
                    return s * s == v ? s : -1;
                };
                std::int64_t a = isqrt(r->num());
                std::int64_t b = isqrt(r->den());
                if (a >= 0 && b > 0) return constant(Rational(a, b));
                break;
            }
        }
    }
    ScalarNode n;
    n.kind = ScalarKind::Function;
    n.func = f;
    n.args = {arg};
    return wrap(std::move(n));
}

Scalar::Scalar() : Scalar(Rational(0)) {}
Scalar::Scalar(int value) : Scalar(Rational(value)) {}
Scalar::Scalar(Rational value) : node_(ScalarBuilder::constant(value).node_) {}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) { return Scalar(Rational(num, den)); }

Scalar Scalar::variable(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (is_named_constant(name)) return named(std::move(name));
    ScalarNode n;
    n.kind = ScalarKind::Variable;
    n.name = std::move(name);
    return ScalarBuilder::wrap(std::move(n));
}

Scalar Scalar::named(std::string name) {
    if (!is_named_constant(name)) throw std::invalid_argument("unknown named constant '" + name + "'");
    ScalarNode n;
    n.kind = ScalarKind::Named;
    n.name = std::move(name);
    return ScalarBuilder::wrap(std::move(n));
}

ScalarKind Scalar::kind() const noexcept { return node_->kind; }
bool Scalar::is_zero() const noexcept {
    return node_->kind == ScalarKind::Constant && node_->value.is_zero();
}
bool Scalar::is_one() const noexcept {
    return node_->kind == ScalarKind::Constant && node_->value.is_one();
}
const Rational* Scalar::rational_value() const noexcept {
    return node_->kind == ScalarKind::Constant ? &node_->value : nullptr;
}
std::uint64_t Scalar::hash() const noexcept { return node_->hash; }

bool Scalar::depends_on(std::string_view var) const {
    const ScalarNode& n = *node_;
    switch (n.kind) {
        case ScalarKind::Constant:
        case ScalarKind::Named: return false;
        case ScalarKind::Variable: return n.name == var;
        case ScalarKind::Sum:
            return std::any_of(n.terms.begin(), n.terms.end(),
                               [&](const auto& t) { return t.second.depends_on(var); });
        case ScalarKind::Product:
            return std::any_of(n.factors.begin(), n.factors.end(),
                               [&](const auto& f) { return f.first.depends_on(var); });
        case ScalarKind::Function: return n.args[0].depends_on(var);
    }
    return false;
}

std::set<std::string> Scalar::variables() const {
    std::set<std::string> out;
    const ScalarNode& n = *node_;
    auto merge = [&](const Scalar& s) {
        auto v = s.variables();
        out.insert(v.begin(), v.end());
    };
    switch (n.kind) {
        case ScalarKind::Variable: out.insert(n.name); break;
        case ScalarKind::Sum:
            for (const auto& t : n.terms) merge(t.second);
            break;
        case ScalarKind::Product:
            for (const auto& f : n.factors) merge(f.first);
            break;
        case ScalarKind::Function: merge(n.args[0]); break;
        default: break;
    }
    return out;
}

bool identical(const Scalar& a, const Scalar& b) {
    return a.node_ == b.node_ || (a.hash() == b.hash() && compare(a, b) == 0);
}

int compare(const Scalar& a, const Scalar& b) {
    if (a.node_ == b.node_) return 0;
    const ScalarNode& x = *a.node_;
    const ScalarNode& y = *b.node_;
    int rx = kind_rank(x.kind), ry = kind_rank(y.kind);
    if (rx != ry) return rx < ry ? -1 : 1;
    switch (x.kind) {
        case ScalarKind::Constant:
            if (x.value == y.value) return 0;
            return x.value < y.value ? -1 : 1;
        case ScalarKind::Named:
        case ScalarKind::Variable: return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
        default: break;
    }
    if (x.hash != y.hash) return x.hash < y.hash ? -1 : 1;
    // Equal hashes: confirm structurally.
    if (x.func != y.func) return x.func < y.func ? -1 : 1;
    if (x.value != y.value) return x.value < y.value ? -1 : 1;
    if (x.terms.size() != y.terms.size()) return x.terms.size() < y.terms.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.terms.size(); ++i) {
        if (x.terms[i].first != y.terms[i].first) return x.terms[i].first < y.terms[i].first ? -1 : 1;
        if (int c = compare(x.terms[i].second, y.terms[i].second)) return c;
    }
    if (x.factors.size() != y.factors.size()) return x.factors.size() < y.factors.size() ? -1 : 1;
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
        if (int c = compare(x.factors[i].first, y.factors[i].first)) return c;
        if (x.factors[i].second != y.factors[i].second)
            return x.factors[i].second < y.factors[i].second ? -1 : 1;
    }
    for (std::size_t i = 0; i < x.args.size(); ++i)
        if (int c = compare(x.args[i], y.args[i])) return c;
    return 0;
}

// ---------------------------------------------------------------- arithmetic

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return ScalarBuilder::sum(Rational(0), {{Rational(1), a}, {Rational(1), b}});
}

Scalar operator-(const Scalar& a) {
    if (a.is_zero()) return a;
    return ScalarBuilder::sum(Rational(0), {{Rational(-1), a}});
}

Scalar operator-(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return a;
    return ScalarBuilder::sum(Rational(0), {{Rational(1), a}, {Rational(-1), b}});
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.is_zero() || b.is_zero()) return Scalar();
    if (a.is_one()) return b;
    if (b.is_one()) return a;
    if (const Rational* r = a.rational_value()) {
        if (b.kind() == ScalarKind::Sum) {
            std::vector<std::pair<Rational, Scalar>> t;
            t.reserve(b.node().terms.size());
            for (const auto& [c, body] : b.node().terms) t.emplace_back(*r * c, body);
            return ScalarBuilder::sum(*r * b.node().value, std::move(t));
        }
    }
    if (b.rational_value() && a.kind() == ScalarKind::Sum) return b * a;
    return ScalarBuilder::product(Rational(1), {{a, 1}, {b, 1}});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw EvalError("division by zero");
    if (const Rational* r = b.rational_value()) return Scalar(r->inverse()) * a;
    if (a.is_zero()) return a;
    return ScalarBuilder::product(Rational(1), {{a, 1}, {b, -1}});
}

Scalar pow(const Scalar& base, int exponent) {
    if (exponent == 0) return Scalar(1);
    if (exponent == 1) return base;
    return ScalarBuilder::product(Rational(1), {{base, exponent}});
}

Scalar sin(const Scalar& a) { return ScalarBuilder::function(Func::Sin, a); }
Scalar cos(const Scalar& a) { return ScalarBuilder::function(Func::Cos, a); }
Scalar exp(const Scalar& a) { return ScalarBuilder::function(Func::Exp, a); }
Scalar log(const Scalar& a) { return ScalarBuilder::function(Func::Log, a); }
Scalar sqrt(const Scalar& a) { return ScalarBuilder::function(Func::Sqrt, a); }

// ---------------------------------------------------------------- eval / diff

double Scalar::eval(const Point& p) const {
    const ScalarNode& n = *node_;
    switch (n.kind) {
        case ScalarKind::Constant: return n.value.to_double();
        case ScalarKind::Named: return n.name == "pi" ? M_PI : M_E;
        case ScalarKind::Variable: return p.at(n.name);
        case ScalarKind::Sum: {
            double s = n.value.to_double();
            for (const auto& [c, b] : n.terms) s += c.to_double() * b.eval(p);
            return s;
        }
        case ScalarKind::Product: {
            double s = n.value.to_double();
            for (const auto& [b, e] : n.factors) {
                double v = b.eval(p);
                if (e < 0 && v == 0.0) throw EvalError("division by zero");
                s *= e == 1 ? v : std::pow(v, e);
            }
            if (!std::isfinite(s)) throw EvalError("non-finite product");
            return s;
        }
        case ScalarKind::Function: {
            double v = n.args[0].eval(p);
            double r = 0.0;
            switch (n.func) {
                case Func::Sin: r = std::sin(v); break;
                case Func::Cos: r = std::cos(v); break;
                case Func::Exp: r = std::exp(v); break;
                case Func::Log:
                    if (v <= 0.0) throw EvalError("log of nonpositive value");
                    r = std::log(v);
                    break;
                case Func::Sqrt:
                    if (v < 0.0) throw EvalError("sqrt of negative value");
                    r = std::sqrt(v);
                    break;
            }
            if (!std::isfinite(r)) throw EvalError("non-finite function value");
            return r;
        }
    }
    return 0.0;
}

Scalar Scalar::diff(std::string_view var) const {
    const ScalarNode& n = *node_;
    switch (n.kind) {
        case ScalarKind::Constant:
        case ScalarKind::Named: return Scalar();
        case ScalarKind::Variable: return Scalar(n.name == var ? 1 : 0);
        case ScalarKind::Sum: {
            std::vector<std::pair<Rational, Scalar>> t;
            for (const auto& [c, b] : n.terms) t.emplace_back(c, b.diff(var));
            return ScalarBuilder::sum(Rational(0), std::move(t));
        }
        case ScalarKind::Product: {
            std::vector<std::pair<Rational, Scalar>> t;
            for (std::size_t i = 0; i < n.factors.size(); ++i) {
                const auto& [bi, ei] = n.factors[i];
                Scalar dbi = bi.diff(var);
                if (dbi.is_zero()) continue;
                std::vector<std::pair<Scalar, int>> f;
                for (std::size_t j = 0; j < n.factors.size(); ++j) {
                    if (j == i) {
                        f.emplace_back(bi, ei - 1);
                    } else {
                        f.push_back(n.factors[j]);
                    }
                }
                f.emplace_back(dbi, 1);
                t.emplace_back(Rational(1), ScalarBuilder::product(n.value * Rational(ei), std::move(f)));
            }
            return ScalarBuilder::sum(Rational(0), std::move(t));
        }
        case ScalarKind::Function: {
            const Scalar& a = n.args[0];
            Scalar da = a.diff(var);
            if (da.is_zero()) return Scalar();
            switch (n.func) {
                case Func::Sin: return cos(a) * da;
                case Func::Cos: return -(sin(a) * da);
                case Func::Exp: return *this * da;
                case Func::Log: return da / a;
                case Func::Sqrt: return da / (Scalar(2) * *this);
            }
        }
    }
    return Scalar();
}

// ---------------------------------------------------------------- complex

std::complex<double> CScalar::eval(const Point& p) const {
    return {re.eval(p), im.is_zero() ? 0.0 : im.eval(p)};
}

CScalar operator+(const CScalar& a, const CScalar& b) { return {a.re + b.re, a.im + b.im}; }
CScalar operator-(const CScalar& a, const CScalar& b) { return {a.re - b.re, a.im - b.im}; }
CScalar operator*(const CScalar& a, const CScalar& b) {
    if (a.is_real() && b.is_real()) return {a.re * b.re, Scalar()};
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
CScalar operator/(const CScalar& a, const CScalar& b) {
    if (b.is_real()) return {a.re / b.re, a.im.is_zero() ? Scalar() : a.im / b.re};
    Scalar den = b.re * b.re + b.im * b.im;
    CScalar num = a * b.conj();
    return {num.re / den, num.im / den};
}

bool identical(const CScalar& a, const CScalar& b) {
    return identical(a.re, b.re) && identical(a.im, b.im);
}

// ---------------------------------------------------------------- matrices

ScalarMatrix ScalarMatrix::identity(std::size_t n) {
    ScalarMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
}

ScalarMatrix ScalarMatrix::transpose() const {
    ScalarMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

Scalar minor_det(const ScalarMatrix& m, std::vector<std::size_t>& rows, std::vector<std::size_t>& cols) {
    if (rows.size() == 1) return m(rows[0], cols[0]);
    if (rows.size() == 2)
        return m(rows[0], cols[0]) * m(rows[1], cols[1]) - m(rows[0], cols[1]) * m(rows[1], cols[0]);
    std::size_t r = rows.front();
    rows.erase(rows.begin());
    Scalar s;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const Scalar& a = m(r, cols[k]);
        if (a.is_zero()) continue;
        std::size_t c = cols[k];
        cols.erase(cols.begin() + static_cast<std::ptrdiff_t>(k));
        Scalar sub = minor_det(m, rows, cols);
        cols.insert(cols.begin() + static_cast<std::ptrdiff_t>(k), c);
        s = (k % 2 == 0) ? s + a * sub : s - a * sub;
    }
    rows.insert(rows.begin(), r);
    return s;
}

}  // namespace

Scalar ScalarMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
    if (rows_ == 0) return Scalar(1);
    std::vector<std::size_t> r(rows_), c(cols_);
    for (std::size_t i = 0; i < rows_; ++i) r[i] = c[i] = i;
    return minor_det(*this, r, c);
}

ScalarMatrix ScalarMatrix::inverse() const {
    Scalar d = det();
    if (d.is_zero()) throw EvalError("singular symbolic matrix");
    const std::size_t n = rows_;
    ScalarMatrix inv(n, n);
    if (n == 1) {
        inv(0, 0) = Scalar(1) / d;
        return inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> r, c;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != j) r.push_back(k);
                if (k != i) c.push_back(k);
            }
            Scalar cof = minor_det(*this, r, c);
            if ((i + j) % 2) cof = -cof;
            inv(i, j) = cof.is_zero() ? cof : cof / d;
        }
    }
    return inv;
}

bool ScalarMatrix::is_constant_rational() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return s.rational_value() != nullptr; });
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    ScalarMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < b.cols_; ++j) {
            Scalar s;
            for (std::size_t k = 0; k < a.cols_; ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
}

ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b) {
    ScalarMatrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
}

// ---------------------------------------------------------------- sampling

Domain& Domain::add(std::string var, double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval for '" + var + "'");
    box_.emplace_back(std::move(var), Interval{lo, hi});
    return *this;
}

Domain& Domain::exclude(Scalar zero_set) {
    exclusions_.push_back(std::move(zero_set));
    return *this;
}

bool Domain::admissible(const Point& p) const {
    for (const auto& e : exclusions_) {
        try {
            if (std::abs(e.eval(p)) <= margin_) return false;
        } catch (const EvalError&) {
            return false;
        }
    }
    return true;
}

Point Domain::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        Point p;
        for (const auto& [name, iv] : box_) p.set(name, iv.lo + (iv.hi - iv.lo) * unit(rng));
        if (admissible(p)) return p;
    }
    throw SamplingError("domain exclusions reject every sample");
}

std::vector<Point> Domain::sample(std::uint64_t seed, std::size_t n) const {
    std::mt19937_64 rng(seed);
    std::vector<Point> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(sample(rng));
    return out;
}

bool equal_numeric(const Scalar& a, const Scalar& b, const Domain& d, std::size_t n, double tol,
                   std::uint64_t seed) {
    if (n == 0 || !(tol > 0.0)) throw std::invalid_argument("equal_numeric needs n >= 1, tol > 0");
    for (const Point& p : d.sample(seed, n)) {
        double va = a.eval(p);
        double vb = b.eval(p);
        if (std::abs(va - vb) > tol * (1.0 + std::abs(va))) return false;
    }
    return true;
}

}  // namespace tdual
