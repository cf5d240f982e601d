#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tdual {

/// Raised when an expression cannot be evaluated at a point.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a domain rejects too many candidate samples.
class SamplingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact rational number with 64-bit numerator and positive denominator.
class Rational {
public:
    constexpr Rational() = default;
    Rational(std::int64_t num, std::int64_t den = 1);

    [[nodiscard]] std::int64_t num() const noexcept { return num_; }
    [[nodiscard]] std::int64_t den() const noexcept { return den_; }
    [[nodiscard]] bool is_zero() const noexcept { return num_ == 0; }
    [[nodiscard]] bool is_one() const noexcept { return num_ == 1 && den_ == 1; }
    [[nodiscard]] bool is_integer() const noexcept { return den_ == 1; }
    [[nodiscard]] double to_double() const noexcept {
        return static_cast<double>(num_) / static_cast<double>(den_);
    }
    [[nodiscard]] Rational inverse() const;
    [[nodiscard]] Rational pow(int e) const;
    [[nodiscard]] std::string to_string() const;

    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a) { return Rational(-a.num_, a.den_); }
    friend bool operator==(const Rational&, const Rational&) = default;
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

private:
    std::int64_t num_ = 0;
    std::int64_t den_ = 1;
};

/// Assignment of real values to variable names.
class Point {
public:
    Point() = default;
    Point(std::initializer_list<std::pair<std::string, double>> values);

    void set(std::string_view name, double value);
    [[nodiscard]] const double* find(std::string_view name) const noexcept;
    [[nodiscard]] double at(std::string_view name) const;
    [[nodiscard]] const std::vector<std::pair<std::string, double>>& values() const noexcept {
        return values_;
    }

private:
    std::vector<std::pair<std::string, double>> values_;
};

enum class ScalarKind { Constant, Named, Variable, Sum, Product, Function };
enum class Func { Sin, Cos, Exp, Log, Sqrt };

struct ScalarNode;

/// Immutable real expression over named variables.
///
/// Sums and products are kept flattened with like terms and like bases merged,
/// so structurally equal inputs produce identical trees. There is no expansion
/// of products over sums; equality of general expressions is decided numerically
/// by equal_numeric.
class Scalar {
public:
    Scalar();
    Scalar(int value);
    Scalar(Rational value);

    [[nodiscard]] static Scalar rational(std::int64_t num, std::int64_t den = 1);
    [[nodiscard]] static Scalar variable(std::string name);
    /// Named constants: "pi" and "e".
    [[nodiscard]] static Scalar named(std::string name);
    [[nodiscard]] static Scalar pi() { return named("pi"); }

    [[nodiscard]] ScalarKind kind() const noexcept;
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] bool is_one() const noexcept;
    /// Exact rational value when the expression is a rational constant.
    [[nodiscard]] const Rational* rational_value() const noexcept;
    [[nodiscard]] bool depends_on(std::string_view var) const;
    [[nodiscard]] std::set<std::string> variables() const;
    [[nodiscard]] std::uint64_t hash() const noexcept;

    [[nodiscard]] double eval(const Point& p) const;
    [[nodiscard]] Scalar diff(std::string_view var) const;
    /// Prefix serialization, e.g. "(+ 1 (* -1 (^ t 2)))".
    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] static Scalar parse(std::string_view text);

    [[nodiscard]] const ScalarNode& node() const noexcept { return *node_; }

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a);
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    /// Structural identity of canonical trees.
    friend bool identical(const Scalar& a, const Scalar& b);
    /// Total order on canonical trees, used for child ordering.
    friend int compare(const Scalar& a, const Scalar& b);

private:
    explicit Scalar(std::shared_ptr<const ScalarNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ScalarNode> node_;

    friend struct ScalarBuilder;
};

struct ScalarNode {
    ScalarKind kind = ScalarKind::Constant;
    std::uint64_t hash = 0;
    Rational value;  ///< Constant value, Sum constant term, Product coefficient.
    std::string name;
    Func func = Func::Sin;
    std::vector<std::pair<Rational, Scalar>> terms;  ///< Sum: coefficient times body.
    std::vector<std::pair<Scalar, int>> factors;     ///< Product: base to integer power.
    std::vector<Scalar> args;                        ///< Function argument.
};

[[nodiscard]] Scalar pow(const Scalar& base, int exponent);
[[nodiscard]] Scalar sin(const Scalar& a);
[[nodiscard]] Scalar cos(const Scalar& a);
[[nodiscard]] Scalar exp(const Scalar& a);
[[nodiscard]] Scalar log(const Scalar& a);
[[nodiscard]] Scalar sqrt(const Scalar& a);

/// Complex expression re + i·im.
struct CScalar {
    Scalar re;
    Scalar im;

    CScalar() = default;
    CScalar(Scalar r) : re(std::move(r)) {}
    CScalar(int r) : re(r) {}
    CScalar(Scalar r, Scalar i) : re(std::move(r)), im(std::move(i)) {}

    [[nodiscard]] static CScalar i() { return {Scalar(0), Scalar(1)}; }
    [[nodiscard]] bool is_zero() const noexcept { return re.is_zero() && im.is_zero(); }
    [[nodiscard]] bool is_real() const noexcept { return im.is_zero(); }
    [[nodiscard]] CScalar conj() const { return {re, -im}; }
    [[nodiscard]] std::complex<double> eval(const Point& p) const;
    [[nodiscard]] CScalar diff(std::string_view var) const { return {re.diff(var), im.diff(var)}; }

    friend CScalar operator+(const CScalar& a, const CScalar& b);
    friend CScalar operator-(const CScalar& a, const CScalar& b);
    friend CScalar operator*(const CScalar& a, const CScalar& b);
    friend CScalar operator/(const CScalar& a, const CScalar& b);
    friend CScalar operator-(const CScalar& a) { return {-a.re, -a.im}; }
    CScalar& operator+=(const CScalar& b) { return *this = *this + b; }
    CScalar& operator-=(const CScalar& b) { return *this = *this - b; }
    CScalar& operator*=(const CScalar& b) { return *this = *this * b; }
};

[[nodiscard]] bool identical(const CScalar& a, const CScalar& b);

/// Dense matrix of real expressions, used for small symbolic solves.
class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    [[nodiscard]] static ScalarMatrix identity(std::size_t n);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] ScalarMatrix transpose() const;
    /// Cofactor expansion; intended for the small blocks met in practice.
    [[nodiscard]] Scalar det() const;
    /// Adjugate divided by the determinant.
    [[nodiscard]] ScalarMatrix inverse() const;
    [[nodiscard]] bool is_constant_rational() const;

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
    friend ScalarMatrix operator+(const ScalarMatrix& a, const ScalarMatrix& b);
    friend ScalarMatrix operator-(const ScalarMatrix& a, const ScalarMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Scalar> data_;
};

/// Closed interval for one sampled variable.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
};

/// Sampling box with excluded zero sets.
///
/// A candidate point is rejected when any exclusion expression is within
/// `margin` of zero there or cannot be evaluated.
class Domain {
public:
    Domain() = default;

    Domain& add(std::string var, double lo, double hi);
    Domain& exclude(Scalar zero_set);
    Domain& set_margin(double margin) {
        margin_ = margin;
        return *this;
    }

    [[nodiscard]] const std::vector<std::pair<std::string, Interval>>& box() const noexcept {
        return box_;
    }
    [[nodiscard]] const std::vector<Scalar>& exclusions() const noexcept { return exclusions_; }
    [[nodiscard]] bool admissible(const Point& p) const;
    [[nodiscard]] Point sample(std::mt19937_64& rng) const;
    [[nodiscard]] std::vector<Point> sample(std::uint64_t seed, std::size_t n) const;

private:
    std::vector<std::pair<std::string, Interval>> box_;
    std::vector<Scalar> exclusions_;
    double margin_ = 1e-3;
};

/// Sampling parameters shared by all numeric identity checks.
struct Sampling {
    std::uint64_t seed = 20070401;
    std::size_t samples = 16;
    double tol = 1e-9;
};

/// True iff |a(p) − b(p)| ≤ tol·(1 + |a(p)|) at n seeded samples of d.
[[nodiscard]] bool equal_numeric(const Scalar& a, const Scalar& b, const Domain& d,
                                 std::size_t n = 16, double tol = 1e-9,
                                 std::uint64_t seed = 20070401);

}  // namespace tdual
