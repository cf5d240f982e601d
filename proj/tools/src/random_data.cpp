#include "tdual/tools/random_data.hpp"

namespace tdual::tools {

int RandomData::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

double RandomData::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

Rational RandomData::rational() {
    int num = integer(-4, 4);
    int den = integer(1, 3);
    return {num, den};
}

Scalar RandomData::scalar(const std::vector<std::string>& vars) {
    Scalar out(rational());
    if (vars.empty()) return out;
    const int terms = integer(1, 3);
    for (int t = 0; t < terms; ++t) {
        const Scalar v = Scalar::variable(vars[static_cast<std::size_t>(integer(0, int(vars.size()) - 1))]);
        const Scalar w = Scalar::variable(vars[static_cast<std::size_t>(integer(0, int(vars.size()) - 1))]);
        Scalar term;
        switch (integer(0, 4)) {
            case 0: term = v; break;
            case 1: term = v * w; break;
            case 2: term = sin(v); break;
            case 3: term = exp(Scalar(Rational(1, 2)) * v); break;
            default: term = pow(v, 2) - w; break;
        }
        out = out + Scalar(rational()) * term;
    }
    return out;
}

Scalar RandomData::positive(const std::vector<std::string>& vars) {
    Scalar out(Rational(integer(2, 5), 2));
    for (const auto& name : vars) {
        if (integer(0, 1) == 0) continue;
        Scalar v = Scalar::variable(name);
        out = out + Scalar(Rational(integer(1, 3), 4)) * pow(v + Scalar(rational()), 2);
    }
    return out;
}

CScalar RandomData::cscalar(const std::vector<std::string>& vars) { return {scalar(vars), scalar(vars)}; }

Form RandomData::form(const BundleChart& ch, bool complex, double density) {
    Form out(ch.frame());
    for (Mask m = 0; m < (Mask(1) << ch.dim()); ++m) {
        if (uniform(0, 1) > density) continue;
        CScalar c = complex ? cscalar(ch.base_vars()) : CScalar(scalar(ch.base_vars()));
        out += Form::from_mask(ch.frame(), m, c);
    }
    return out;
}

Form RandomData::form_degree(const BundleChart& ch, int k, bool complex, double density) {
    Form out(ch.frame());
    for (Mask m = 0; m < (Mask(1) << ch.dim()); ++m) {
        if (popcount(m) != k || uniform(0, 1) > density) continue;
        CScalar c = complex ? cscalar(ch.base_vars()) : CScalar(scalar(ch.base_vars()));
        out += Form::from_mask(ch.frame(), m, c);
    }
    return out;
}

Form RandomData::closed_basic_two_form(const BundleChart& ch) {
    Form a(ch.frame());
    for (const auto& v : ch.base_vars()) a += Form::monomial(ch.frame(), CScalar(scalar(ch.base_vars())), {"d" + v});
    return exterior_derivative(a, ch);
}

Section RandomData::section(const BundleChart& ch, bool complex) {
    std::vector<CScalar> c(2 * ch.dim());
    for (auto& x : c) x = complex ? cscalar(ch.base_vars()) : CScalar(scalar(ch.base_vars()));
    return Section::from_components(ch.frame(), c);
}

PureSpinor RandomData::spinor(const BundleChart& ch, int m) {
    Form omega_big = Form::one(ch.frame());
    for (int i = 0; i < m; ++i) omega_big = wedge(omega_big, form_degree(ch, 1, true, 0.8));
    return PureSpinor::from_data(form_degree(ch, 2, false), form_degree(ch, 2, false), omega_big);
}

ScalarMatrix RandomData::metric(const BundleChart& ch) {
    const std::size_t n = ch.dim();
    ScalarMatrix l(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j)
            if (integer(0, 2) == 0) l(i, j) = Scalar(Rational(1, 2)) * scalar(ch.base_vars());
        l(i, i) = positive(ch.base_vars());
    }
    return l * l.transpose();
}

}  // namespace tdual::tools
