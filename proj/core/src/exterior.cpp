#include "tdual/exterior.hpp"

#include <algorithm>
#include <unordered_set>

#include "tdual/sexpr.hpp"

namespace tdual {

// ---------------------------------------------------------------- Coframe

Coframe::Coframe(std::vector<Generator> gens) : gens_(std::move(gens)) {
    if (gens_.size() > kMaxDim) throw std::invalid_argument("coframe too large");
    std::unordered_set<std::string> seen;
    for (const auto& g : gens_) {
        if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator '" + g.name + "'");
        if (g.tag == GenTag::Base && g.variable.empty())
            throw std::invalid_argument("base generator '" + g.name + "' needs a coordinate");
    }
}

int Coframe::index_of(std::string_view name) const noexcept {
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].name == name) return static_cast<int>(i);
    return -1;
}

std::size_t Coframe::require(std::string_view name) const {
    int i = index_of(name);
    if (i < 0) throw CoframeMismatch("unknown generator '" + std::string(name) + "'");
    return static_cast<std::size_t>(i);
}

Mask Coframe::mask(GenTag tag) const noexcept {
    Mask m = 0;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].tag == tag) m |= Mask(1) << i;
    return m;
}

CoframePtr Coframe::without(Mask drop) const {
    std::vector<Generator> g;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!(drop & (Mask(1) << i))) g.push_back(gens_[i]);
    return make_coframe(std::move(g));
}

CoframePtr make_coframe(std::vector<Generator> gens) {
    return std::make_shared<const Coframe>(std::move(gens));
}

void require_same_frame(const CoframePtr& a, const CoframePtr& b) {
    if (a != b && !(*a == *b)) throw CoframeMismatch("operands live on different coframes");
}

int wedge_sign(Mask a, Mask b) noexcept {
    int count = 0;
    while (b) {
        int j = __builtin_ctz(b);
        b &= b - 1;
        Mask above = j >= 31 ? 0 : (a >> (j + 1));
        count += popcount(above);
    }
    return (count & 1) ? -1 : 1;
}

// ---------------------------------------------------------------- FrameVector

FrameVector::FrameVector(CoframePtr frame) : frame_(std::move(frame)), comps_(frame_->dim()) {}

FrameVector::FrameVector(CoframePtr frame, std::vector<CScalar> comps)
    : frame_(std::move(frame)), comps_(std::move(comps)) {
    if (comps_.size() != frame_->dim()) throw std::invalid_argument("frame vector size mismatch");
}

FrameVector FrameVector::basis(CoframePtr frame, std::string_view name) {
    FrameVector v(frame);
    v.comps_[frame->require(name)] = CScalar(1);
    return v;
}

bool FrameVector::is_zero() const noexcept {
    return std::all_of(comps_.begin(), comps_.end(), [](const CScalar& c) { return c.is_zero(); });
}

Eigen::VectorXcd FrameVector::eval(const Point& p) const {
    Eigen::VectorXcd v(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i) v[i] = comps_[i].eval(p);
    return v;
}

FrameVector operator+(const FrameVector& a, const FrameVector& b) {
    require_same_frame(a.frame_, b.frame_);
    FrameVector out = a;
    for (std::size_t i = 0; i < out.comps_.size(); ++i) out.comps_[i] += b.comps_[i];
    return out;
}

FrameVector operator-(const FrameVector& a, const FrameVector& b) {
    require_same_frame(a.frame_, b.frame_);
    FrameVector out = a;
    for (std::size_t i = 0; i < out.comps_.size(); ++i) out.comps_[i] -= b.comps_[i];
    return out;
}

FrameVector operator*(const CScalar& f, const FrameVector& a) {
    FrameVector out = a;
    for (auto& c : out.comps_) c = f * c;
    return out;
}

// ---------------------------------------------------------------- Form

Form::Form(CoframePtr frame) : frame_(std::move(frame)) {}

Form::Form(CoframePtr frame, Terms terms) : frame_(std::move(frame)) {
    for (auto& [m, f] : terms) add_term(m, f);
}

void Form::add_term(Mask m, const CScalar& f) {
    if (f.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) terms_.erase(it);
}

Form Form::scalar(CoframePtr frame, CScalar f) {
    Form out(std::move(frame));
    out.add_term(0, f);
    return out;
}

Form Form::generator(CoframePtr frame, std::string_view name) {
    Mask m = Mask(1) << frame->require(name);
    Form out(std::move(frame));
    out.add_term(m, CScalar(1));
    return out;
}

Form Form::from_mask(CoframePtr frame, Mask m, CScalar f) {
    Form out(std::move(frame));
    out.add_term(m, f);
    return out;
}

Form Form::monomial(CoframePtr frame, const CScalar& f, const std::vector<std::string>& names) {
    Mask m = 0;
    int sign = 1;
    for (const auto& n : names) {
        Mask bit = Mask(1) << frame->require(n);
        if (m & bit) return Form(frame);
        sign *= wedge_sign(m, bit);
        m |= bit;
    }
    return from_mask(std::move(frame), m, sign > 0 ? f : -f);
}

CScalar Form::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? CScalar() : it->second;
}

Form Form::part(int k) const {
    Form out(frame_);
    for (const auto& [m, f] : terms_)
        if (popcount(m) == k) out.terms_.emplace(m, f);
    return out;
}

Form Form::filter(bool (*keep)(int)) const {
    Form out(frame_);
    for (const auto& [m, f] : terms_)
        if (keep(popcount(m))) out.terms_.emplace(m, f);
    return out;
}

int Form::max_degree() const noexcept {
    int d = -1;
    for (const auto& [m, f] : terms_) d = std::max(d, popcount(m));
    return d;
}

int Form::min_degree() const noexcept {
    int d = -1;
    for (const auto& [m, f] : terms_) d = d < 0 ? popcount(m) : std::min(d, popcount(m));
    return d;
}

bool Form::is_homogeneous(int k) const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [k](const auto& t) { return popcount(t.first) == k; });
}

bool Form::is_real() const noexcept {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

Form Form::conj() const {
    Form out(frame_);
    for (const auto& [m, f] : terms_) out.terms_.emplace(m, f.conj());
    return out;
}

Form Form::real_part() const {
    Form out(frame_);
    for (const auto& [m, f] : terms_) out.add_term(m, CScalar(f.re));
    return out;
}

Form Form::imag_part() const {
    Form out(frame_);
    for (const auto& [m, f] : terms_) out.add_term(m, CScalar(f.im));
    return out;
}

Eigen::VectorXcd Form::eval(const Point& p) const {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(1) << frame_->dim());
    for (const auto& [m, f] : terms_) v[m] = f.eval(p);
    return v;
}

Form Form::transfer(const CoframePtr& target) const {
    if (target == frame_) return *this;
    std::vector<int> map(frame_->dim());
    for (std::size_t i = 0; i < frame_->dim(); ++i) map[i] = target->index_of((*frame_)[i].name);
    Form out(target);
    for (const auto& [m, f] : terms_) {
        Mask tm = 0;
        int sign = 1;
        for (Mask r = m; r; r &= r - 1) {
            int i = __builtin_ctz(r);
            if (map[i] < 0)
                throw CoframeMismatch("generator '" + (*frame_)[i].name + "' missing from target coframe");
            Mask bit = Mask(1) << map[i];
            sign *= wedge_sign(tm, bit);
            tm |= bit;
        }
        out.add_term(tm, sign > 0 ? f : -f);
    }
    return out;
}

Form& Form::operator+=(const Form& b) {
    require_same_frame(frame_, b.frame_);
    for (const auto& [m, f] : b.terms_) add_term(m, f);
    return *this;
}

Form& Form::operator-=(const Form& b) {
    require_same_frame(frame_, b.frame_);
    for (const auto& [m, f] : b.terms_) add_term(m, -f);
    return *this;
}

Form operator-(const Form& a) {
    Form out(a.frame_);
    for (const auto& [m, f] : a.terms_) out.terms_.emplace(m, -f);
    return out;
}

Form operator*(const CScalar& g, const Form& a) {
    Form out(a.frame_);
    if (g.is_zero()) return out;
    for (const auto& [m, f] : a.terms_) out.add_term(m, g * f);
    return out;
}

// Serialization: (form (term <re> <im> g1 g2 ...) ...)
std::string Form::to_string() const {
    std::string out = "(form";
    for (const auto& [m, f] : terms_) {
        out += " (term " + f.re.to_string() + " " + f.im.to_string();
        for (Mask r = m; r; r &= r - 1) out += " " + (*frame_)[__builtin_ctz(r)].name;
        out += ")";
    }
    return out + ")";
}

Form Form::parse(CoframePtr frame, std::string_view text) {
    SExpr e = parse_sexpr(text);
    if (!e.is_list || e.items.empty() || e.items[0].atom != "form")
        throw ParseError("expected (form ...)");
    Form out(frame);
    for (std::size_t i = 1; i < e.items.size(); ++i) {
        const SExpr& t = e.items[i];
        if (!t.is_list || t.items.size() < 3 || t.items[0].atom != "term")
            throw ParseError("expected (term re im generators...)");
        CScalar f(scalar_from_sexpr(t.items[1]), scalar_from_sexpr(t.items[2]));
        std::vector<std::string> names;
        for (std::size_t j = 3; j < t.items.size(); ++j) {
            if (!t.items[j].is_atom()) throw ParseError("generator names must be atoms");
            names.push_back(t.items[j].atom);
        }
        out += monomial(frame, f, names);
    }
    return out;
}

// ---------------------------------------------------------------- operations

Form wedge(const Form& a, const Form& b) {
    require_same_frame(a.frame(), b.frame());
    Form out(a.frame());
    Form::Terms acc;
    for (const auto& [ma, fa] : a.terms()) {
        for (const auto& [mb, fb] : b.terms()) {
            if (ma & mb) continue;
            CScalar f = fa * fb;
            if (wedge_sign(ma, mb) < 0) f = -f;
            auto [it, inserted] = acc.emplace(ma | mb, f);
            if (!inserted) it->second += f;
        }
    }
    return Form(a.frame(), std::move(acc));
}

Form contract(const FrameVector& x, const Form& a) {
    require_same_frame(x.frame(), a.frame());
    Form::Terms acc;
    for (const auto& [m, f] : a.terms()) {
        for (Mask r = m; r; r &= r - 1) {
            int j = __builtin_ctz(r);
            const CScalar& xj = x[j];
            if (xj.is_zero()) continue;
            int pos = popcount(m & ((Mask(1) << j) - 1));
            CScalar g = xj * f;
            if (pos & 1) g = -g;
            auto [it, inserted] = acc.emplace(m & ~(Mask(1) << j), g);
            if (!inserted) it->second += g;
        }
    }
    return Form(a.frame(), std::move(acc));
}

Form clifford(const FrameVector& x, const Form& xi, const Form& rho) {
    if (!xi.is_homogeneous(1)) throw std::invalid_argument("clifford: covector part must have degree 1");
    return contract(x, rho) + wedge(xi, rho);
}

Form reversal(const Form& rho) {
    Form::Terms t;
    for (const auto& [m, f] : rho.terms()) {
        int k = popcount(m);
        t.emplace(m, ((k * (k - 1) / 2) & 1) ? -f : f);
    }
    return Form(rho.frame(), std::move(t));
}

Form mukai(const Form& rho1, const Form& rho2) {
    return wedge(reversal(rho1), rho2).part(static_cast<int>(rho1.frame()->dim()));
}

Form exp_form(const Form& b, int topdeg) {
    for (const auto& [m, f] : b.terms()) {
        int k = popcount(m);
        if (k % 2 != 0 || k < 2) throw std::invalid_argument("exp_form: argument must be even of degree >= 2");
    }
    int top = topdeg < 0 ? static_cast<int>(b.frame()->dim()) : topdeg;
    Form out = Form::one(b.frame());
    Form power = Form::one(b.frame());
    for (int j = 1; 2 * j <= top; ++j) {
        power = Scalar(Rational(1, j)) * wedge(power, b);
        if (power.is_zero()) break;
        out += power;
    }
    Form trimmed(b.frame());
    for (const auto& [m, f] : out.terms())
        if (popcount(m) <= top) trimmed += Form::from_mask(b.frame(), m, f);
    return trimmed;
}

Form fiber_integrate(const Form& rho, Mask fib) {
    const Coframe& fr = *rho.frame();
    CoframePtr target = fr.without(fib);
    Form::Terms t;
    for (const auto& [m, f] : rho.terms()) {
        if ((m & fib) != fib) continue;
        // Sign of moving every fiber generator to the right of the others.
        int count = 0;
        for (Mask r = fib; r; r &= r - 1) {
            int i = __builtin_ctz(r);
            Mask above_nonfiber = (m & ~fib) & ~((Mask(2) << i) - 1);
            count += popcount(above_nonfiber);
        }
        Mask rest = 0;
        int pos = 0;
        for (std::size_t i = 0; i < fr.dim(); ++i) {
            if (fib & (Mask(1) << i)) continue;
            if (m & (Mask(1) << i)) rest |= Mask(1) << pos;
            ++pos;
        }
        t.emplace(rest, (count & 1) ? -f : f);
    }
    return Form(target, std::move(t));
}

Form fiber_integrate(const Form& rho, GenTag tag) { return fiber_integrate(rho, rho.frame()->mask(tag)); }

CScalar evaluate_one_form(const Form& xi, const FrameVector& x) {
    require_same_frame(xi.frame(), x.frame());
    CScalar s;
    for (const auto& [m, f] : xi.terms()) {
        if (popcount(m) != 1) throw std::invalid_argument("evaluate_one_form: degree must be 1");
        s += f * x[__builtin_ctz(m)];
    }
    return s;
}

double residual(const Form& a, const Form& b, const std::vector<Point>& points) {
    return max_abs(a - b, points);
}

double max_abs(const Form& a, const std::vector<Point>& points) {
    double r = 0.0;
    for (const auto& p : points)
        for (const auto& [m, f] : a.terms()) r = std::max(r, std::abs(f.eval(p)));
    return r;
}

// ---------------------------------------------------------------- pointwise

namespace pointwise {

Eigen::MatrixXcd wedge_matrix(std::size_t n, std::size_t k) {
    const Eigen::Index size = Eigen::Index(1) << n;
    Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(size, size);
    Mask bit = Mask(1) << k;
    for (Eigen::Index m = 0; m < size; ++m) {
        if (Mask(m) & bit) continue;
        w(Mask(m) | bit, m) = double(wedge_sign(bit, Mask(m)));
    }
    return w;
}

Eigen::MatrixXcd contract_matrix(std::size_t n, std::size_t k) {
    const Eigen::Index size = Eigen::Index(1) << n;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(size, size);
    Mask bit = Mask(1) << k;
    for (Eigen::Index m = 0; m < size; ++m) {
        if (!(Mask(m) & bit)) continue;
        int pos = popcount(Mask(m) & (bit - 1));
        c(Mask(m) & ~bit, m) = (pos & 1) ? -1.0 : 1.0;
    }
    return c;
}

Eigen::VectorXcd apply_wedge(std::size_t k, const Eigen::VectorXcd& rho) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rho.size());
    Mask bit = Mask(1) << k;
    for (Eigen::Index m = 0; m < rho.size(); ++m) {
        if ((Mask(m) & bit) || rho[m] == 0.0) continue;
        out[Mask(m) | bit] = (popcount(Mask(m) & (bit - 1)) & 1) ? -rho[m] : rho[m];
    }
    return out;
}

Eigen::VectorXcd apply_contract(std::size_t k, const Eigen::VectorXcd& rho) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rho.size());
    Mask bit = Mask(1) << k;
    for (Eigen::Index m = 0; m < rho.size(); ++m) {
        if (!(Mask(m) & bit) || rho[m] == 0.0) continue;
        out[Mask(m) & ~bit] = (popcount(Mask(m) & (bit - 1)) & 1) ? -rho[m] : rho[m];
    }
    return out;
}

Eigen::VectorXcd apply_clifford(std::size_t n, const Eigen::VectorXcd& v, const Eigen::VectorXcd& rho) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(rho.size());
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] != 0.0) out += v[k] * apply_contract(k, rho);
        if (v[n + k] != 0.0) out += v[n + k] * apply_wedge(k, rho);
    }
    return out;
}

Eigen::MatrixXcd clifford_matrix(std::size_t n, const Eigen::VectorXcd& v) {
    const Eigen::Index size = Eigen::Index(1) << n;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(size, size);
    for (std::size_t k = 0; k < n; ++k) {
        if (v[k] != 0.0) out += v[k] * contract_matrix(n, k);
        if (v[n + k] != 0.0) out += v[n + k] * wedge_matrix(n, k);
    }
    return out;
}

}  // namespace pointwise

}  // namespace tdual
