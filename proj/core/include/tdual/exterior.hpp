#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tdual/scalar.hpp"

namespace tdual {

enum class GenTag { Base, Fiber, DualFiber };

/// One coframe generator: dxᵃ (with its coordinate variable), θᵢ or θ̃ⱼ.
struct Generator {
    std::string name;
    GenTag tag = GenTag::Base;
    std::string variable;  ///< Coordinate differentiated by the dual frame vector; base only.

    friend bool operator==(const Generator&, const Generator&) = default;
};

using Mask = std::uint32_t;

/// Ordered list of named generators of invariant 1-forms.
class Coframe {
public:
    static constexpr std::size_t kMaxDim = 20;

    explicit Coframe(std::vector<Generator> gens);

    [[nodiscard]] std::size_t dim() const noexcept { return gens_.size(); }
    [[nodiscard]] const std::vector<Generator>& generators() const noexcept { return gens_; }
    [[nodiscard]] const Generator& operator[](std::size_t i) const { return gens_[i]; }
    [[nodiscard]] int index_of(std::string_view name) const noexcept;
    [[nodiscard]] std::size_t require(std::string_view name) const;
    [[nodiscard]] Mask mask(GenTag tag) const noexcept;
    [[nodiscard]] Mask full_mask() const noexcept { return dim() == 32 ? ~Mask(0) : (Mask(1) << dim()) - 1; }
    /// Generators whose tag is not in `drop`, in the same order.
    [[nodiscard]] std::shared_ptr<const Coframe> without(Mask drop) const;

    friend bool operator==(const Coframe& a, const Coframe& b) { return a.gens_ == b.gens_; }

private:
    std::vector<Generator> gens_;
};

using CoframePtr = std::shared_ptr<const Coframe>;

[[nodiscard]] CoframePtr make_coframe(std::vector<Generator> gens);

/// Raised when operands live on different coframes.
class CoframeMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Sign of moving the generators of b past those of a: (−1)^{#{(i∈a, j∈b) : i > j}}.
[[nodiscard]] int wedge_sign(Mask a, Mask b) noexcept;
[[nodiscard]] inline int popcount(Mask m) noexcept { return __builtin_popcount(m); }

/// Vector field in the dual frame: Σ comps[i]·eᵢ with eᵢ dual to generator i.
class FrameVector {
public:
    explicit FrameVector(CoframePtr frame);
    FrameVector(CoframePtr frame, std::vector<CScalar> comps);
    [[nodiscard]] static FrameVector basis(CoframePtr frame, std::string_view name);

    [[nodiscard]] const CoframePtr& frame() const noexcept { return frame_; }
    [[nodiscard]] const std::vector<CScalar>& comps() const noexcept { return comps_; }
    [[nodiscard]] const CScalar& operator[](std::size_t i) const { return comps_[i]; }
    CScalar& operator[](std::size_t i) { return comps_[i]; }
    [[nodiscard]] bool is_zero() const noexcept;
    [[nodiscard]] Eigen::VectorXcd eval(const Point& p) const;

    friend FrameVector operator+(const FrameVector& a, const FrameVector& b);
    friend FrameVector operator-(const FrameVector& a, const FrameVector& b);
    friend FrameVector operator*(const CScalar& f, const FrameVector& a);

private:
    CoframePtr frame_;
    std::vector<CScalar> comps_;
};

/// Invariant differential form Σ_I f_I e^I with CScalar coefficients.
class Form {
public:
    using Terms = std::map<Mask, CScalar>;

    explicit Form(CoframePtr frame);
    Form(CoframePtr frame, Terms terms);

    [[nodiscard]] static Form scalar(CoframePtr frame, CScalar f);
    [[nodiscard]] static Form one(CoframePtr frame) { return scalar(std::move(frame), CScalar(1)); }
    [[nodiscard]] static Form generator(CoframePtr frame, std::string_view name);
    /// Monomial f·e_{names[0]}∧e_{names[1]}∧… with reordering sign applied.
    [[nodiscard]] static Form monomial(CoframePtr frame, const CScalar& f,
                                       const std::vector<std::string>& names);
    [[nodiscard]] static Form from_mask(CoframePtr frame, Mask m, CScalar f);

    [[nodiscard]] const CoframePtr& frame() const noexcept { return frame_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] CScalar coeff(Mask m) const;
    /// Component of degree k.
    [[nodiscard]] Form part(int k) const;
    /// Sum of the components whose degree satisfies the predicate.
    [[nodiscard]] Form filter(bool (*keep)(int)) const;
    [[nodiscard]] int max_degree() const noexcept;
    [[nodiscard]] int min_degree() const noexcept;
    [[nodiscard]] bool is_homogeneous(int k) const noexcept;
    [[nodiscard]] bool is_real() const noexcept;
    [[nodiscard]] Form conj() const;
    [[nodiscard]] Form real_part() const;
    [[nodiscard]] Form imag_part() const;
    /// Values at p as a 2^N vector indexed by mask.
    [[nodiscard]] Eigen::VectorXcd eval(const Point& p) const;
    /// Re-expresses the form on another coframe, matching generators by name.
    [[nodiscard]] Form transfer(const CoframePtr& target) const;

    [[nodiscard]] std::string to_string() const;
    [[nodiscard]] static Form parse(CoframePtr frame, std::string_view text);

    Form& operator+=(const Form& b);
    Form& operator-=(const Form& b);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator-(const Form& a);
    friend Form operator*(const CScalar& f, const Form& a);

private:
    void add_term(Mask m, const CScalar& f);
    CoframePtr frame_;
    Terms terms_;
};

void require_same_frame(const CoframePtr& a, const CoframePtr& b);

[[nodiscard]] Form wedge(const Form& a, const Form& b);
[[nodiscard]] Form contract(const FrameVector& x, const Form& a);
/// (X + ξ)·ρ = i_Xρ + ξ∧ρ.
[[nodiscard]] Form clifford(const FrameVector& x, const Form& xi, const Form& rho);
[[nodiscard]] Form reversal(const Form& rho);
/// (σ(ρ₁)∧ρ₂) in top degree.
[[nodiscard]] Form mukai(const Form& rho1, const Form& rho2);
/// Σ B^j/j!, truncated above topdeg.
[[nodiscard]] Form exp_form(const Form& b, int topdeg = -1);
/// Coefficient of the full volume of the generators carrying `tags`, written with
/// those generators moved to the right. The result lives on the remaining coframe.
[[nodiscard]] Form fiber_integrate(const Form& rho, Mask integrated);
[[nodiscard]] Form fiber_integrate(const Form& rho, GenTag tag);
/// Degree-1 form ξ evaluated on a frame vector: ξ(X).
[[nodiscard]] CScalar evaluate_one_form(const Form& xi, const FrameVector& x);

/// Largest |coefficient| of a − b over the sample points.
[[nodiscard]] double residual(const Form& a, const Form& b, const std::vector<Point>& points);
[[nodiscard]] double max_abs(const Form& a, const std::vector<Point>& points);

/// Pointwise Clifford algebra on the 2^N-dimensional form space at a point.
namespace pointwise {
/// Matrix of e^k∧ on forms indexed by mask.
[[nodiscard]] Eigen::MatrixXcd wedge_matrix(std::size_t n, std::size_t k);
/// Matrix of i_{e_k}.
[[nodiscard]] Eigen::MatrixXcd contract_matrix(std::size_t n, std::size_t k);
/// e^k∧ρ on a 2^N vector, without forming the matrix.
[[nodiscard]] Eigen::VectorXcd apply_wedge(std::size_t k, const Eigen::VectorXcd& rho);
/// i_{e_k}ρ on a 2^N vector.
[[nodiscard]] Eigen::VectorXcd apply_contract(std::size_t k, const Eigen::VectorXcd& rho);
/// v·ρ for v ∈ ℂ^{2N}, vector part first.
[[nodiscard]] Eigen::VectorXcd apply_clifford(std::size_t n, const Eigen::VectorXcd& v,
                                              const Eigen::VectorXcd& rho);
/// Matrix of the Clifford action of v = (X, ξ) ∈ ℂ^{2N}, X first.
[[nodiscard]] Eigen::MatrixXcd clifford_matrix(std::size_t n, const Eigen::VectorXcd& v);
}  // namespace pointwise

}  // namespace tdual
