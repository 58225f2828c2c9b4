#pragma once

#include "kmso21/algebra.hpp"

#include "json.hpp"

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

// Function-space models of SL(2,R) unitary representations and their covers.
namespace kmso21::unirep {

using cplx = std::complex<double>;
using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat2c = std::array<std::array<cplx, 2>, 2>;

Mat2 mul(const Mat2& a, const Mat2& b);
Mat2 inverse(const Mat2& a);  // det 1 assumed
double det(const Mat2& a);
// Closed-form exponential of a traceless real matrix.
Mat2 exp_sl2(const Mat2& x);

// exp(i w J+ + i conj(w) J- + i r J3)
struct GroupParams {
    cplx w{0, 0};
    double r = 0;
    // "w=0.1+0.2i,r=0.3"
    static GroupParams parse(const std::string& text);
    std::string str() const;
};

// Element of the universal cover. theta is the continuous argument of the lower-right entry of the
// disk-model matrix of S^-1, which picks the branch of every multiplier power.
struct CoveredElement {
    Mat2 S{{{1, 0}, {0, 1}}};
    double theta = 0;
    int cover = 0;  // 0: universal cover, k: k-fold cover of SL(2,R)

    static CoveredElement identity() { return {}; }
    // Lift with the principal argument (sheet 0).
    static CoveredElement from_matrix(const Mat2& s, int cover = 0);
    CoveredElement compose(const CoveredElement& o) const;  // this * o
    Mat2c disk_matrix() const;                              // Cayley conjugate of S^-1, in SU(1,1)
    long sheet() const;                                     // lift index, reduced mod cover if cover > 0
    nlohmann::json to_json() const;
};

CoveredElement sl2_from_params(const GroupParams& p, int cover = 0);
// Real sl(2) matrix of i(w J+ + conj(w) J- + r J3).
Mat2 sl2_generator(const GroupParams& p);

struct Iwasawa {
    double theta = 0;  // K = [[cos, -sin], [sin, cos]]
    double a = 1;      // A = diag(a, 1/a)
    double n = 0;      // N = [[1, n], [0, 1]]
    Mat2 reassemble() const;
};
Iwasawa iwasawa_decompose(const Mat2& s);

cplx cayley(cplx z);          // (z - i)/(z + i)
cplx cayley_inverse(cplx w);  // i(1 + w)/(1 - w)

// Second-order jets of a function of one variable: value, first and second derivative.
struct Jet {
    cplx v, d1, d2;
};
Jet jet_var(cplx x);
Jet operator+(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(cplx c, const Jet& a);
Jet jet_pow(const Jet& u, cplx e);  // principal branch
Jet jet_exp(const Jet& u);

// P(z) d/dz + Q(z) with P, Q quadratic.
struct FirstOrderOp {
    std::array<cplx, 3> p{}, q{};
    cplx apply(const Jet& f, cplx z) const;
    // value and first derivative of the image
    std::pair<cplx, cplx> apply_jet(const Jet& f, cplx z) const;
};
struct OperatorTriple {
    FirstOrderOp j3, jp, jm;
};
OperatorTriple differential_operators(cplx s);

struct DiscreteValue {
    cplx value;
    bool needs_continuation = false;  // s <= 1: the norm integral only exists by continuation
};
double discrete_an(double s, int n);
DiscreteValue discrete_basis_value(double s, int n, cplx z);
Jet discrete_basis_jet(double s, int n, cplx z);
cplx principal_basis_value(cplx s, double m, double x);
Jet principal_basis_jet(cplx s, double m, double x);

// Norm of phi_n by 2-D quadrature over the upper half-plane.
double discrete_norm_sq_quadrature(double s, int n, double tol = 1e-10);
// Closed form ||phi_n||^2 / ||phi_0||^2.
double discrete_norm_ratio(double s, int n);
double disk_monomial_norm_quadrature(double s, int n);
double disk_monomial_norm(double s, int n);
double principal_norm_quadrature(cplx s, double m);
cplx principal_inner_quadrature(cplx s, double m1, double m2);

enum class Model { discrete, principal };

struct DiffOpReport {
    Model model = Model::discrete;
    cplx s;
    double m = 0;
    double eigen = 0, ladder_up = 0, ladder_down = 0, casimir = 0, bracket = 0;
    size_t points = 0;
    double max() const;
    nlohmann::json to_json() const;
};
// Residuals of the eigen, ladder, Casimir and bracket relations on a sample grid.
// m is the basis index n for the discrete model and the J3 eigenvalue for the principal one.
DiffOpReport differential_op_check(Model model, cplx s, double m);

struct RepParams {
    Model model = Model::discrete;
    double s = 2;   // discrete: s; principal: unused
    double p = 0;   // principal: J3 offset in [0,1)
    double omega = -1;  // principal: Casimir, <= -1/4
    cplx s_complex() const;
    nlohmann::json to_json() const;
};

struct TruncatedOperatorMatrix {
    RepParams rep;
    int n_min = 0, n_max = 0;  // basis indices (J3 = s + n or p + n)
    int margin = 0;
    std::vector<cplx> u;  // row-major, (n_max - n_min + 1)^2
    double defect = 0;    // interior max |U^dagger U - I|
    std::string method;

    size_t size() const { return static_cast<size_t>(n_max - n_min + 1); }
    cplx operator()(int m, int n) const { return u[static_cast<size_t>(m - n_min) * size() + static_cast<size_t>(n - n_min)]; }
    cplx& at(int m, int n) { return u[static_cast<size_t>(m - n_min) * size() + static_cast<size_t>(n - n_min)]; }
    double interior_defect() const;
    // max |this * o - other| over the interior block
    double composition_defect(const TruncatedOperatorMatrix& o, const TruncatedOperatorMatrix& product) const;
    nlohmann::json to_json() const;
};

enum class DiskMethod { automatic, radial, boundary };

struct GroupMatrixOptions {
    int range = 32;
    double tol = 1e-8;  // on the interior unitarity defect; exceeded -> std::runtime_error
    DiskMethod disk = DiskMethod::automatic;
    int angular_nodes = 512;
    Exec exec = Exec::parallel;
};

TruncatedOperatorMatrix group_matrix(const RepParams& rep, const CoveredElement& g, const GroupMatrixOptions& opt = {});

struct CoverPhase {
    Q s;
    int turns = 1;
    std::vector<cplx> phases;  // n = 0..
    bool identity = false;
    bool minus_identity = false;
    long first_identity_turns = 0;  // exact
    double numeric_error = 0;       // model phases against e^{2 pi i (s+n) turns}
    nlohmann::json to_json() const;
};
CoverPhase cover_phase(const Q& s, int turns, int basis_size = 8);

// Fourier-side complementary-series inner product with alpha = 2s - 2.
cplx complementary_inner_product(const std::function<cplx(double)>& a, const std::function<cplx(double)>& b, double s);
double complementary_prefactor(double s);
// Action of J3, J+, J- on a Fourier profile, given its jet at k.
cplx fourier_apply(const FirstOrderOp& op, const Jet& a, double k);

}  // namespace kmso21::unirep
